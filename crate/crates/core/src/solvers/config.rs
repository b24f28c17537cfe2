use std::fmt;
use std::str::FromStr;

use crate::dense::DEFAULT_DROP_TOL;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Alr,
    Doubling,
    Kpik,
    Rksm,
    Erksm,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Alr, Method::Doubling, Method::Kpik, Method::Rksm, Method::Erksm];

    pub fn name(self) -> &'static str {
        match self {
            Method::Alr => "alr",
            Method::Doubling => "doubling",
            Method::Kpik => "kpik",
            Method::Rksm => "rksm",
            Method::Erksm => "erksm",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown method '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    /// Tolerance on the normalized residual `‖AX̃ + X̃Aᵀ + y₀y₀ᵀ‖_F / ‖y₀‖²`.
    pub eps: f64,
    /// Maximum number of basis columns.
    pub r_max: usize,
    /// Interval `[a, b]` (`0 < a ≤ b`) for the mirrored RKSM poles; estimated
    /// from Ritz values when absent.
    pub rksm_shift_bounds: Option<(f64, f64)>,
    /// Relative deflation threshold for new basis vectors.
    pub drop_tol: f64,
}

impl SolverConfig {
    pub const DEFAULT_EPS: f64 = 1e-8;
    pub const DEFAULT_R_MAX: usize = 200;

    pub fn new(method: Method) -> Self {
        Self {
            method,
            eps: Self::DEFAULT_EPS,
            r_max: Self::DEFAULT_R_MAX,
            rksm_shift_bounds: None,
            drop_tol: DEFAULT_DROP_TOL,
        }
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn with_r_max(mut self, r_max: usize) -> Self {
        self.r_max = r_max;
        self
    }

    pub fn with_method(&self, method: Method) -> Self {
        Self { method, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0) || !self.eps.is_finite() {
            return Err(Error::InvalidConfig(format!("eps must be positive, got {}", self.eps)));
        }
        if self.r_max < 1 {
            return Err(Error::InvalidConfig("r_max must be at least 1".into()));
        }
        if !(self.drop_tol >= 0.0 && self.drop_tol < 1.0) {
            return Err(Error::InvalidConfig(format!("drop_tol must lie in [0, 1), got {}", self.drop_tol)));
        }
        if let Some((a, b)) = self.rksm_shift_bounds {
            if !(a > 0.0 && a <= b && b.is_finite()) {
                return Err(Error::InvalidConfig(format!("invalid RKSM shift bounds [{a}, {b}]")));
            }
        }
        Ok(())
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self::new(Method::Alr)
    }
}
