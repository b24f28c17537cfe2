use crate::dense::real_schur;
use crate::error::Result;
use crate::galerkin::ProjectionState;
use crate::scalar::Scalar;
use crate::solvers::alr::guarded_solve;
use crate::solvers::driver::{Enrichment, Estimate, Step};
use crate::solvers::kpik::residual_estimate;
use crate::solvers::SolverConfig;
use crate::sparse::ShiftedFactorCache;

const GRID_POINTS: usize = 100;

/// Rational Krylov with real poles chosen greedily on the mirrored Ritz
/// interval; the extended flavor also adds one direct Krylov vector per step.
pub(crate) struct Rksm {
    extended: bool,
    fixed_bounds: Option<(f64, f64)>,
    bounds: Option<(f64, f64)>,
    /// Previous poles `σ_j > 0`; the systems solved are `(A − σ_j I)`.
    poles: Vec<f64>,
    direct: usize,
}

impl Rksm {
    pub(crate) fn new(config: &SolverConfig, extended: bool) -> Self {
        Self {
            extended,
            fixed_bounds: config.rksm_shift_bounds,
            bounds: None,
            poles: Vec::new(),
            direct: 0,
        }
    }

    /// Pole maximizing `∏|σ − σ_j| / ∏|σ − θ_j|` over a geometric grid of
    /// `[a, b]`, with `θ_j` the Ritz values.
    fn next_pole(&self, ritz: &[(f64, f64)], a: f64, b: f64) -> f64 {
        let mut best = (f64::NEG_INFINITY, a);
        for k in 0..GRID_POINTS {
            let sigma = if b > a {
                a * (b / a).powf(k as f64 / (GRID_POINTS - 1) as f64)
            } else {
                a
            };
            // log scale avoids overflow for long pole sequences
            let num: f64 = self.poles.iter().map(|&p| (sigma - p).abs().ln()).sum();
            let den: f64 = ritz.iter().map(|&(re, im)| (sigma - re).hypot(im).ln()).sum();
            let val = num - den;
            if val > best.0 {
                best = (val, sigma);
            }
        }
        best.1
    }
}

impl<T: Scalar> Enrichment<T> for Rksm {
    fn estimate(&mut self, state: &ProjectionState<T>) -> Result<Estimate<T>> {
        Ok(Estimate {
            delta: residual_estimate(state)?,
            exhausted: false,
        })
    }

    fn max_growth(&self, _state: &ProjectionState<T>) -> usize {
        if self.extended {
            2
        } else {
            1
        }
    }

    fn enrich(
        &mut self,
        state: &mut ProjectionState<T>,
        cache: &mut ShiftedFactorCache<'_, T>,
        drop_tol: T,
    ) -> Result<Step> {
        let ritz: Vec<(f64, f64)> = real_schur(state.b())?
            .eigenvalues()
            .into_iter()
            .map(|(re, im)| (re.as_f64(), im.as_f64()))
            .collect();
        let (a, b) = match self.fixed_bounds {
            Some(ab) => ab,
            None => {
                // Ritz values in the right half-plane (possible for
                // non-normal A) are ignored; the upper end uses moduli so
                // that complex spectra widen the interval
                let stable = ritz.iter().filter(|&&(re, _)| re < 0.0);
                let lo = stable.clone().map(|&(re, _)| -re).fold(f64::INFINITY, f64::min);
                let hi = stable.map(|&(re, im)| re.hypot(im)).fold(f64::NEG_INFINITY, f64::max);
                let (lo, hi) = if lo.is_finite() {
                    (lo, hi)
                } else {
                    let m = ritz.iter().map(|&(re, im)| re.hypot(im));
                    (m.clone().fold(f64::INFINITY, f64::min), m.fold(0.0, f64::max))
                };
                let (a, b) = match self.bounds {
                    Some((a0, b0)) => (a0.min(lo), b0.max(hi)),
                    None => (lo, hi),
                };
                self.bounds = Some((a, b));
                (a, b)
            }
        };
        let sigma = self.next_pole(&ritz, a, b);
        let u_last = state.basis_columns().last().expect("basis is never empty").clone();
        let (s, v) = guarded_solve(cache, T::lit(-sigma), &u_last)?;
        self.poles.push(-s.as_f64());
        let mut candidates = vec![v];
        if self.extended {
            candidates.push(state.au_columns()[self.direct].clone());
        }
        let a_op = cache.base();
        let mut accepted = state.extend(a_op, &candidates[..1], drop_tol)?;
        if self.extended && state.extend(a_op, &candidates[1..], drop_tol)? == 1 {
            self.direct = state.rank() - 1;
            accepted += 1;
        }
        let shifts = vec![s.as_f64()];
        Ok(if accepted > 0 {
            Step::Extended { shifts }
        } else {
            Step::Stalled { shifts }
        })
    }
}
