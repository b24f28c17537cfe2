//! Iterative low-rank solvers for `AX + XAᵀ = −y₀y₀ᵀ`.
//!
//! Every method grows an orthonormal basis `U`, solves the projected
//! equation `BZ + ZBᵀ = −c₀c₀ᵀ` and returns `X ≈ UZUᵀ`. They differ only in
//! how the next basis vectors are generated; see [`Method`].

mod alr;
mod config;
mod doubling;
mod driver;
mod kpik;
mod rksm;
mod solution;
mod trace;

pub use config::{Method, SolverConfig};
pub use driver::IterationView;
pub use solution::{LowRankSolution, SolveOutput};
pub use trace::{IterationRecord, SolverStatus, SolverTrace};

use crate::error::Result;
use crate::scalar::Scalar;
use crate::sparse::ShiftedFactorCache;

/// Runs the method selected in `config` on the cache's base operator.
pub fn solve<T: Scalar>(
    cache: &mut ShiftedFactorCache<'_, T>,
    y0: &[T],
    config: &SolverConfig,
) -> Result<SolveOutput<T>> {
    solve_observed(cache, y0, config, &mut |_| {})
}

/// Like [`solve`], calling `observer` after the projected equation has been
/// solved in every iteration.
pub fn solve_observed<T: Scalar>(
    cache: &mut ShiftedFactorCache<'_, T>,
    y0: &[T],
    config: &SolverConfig,
    observer: &mut dyn FnMut(&IterationView<'_, T>),
) -> Result<SolveOutput<T>> {
    config.validate()?;
    match config.method {
        Method::Alr => {
            let a_norm = cache.base().norm_inf();
            driver::run(cache, y0, config, &mut alr::Alr::new(a_norm), observer)
        }
        Method::Doubling => driver::run(cache, y0, config, &mut doubling::Doubling, observer),
        Method::Kpik => driver::run(cache, y0, config, &mut kpik::Kpik::default(), observer),
        Method::Rksm => driver::run(cache, y0, config, &mut rksm::Rksm::new(config, false), observer),
        Method::Erksm => driver::run(cache, y0, config, &mut rksm::Rksm::new(config, true), observer),
    }
}

/// Adaptive low-rank method: one rational Krylov vector with the shift
/// `s = qᵀBq` and one Krylov vector per iteration.
pub fn alr_solve<T: Scalar>(cache: &mut ShiftedFactorCache<'_, T>, y0: &[T], config: &SolverConfig) -> Result<SolveOutput<T>> {
    solve(cache, y0, &config.with_method(Method::Alr))
}

/// Doubling method: the basis is extended by the full solution of the
/// correction Sylvester equation.
pub fn doubling_solve<T: Scalar>(
    cache: &mut ShiftedFactorCache<'_, T>,
    y0: &[T],
    config: &SolverConfig,
) -> Result<SolveOutput<T>> {
    solve(cache, y0, &config.with_method(Method::Doubling))
}

/// Extended Krylov: one direct and one inverse Krylov vector per iteration.
pub fn kpik_solve<T: Scalar>(cache: &mut ShiftedFactorCache<'_, T>, y0: &[T], config: &SolverConfig) -> Result<SolveOutput<T>> {
    solve(cache, y0, &config.with_method(Method::Kpik))
}

/// Rational Krylov with greedily selected real shifts (`Method::Rksm`), or
/// its extended variant when `config.method` is `Method::Erksm`.
pub fn rksm_solve<T: Scalar>(cache: &mut ShiftedFactorCache<'_, T>, y0: &[T], config: &SolverConfig) -> Result<SolveOutput<T>> {
    let method = if config.method == Method::Erksm { Method::Erksm } else { Method::Rksm };
    solve(cache, y0, &config.with_method(method))
}
