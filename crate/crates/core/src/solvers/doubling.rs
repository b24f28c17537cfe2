use crate::dense::real_schur;
use crate::error::Result;
use crate::galerkin::{solve_projected_sylvester_with, ProjectionState};
use crate::scalar::Scalar;
use crate::solvers::driver::{Enrichment, Estimate, Step};
use crate::sparse::ShiftedFactorCache;

pub(crate) struct Doubling;

impl<T: Scalar> Enrichment<T> for Doubling {
    fn estimate(&mut self, state: &ProjectionState<T>) -> Result<Estimate<T>> {
        let z = state.z().expect("Gramian solved before estimate");
        let rz = state.residual_factor().matmul(z)?;
        Ok(Estimate {
            delta: rz.frobenius_norm(),
            exhausted: false,
        })
    }

    fn max_growth(&self, state: &ProjectionState<T>) -> usize {
        state.rank()
    }

    fn enrich(
        &mut self,
        state: &mut ProjectionState<T>,
        cache: &mut ShiftedFactorCache<'_, T>,
        drop_tol: T,
    ) -> Result<Step> {
        // A P₁ + P₁ Bᵀ = −(AU − UB) Z
        let z = state.z().expect("Gramian solved before enrichment");
        let g = state.residual_factor().matmul(z)?;
        let bt_schur = real_schur(&state.b().transpose())?;
        let shifts = bt_schur.eigenvalues().iter().map(|&(re, _)| re.as_f64()).collect();
        let p1 = solve_projected_sylvester_with(cache, &bt_schur, &g, false)?;
        let accepted = state.extend(cache.base(), &p1.columns(), drop_tol)?;
        Ok(if accepted > 0 {
            Step::Extended { shifts }
        } else {
            Step::Stalled { shifts }
        })
    }
}
