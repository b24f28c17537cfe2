use crate::error::Result;
use crate::galerkin::ProjectionState;
use crate::scalar::Scalar;
use crate::solvers::driver::{Enrichment, Estimate, Step};
use crate::sparse::ShiftedFactorCache;

/// Tracks which basis columns were produced last by the direct and the
/// inverse recurrences.
#[derive(Default)]
pub(crate) struct Kpik {
    direct: usize,
    inverse: usize,
}

pub(crate) fn residual_estimate<T: Scalar>(state: &ProjectionState<T>) -> Result<T> {
    let z = state.z().expect("Gramian solved before estimate");
    Ok(state.residual_factor().matmul(z)?.frobenius_norm())
}

impl<T: Scalar> Enrichment<T> for Kpik {
    fn estimate(&mut self, state: &ProjectionState<T>) -> Result<Estimate<T>> {
        Ok(Estimate {
            delta: residual_estimate(state)?,
            exhausted: false,
        })
    }

    fn max_growth(&self, _state: &ProjectionState<T>) -> usize {
        2
    }

    fn enrich(
        &mut self,
        state: &mut ProjectionState<T>,
        cache: &mut ShiftedFactorCache<'_, T>,
        drop_tol: T,
    ) -> Result<Step> {
        let a = cache.base();
        let direct = state.au_columns()[self.direct].clone();
        let inverse = cache.shifted_solve(T::zero(), &state.basis_columns()[self.inverse])?;
        let mut accepted = 0;
        if state.extend(a, &[direct], drop_tol)? == 1 {
            self.direct = state.rank() - 1;
            accepted += 1;
        }
        if state.extend(a, &[inverse], drop_tol)? == 1 {
            self.inverse = state.rank() - 1;
            accepted += 1;
        }
        let shifts = vec![0.0];
        Ok(if accepted > 0 {
            Step::Extended { shifts }
        } else {
            Step::Stalled { shifts }
        })
    }
}
