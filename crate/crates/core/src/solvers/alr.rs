use crate::error::{Error, Result};
use crate::galerkin::ProjectionState;
use crate::scalar::{dot, norm2, Scalar};
use crate::solvers::driver::{Enrichment, Estimate, Step};
use crate::sparse::ShiftedFactorCache;

/// Relative size of `w` below which the Krylov direction counts as lost.
const BREAKDOWN_RTOL: f64 = 1e-12;

pub(crate) struct Alr<T> {
    a_norm: T,
    w: Vec<T>,
}

impl<T: Scalar> Alr<T> {
    pub(crate) fn new(a_norm: T) -> Self {
        Self { a_norm, w: Vec::new() }
    }
}

/// `(I − UUᵀ)·x` with two Gram–Schmidt passes.
pub(crate) fn project_out<T: Scalar>(basis: &[Vec<T>], x: &[T]) -> Vec<T> {
    let mut w = x.to_vec();
    for _ in 0..2 {
        for u in basis {
            let c = dot(u, &w);
            for (wi, &ui) in w.iter_mut().zip(u) {
                *wi -= c * ui;
            }
        }
    }
    w
}

/// Last row of `Z`.
pub(crate) fn last_row<T: Scalar>(state: &ProjectionState<T>) -> Vec<T> {
    let z = state.z().expect("Gramian solved before estimate");
    z.row(z.rows() - 1).to_vec()
}

/// Solves `(A + sI)v = w`, perturbing `s` once if `A + sI` is singular.
pub(crate) fn guarded_solve<T: Scalar>(cache: &mut ShiftedFactorCache<'_, T>, s: T, w: &[T]) -> Result<(T, Vec<T>)> {
    match cache.shifted_solve(s, w) {
        Ok(v) => Ok((s, v)),
        Err(Error::SingularShift { .. }) => {
            let s2 = s * T::lit(1.0 + 1e-8) + T::lit(1e-12);
            let v = cache.shifted_solve(s2, w)?;
            Ok((s2, v))
        }
        Err(e) => Err(e),
    }
}

impl<T: Scalar> Enrichment<T> for Alr<T> {
    fn estimate(&mut self, state: &ProjectionState<T>) -> Result<Estimate<T>> {
        // the residual factor (I − UUᵀ)AU has a single nonzero column, the last
        let au_last = state.au_columns().last().expect("basis is never empty");
        self.w = project_out(state.basis_columns(), au_last);
        let w_norm = norm2(&self.w);
        let z = last_row(state);
        Ok(Estimate {
            delta: w_norm * norm2(&z),
            exhausted: w_norm <= T::lit(BREAKDOWN_RTOL) * self.a_norm,
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
        let z = last_row(state);
        let z_norm = norm2(&z);
        let q: Vec<T> = z.iter().map(|&x| x / z_norm).collect();
        let bq = state.b().matvec(&q)?;
        let s = dot(&q, &bq);
        let (s, v) = guarded_solve(cache, s, &self.w)?;
        let w = std::mem::take(&mut self.w);
        let accepted = state.extend(cache.base(), &[v, w], drop_tol)?;
        let shifts = vec![s.as_f64()];
        Ok(if accepted > 0 {
            Step::Extended { shifts }
        } else {
            Step::Stalled { shifts }
        })
    }
}
