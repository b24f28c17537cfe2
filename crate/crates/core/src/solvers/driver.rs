use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::galerkin::ProjectionState;
use crate::scalar::Scalar;
use crate::solvers::{IterationRecord, LowRankSolution, SolveOutput, SolverConfig, SolverStatus, SolverTrace};
use crate::sparse::ShiftedFactorCache;

/// What an observer sees after each projected solve.
pub struct IterationView<'s, T: Scalar> {
    pub state: &'s ProjectionState<T>,
    pub record: &'s IterationRecord,
}

pub(crate) struct Estimate<T> {
    /// `‖(AU − UB)Z‖_F`.
    pub delta: T,
    /// Set when the method cannot produce a new direction.
    pub exhausted: bool,
}

pub(crate) enum Step {
    Extended { shifts: Vec<f64> },
    /// Every candidate was deflated.
    Stalled { shifts: Vec<f64> },
}

/// Method-specific part of an iteration.
pub(crate) trait Enrichment<T: Scalar> {
    /// Residual estimate for a state whose Gramian is solved.
    fn estimate(&mut self, state: &ProjectionState<T>) -> Result<Estimate<T>>;

    /// Upper bound on the columns the next step may add.
    fn max_growth(&self, state: &ProjectionState<T>) -> usize;

    fn enrich(
        &mut self,
        state: &mut ProjectionState<T>,
        cache: &mut ShiftedFactorCache<'_, T>,
        drop_tol: T,
    ) -> Result<Step>;
}

pub(crate) fn run<T: Scalar, E: Enrichment<T>>(
    cache: &mut ShiftedFactorCache<'_, T>,
    y0: &[T],
    config: &SolverConfig,
    method: &mut E,
    observer: &mut dyn FnMut(&IterationView<'_, T>),
) -> Result<SolveOutput<T>> {
    let a = cache.base();
    let drop_tol = T::lit(config.drop_tol);
    let mut state = ProjectionState::new(a, y0)?;
    let y0_sq = state.y0_norm() * state.y0_norm();
    let mut records: Vec<IterationRecord> = Vec::new();
    // basis size and Gramian of the last solvable projection
    let mut last_good: Option<(usize, DenseMatrix<T>)> = None;

    let status = loop {
        let (f0, s0) = (cache.stats().factorize_seconds, cache.stats().solve_seconds);
        match state.solve_gramian_with(false) {
            Ok(_) => {}
            // λᵢ(B) + λⱼ(B) ≈ 0: the projected equation has no unique solution
            Err(e @ (Error::SingularSystem | Error::UnstableProjection { .. })) => {
                if last_good.is_none() {
                    return Err(e);
                }
                break SolverStatus::UnstableProjection;
            }
            Err(e) => return Err(e),
        }
        let est = method.estimate(&state)?;
        let delta = est.delta;
        let residual = T::lit(2.0).sqrt() * delta / y0_sq;
        records.push(IterationRecord {
            iteration: records.len() + 1,
            basis_size: state.rank(),
            shifts: Vec::new(),
            delta: delta.as_f64(),
            residual: residual.as_f64(),
            factorize_seconds: cache.stats().factorize_seconds - f0,
            solve_seconds: cache.stats().solve_seconds - s0,
        });
        last_good = Some((state.rank(), state.z().expect("solved above").clone()));
        observer(&IterationView {
            state: &state,
            record: records.last().unwrap(),
        });

        if residual.as_f64() <= config.eps {
            break SolverStatus::Converged;
        }
        if est.exhausted {
            break SolverStatus::Breakdown;
        }
        if state.rank() + method.max_growth(&state) > config.r_max {
            break SolverStatus::RankBudgetExhausted;
        }
        let (f1, s1) = (cache.stats().factorize_seconds, cache.stats().solve_seconds);
        let step = method.enrich(&mut state, cache, drop_tol)?;
        let rec = records.last_mut().unwrap();
        rec.factorize_seconds += cache.stats().factorize_seconds - f1;
        rec.solve_seconds += cache.stats().solve_seconds - s1;
        match step {
            Step::Extended { shifts } => rec.shifts = shifts,
            Step::Stalled { shifts } => {
                rec.shifts = shifts;
                break SolverStatus::Breakdown;
            }
        }
    };

    let (rank, z) = last_good.expect("at least one projected solve succeeded");
    let cols: Vec<Vec<T>> = state.basis_columns()[..rank].to_vec();
    let u = DenseMatrix::from_columns(state.dim(), &cols)?;
    Ok(SolveOutput {
        solution: LowRankSolution::new(u, z)?,
        trace: SolverTrace {
            method: config.method,
            records,
            status,
        },
    })
}
