use std::fmt;

use crate::solvers::Method;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverStatus {
    Converged,
    RankBudgetExhausted,
    /// No new direction could be added although the tolerance was not met.
    Breakdown,
    /// The projected equation became singular (`B` has eigenvalues with
    /// `λᵢ + λⱼ ≈ 0`); the solution is that of the last solvable basis.
    UnstableProjection,
}

impl SolverStatus {
    pub fn name(self) -> &'static str {
        match self {
            SolverStatus::Converged => "converged",
            SolverStatus::RankBudgetExhausted => "rank_budget_exhausted",
            SolverStatus::Breakdown => "breakdown",
            SolverStatus::UnstableProjection => "unstable_projection",
        }
    }
}

impl fmt::Display for SolverStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One solve of the projected equation and the enrichment that followed it.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    /// 1-based index of the projected solve.
    pub iteration: usize,
    pub basis_size: usize,
    /// Shifts `s` of the systems `(A + sI)v = w` solved to enrich the basis
    /// after this record (empty on the final record).
    pub shifts: Vec<f64>,
    /// Residual estimate `‖(AU − UB)Z‖_F`.
    pub delta: f64,
    /// `√2·δ / ‖y₀‖²`.
    pub residual: f64,
    pub factorize_seconds: f64,
    pub solve_seconds: f64,
}

#[derive(Clone, Debug)]
pub struct SolverTrace {
    pub method: Method,
    pub records: Vec<IterationRecord>,
    pub status: SolverStatus,
}

impl SolverTrace {
    /// Number of enrichment steps, counted as at least one so that a run
    /// converging on its initial basis reports a single iteration.
    pub fn iterations(&self) -> usize {
        self.records.len().saturating_sub(1).max(1)
    }

    pub fn final_rank(&self) -> usize {
        self.records.last().map_or(0, |r| r.basis_size)
    }

    pub fn final_residual(&self) -> f64 {
        self.records.last().map_or(f64::INFINITY, |r| r.residual)
    }

    /// All shifts in the order they were used.
    pub fn shifts(&self) -> Vec<f64> {
        self.records.iter().flat_map(|r| r.shifts.iter().copied()).collect()
    }

    pub fn factorize_seconds(&self) -> f64 {
        self.records.iter().map(|r| r.factorize_seconds).sum()
    }

    pub fn solve_seconds(&self) -> f64 {
        self.records.iter().map(|r| r.solve_seconds).sum()
    }

    pub fn converged(&self) -> bool {
        self.status == SolverStatus::Converged
    }
}
