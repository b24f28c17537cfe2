use crate::dense::{real_schur, DenseMatrix};
use crate::error::Result;
use crate::scalar::Scalar;
use crate::solvers::SolverTrace;

/// Factored approximation `X ≈ U Z Uᵀ`.
#[derive(Clone, Debug)]
pub struct LowRankSolution<T: Scalar> {
    pub u: DenseMatrix<T>,
    pub z: DenseMatrix<T>,
}

impl<T: Scalar> LowRankSolution<T> {
    /// Builds the solution, symmetrizing `Z` and clipping eigenvalues in
    /// `[−1e-12·‖Z‖₂, 0)` to zero.
    pub fn new(u: DenseMatrix<T>, mut z: DenseMatrix<T>) -> Result<Self> {
        z.symmetrize();
        let schur = real_schur(&z)?;
        let diag: Vec<T> = (0..z.rows()).map(|i| schur.t_factor[(i, i)]).collect();
        if diag.iter().any(|&d| d < T::zero()) {
            let norm = diag.iter().fold(T::zero(), |m, &d| m.max(d.abs()));
            let floor = -T::lit(1e-12) * norm;
            let clipped: Vec<T> = diag
                .iter()
                .map(|&d| if d < T::zero() && d >= floor { T::zero() } else { d })
                .collect();
            let q = &schur.q_factor;
            z = q.matmul(&DenseMatrix::from_diagonal(&clipped))?.matmul(&q.transpose())?;
            z.symmetrize();
        }
        Ok(Self { u, z })
    }

    pub fn rank(&self) -> usize {
        self.u.cols()
    }

    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    /// Forms `U Z Uᵀ` densely.
    pub fn to_dense(&self) -> DenseMatrix<T> {
        let uz = self.u.matmul(&self.z).expect("U and Z are conformant");
        uz.matmul(&self.u.transpose()).expect("UZ and Uᵀ are conformant")
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutput<T: Scalar> {
    pub solution: LowRankSolution<T>,
    pub trace: SolverTrace,
}
