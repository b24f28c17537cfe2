use crate::dense::{
    orthonormalize_into, real_schur, solve_small_lyapunov_unchecked_with, solve_small_lyapunov_with, DenseMatrix,
    SchurForm,
};
use crate::error::{Error, Result};
use crate::scalar::{dot, norm2, Scalar};
use crate::sparse::CsrMatrix;

/// Orthonormal basis `U` of the projection together with `B = UᵀAU`,
/// `c₀ = Uᵀy₀`, the products `A·U` and (once solved) the small Gramian `Z`.
#[derive(Clone, Debug)]
pub struct ProjectionState<T: Scalar> {
    y0: Vec<T>,
    y0_norm: T,
    basis: Vec<Vec<T>>,
    au: Vec<Vec<T>>,
    b: DenseMatrix<T>,
    c0: Vec<T>,
    gramian: Option<Gramian<T>>,
}

#[derive(Clone, Debug)]
struct Gramian<T: Scalar> {
    z: DenseMatrix<T>,
    schur: SchurForm<T>,
}

impl<T: Scalar> ProjectionState<T> {
    /// Starts from `U = y₀/‖y₀‖`.
    pub fn new(a: &CsrMatrix<T>, y0: &[T]) -> Result<Self> {
        if y0.len() != a.dim() {
            return Err(Error::DimensionMismatch {
                context: "ProjectionState::new",
                expected: a.dim(),
                found: y0.len(),
            });
        }
        if y0.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("y0"));
        }
        let y0_norm = norm2(y0);
        if y0_norm == T::zero() {
            return Err(Error::InvalidProblem("right-hand side y0 is zero".into()));
        }
        let mut state = Self {
            y0: y0.to_vec(),
            y0_norm,
            basis: Vec::new(),
            au: Vec::new(),
            b: DenseMatrix::zeros(0, 0),
            c0: Vec::new(),
            gramian: None,
        };
        let u0: Vec<T> = y0.iter().map(|&x| x / y0_norm).collect();
        state.push_column(a, u0)?;
        Ok(state)
    }

    /// Orthonormalizes each candidate against the basis and appends the
    /// survivors, updating `B`, `c₀` and `A·U` only for the new columns.
    /// Returns how many candidates were accepted. Invalidates `Z`.
    pub fn extend(&mut self, a: &CsrMatrix<T>, candidates: &[Vec<T>], drop_tol: T) -> Result<usize> {
        let mut accepted = 0;
        for c in candidates {
            if c.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    context: "ProjectionState::extend",
                    expected: self.dim(),
                    found: c.len(),
                });
            }
            let mut basis = std::mem::take(&mut self.basis);
            let ok = orthonormalize_into(&mut basis, c.clone(), drop_tol);
            let new = if ok { basis.pop() } else { None };
            self.basis = basis;
            if let Some(u) = new {
                self.push_column(a, u)?;
                accepted += 1;
            }
        }
        Ok(accepted)
    }

    fn push_column(&mut self, a: &CsrMatrix<T>, u: Vec<T>) -> Result<()> {
        let au = a.matvec(&u)?;
        let r = self.basis.len();
        let mut b = DenseMatrix::zeros(r + 1, r + 1);
        for i in 0..r {
            for j in 0..r {
                b[(i, j)] = self.b[(i, j)];
            }
        }
        for i in 0..r {
            b[(i, r)] = dot(&self.basis[i], &au);
            b[(r, i)] = dot(&u, &self.au[i]);
        }
        b[(r, r)] = dot(&u, &au);
        self.b = b;
        self.c0.push(dot(&u, &self.y0));
        self.basis.push(u);
        self.au.push(au);
        self.gramian = None;
        Ok(())
    }

    /// Solves `BZ + ZBᵀ = −c₀c₀ᵀ` for the current basis; fails with
    /// [`Error::UnstableProjection`] unless `B` is stable.
    pub fn solve_gramian(&mut self) -> Result<&DenseMatrix<T>> {
        self.solve_gramian_with(true)
    }

    /// Like [`solve_gramian`](Self::solve_gramian), optionally accepting an
    /// unstable `B` as long as the projected equation is uniquely solvable.
    /// Krylov-type bases of non-normal operators pass through such
    /// projections before their Ritz values settle.
    pub fn solve_gramian_with(&mut self, require_stable: bool) -> Result<&DenseMatrix<T>> {
        if let (Some(g), true) = (&self.gramian, require_stable) {
            g.schur.require_stable()?;
        }
        if self.gramian.is_none() {
            let schur = real_schur(&self.b)?;
            let c = DenseMatrix::column_vector(&self.c0);
            let cc = c.matmul(&c.transpose())?;
            let z = if require_stable {
                solve_small_lyapunov_with(&schur, &cc)?
            } else {
                solve_small_lyapunov_unchecked_with(&schur, &cc)?
            };
            self.gramian = Some(Gramian { z, schur });
        }
        Ok(&self.gramian.as_ref().unwrap().z)
    }

    /// The Gramian `Z`, if [`solve_gramian`](Self::solve_gramian) has run
    /// since the last extension.
    pub fn z(&self) -> Option<&DenseMatrix<T>> {
        self.gramian.as_ref().map(|g| &g.z)
    }

    pub(crate) fn require_z(&self) -> Result<&DenseMatrix<T>> {
        self.z()
            .ok_or_else(|| Error::InvalidConfig("Gramian Z has not been solved for this basis".into()))
    }

    /// Real Schur form of `B` computed alongside `Z`.
    pub fn b_schur(&self) -> Option<&SchurForm<T>> {
        self.gramian.as_ref().map(|g| &g.schur)
    }

    pub fn dim(&self) -> usize {
        self.y0.len()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn y0(&self) -> &[T] {
        &self.y0
    }

    pub fn y0_norm(&self) -> T {
        self.y0_norm
    }

    pub fn basis_columns(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn au_columns(&self) -> &[Vec<T>] {
        &self.au
    }

    pub fn basis(&self) -> DenseMatrix<T> {
        DenseMatrix::from_columns(self.dim(), &self.basis).expect("basis columns have length n")
    }

    pub fn au(&self) -> DenseMatrix<T> {
        DenseMatrix::from_columns(self.dim(), &self.au).expect("A·U columns have length n")
    }

    pub fn b(&self) -> &DenseMatrix<T> {
        &self.b
    }

    pub fn c0(&self) -> &[T] {
        &self.c0
    }

    /// `A·U − U·B` as an `n×r` matrix.
    pub fn residual_factor(&self) -> DenseMatrix<T> {
        let n = self.dim();
        let r = self.rank();
        let mut out = DenseMatrix::zeros(n, r);
        for j in 0..r {
            let mut col = self.au[j].clone();
            for (i, u) in self.basis.iter().enumerate() {
                let bij = self.b[(i, j)];
                for (c, &x) in col.iter_mut().zip(u) {
                    *c -= bij * x;
                }
            }
            out.set_column(j, &col);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minus_identity_initial_state() {
        let a = CsrMatrix::<f64>::from_diagonal(&[-1.0; 3]);
        let mut s = ProjectionState::new(&a, &[0.0, 3.0, 4.0]).unwrap();
        assert_eq!(s.b()[(0, 0)], -1.0);
        assert!((s.c0()[0] - 5.0).abs() < 1e-15);
        let z = s.solve_gramian().unwrap();
        assert!((z[(0, 0)] - 12.5).abs() < 1e-13);
    }

    #[test]
    fn vector_in_span_is_dropped() {
        let a = CsrMatrix::<f64>::from_diagonal(&[-1.0, -2.0]);
        let mut s = ProjectionState::new(&a, &[1.0, 0.0]).unwrap();
        let n = s.extend(&a, &[vec![-3.0, 0.0]], 1e-10).unwrap();
        assert_eq!(n, 0);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn zero_rhs_rejected() {
        let a = CsrMatrix::<f64>::identity(2);
        assert!(ProjectionState::new(&a, &[0.0, 0.0]).is_err());
    }
}
