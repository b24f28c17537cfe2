//! Brute-force reference solvers used to verify the projection methods.
//!
//! These are deliberately independent of the Schur-based kernels: small
//! problems go through the vectorized Kronecker system and dense LU, larger
//! ones through the matrix sign function iteration.

mod eigen;
mod kronecker;
mod sign;

pub use eigen::symmetric_eigen;
pub use kronecker::{kronecker_sylvester, KRONECKER_LIMIT};
pub use sign::sign_sylvester;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest operator dimension the oracle accepts.
pub const ORACLE_MAX_DIM: usize = 400;

/// Dense solution `X` of `AX + XAᵀ = −y₀y₀ᵀ`.
#[derive(Clone, Debug)]
pub struct DenseSolution<T: Scalar> {
    pub x: DenseMatrix<T>,
}

impl<T: Scalar> DenseSolution<T> {
    pub fn trace(&self) -> T {
        self.x.trace()
    }
}

pub fn dense_lyapunov<T: Scalar>(a: &DenseMatrix<T>, y0: &[T]) -> Result<DenseSolution<T>> {
    if a.rows() > ORACLE_MAX_DIM {
        return Err(Error::TooLarge {
            context: "dense Lyapunov oracle",
            size: a.rows(),
            limit: ORACLE_MAX_DIM,
        });
    }
    let y = DenseMatrix::column_vector(y0);
    let g = y.matmul(&y.transpose())?;
    let mut x = dense_sylvester(a, a, &g)?;
    x.symmetrize();
    Ok(DenseSolution { x })
}

/// Solves `A P + P Bᵀ = −G`.
pub fn dense_sylvester<T: Scalar>(a: &DenseMatrix<T>, b: &DenseMatrix<T>, g: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    if a.rows() * b.rows() <= KRONECKER_LIMIT {
        kronecker_sylvester(a, b, g)
    } else {
        if a.rows() > ORACLE_MAX_DIM || b.rows() > ORACLE_MAX_DIM {
            return Err(Error::TooLarge {
                context: "dense Sylvester oracle",
                size: a.rows().max(b.rows()),
                limit: ORACLE_MAX_DIM,
            });
        }
        sign_sylvester(a, b, g)
    }
}

/// `‖A X + X Aᵀ + y₀y₀ᵀ‖_F` formed densely.
pub fn lyapunov_residual<T: Scalar>(a: &DenseMatrix<T>, x: &DenseMatrix<T>, y0: &[T]) -> Result<T> {
    let y = DenseMatrix::column_vector(y0);
    let ax = a.matmul(x)?;
    Ok(ax.add(&ax.transpose())?.add(&y.matmul(&y.transpose())?)?.frobenius_norm())
}

/// `‖A P + P Bᵀ + G‖_F` formed densely.
pub fn sylvester_residual<T: Scalar>(
    a: &DenseMatrix<T>,
    b: &DenseMatrix<T>,
    p: &DenseMatrix<T>,
    g: &DenseMatrix<T>,
) -> Result<T> {
    Ok(a.matmul(p)?.add(&p.matmul(&b.transpose())?)?.add(g)?.frobenius_norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_and_diagonal() {
        let a = DenseMatrix::<f64>::from_rows(&[&[-1.0]]);
        assert!((dense_lyapunov(&a, &[1.0]).unwrap().x[(0, 0)] - 0.5).abs() < 1e-15);
        let a = DenseMatrix::<f64>::from_rows(&[&[-1.0, 0.0], &[0.0, -2.0]]);
        let x = dense_lyapunov(&a, &[1.0, 1.0]).unwrap().x;
        let expect = [[0.5, 1.0 / 3.0], [1.0 / 3.0, 0.25]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((x[(i, j)] - expect[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn sylvester_scalar_and_zero() {
        let a = DenseMatrix::<f64>::from_rows(&[&[-1.0]]);
        let b = DenseMatrix::<f64>::from_rows(&[&[-2.0]]);
        let p = dense_sylvester(&a, &b, &DenseMatrix::from_rows(&[&[1.0]])).unwrap();
        assert!((p[(0, 0)] - 1.0 / 3.0).abs() < 1e-15);
        let p = dense_sylvester(&a, &b, &DenseMatrix::zeros(1, 1)).unwrap();
        assert_eq!(p[(0, 0)], 0.0);
    }

    #[test]
    fn sign_matches_kronecker() {
        let a = DenseMatrix::<f64>::from_rows(&[&[-3.0, 1.0, 0.0], &[0.5, -2.0, 1.0], &[0.0, -1.0, -4.0]]);
        let b = DenseMatrix::<f64>::from_rows(&[&[-1.0, 2.0], &[-3.0, -1.5]]);
        let g = DenseMatrix::<f64>::from_rows(&[&[1.0, 0.0], &[0.5, -2.0], &[0.0, 1.0]]);
        let k = kronecker_sylvester(&a, &b, &g).unwrap();
        let s = sign_sylvester(&a, &b, &g).unwrap();
        assert!(k.sub(&s).unwrap().frobenius_norm() < 1e-12 * k.frobenius_norm());
    }

    #[test]
    fn jacobi_two_by_two() {
        let m = DenseMatrix::<f64>::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let (vals, vecs) = symmetric_eigen(&m).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-15 && (vals[1] - 3.0).abs() < 1e-15);
        let back = vecs.matmul(&DenseMatrix::from_diagonal(&vals)).unwrap().matmul(&vecs.transpose()).unwrap();
        assert!(back.sub(&m).unwrap().frobenius_norm() < 1e-14);
    }

    #[test]
    fn unstable_sign_iteration_rejected() {
        let a = DenseMatrix::<f64>::from_rows(&[&[1.0]]);
        assert!(sign_sylvester(&a, &a, &DenseMatrix::from_rows(&[&[1.0]])).is_err());
    }
}
