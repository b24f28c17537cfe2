use crate::dense::{DenseLu, DenseMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest Kronecker system (unknown count) solved by dense LU.
pub const KRONECKER_LIMIT: usize = 1600;

/// Solves `A P + P Bᵀ = −G` through the vectorized system
/// `(I⊗A + B⊗I) vec(P) = −vec(G)` with column-stacking `vec`.
pub fn kronecker_sylvester<T: Scalar>(a: &DenseMatrix<T>, b: &DenseMatrix<T>, g: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let (n, r) = (a.rows(), b.rows());
    if !a.is_square() || !b.is_square() || g.rows() != n || g.cols() != r {
        return Err(Error::DimensionMismatch {
            context: "kronecker_sylvester",
            expected: n * r,
            found: g.rows() * g.cols(),
        });
    }
    let size = n * r;
    if size > KRONECKER_LIMIT {
        return Err(Error::TooLarge {
            context: "Kronecker system",
            size,
            limit: KRONECKER_LIMIT,
        });
    }
    let mut k = DenseMatrix::zeros(size, size);
    for blk in 0..r {
        for p in 0..n {
            for q in 0..n {
                k[(blk * n + p, blk * n + q)] += a[(p, q)];
            }
        }
        for j in 0..r {
            let bij = b[(blk, j)];
            for p in 0..n {
                k[(blk * n + p, j * n + p)] += bij;
            }
        }
    }
    let mut rhs = vec![T::zero(); size];
    for j in 0..r {
        for i in 0..n {
            rhs[j * n + i] = -g[(i, j)];
        }
    }
    let x = DenseLu::new(&k)?.solve(&rhs)?;
    let mut p = DenseMatrix::zeros(n, r);
    for j in 0..r {
        for i in 0..n {
            p[(i, j)] = x[j * n + i];
        }
    }
    Ok(p)
}
