use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::{axpy, dot, norm2, Scalar};

/// Default relative deflation threshold for basis extension.
pub const DEFAULT_DROP_TOL: f64 = 1e-10;

/// Orthogonalizes `candidate` against `basis` with two classical
/// Gram–Schmidt passes and appends it when it survives deflation.
///
/// Returns `true` when the vector was appended. A candidate whose norm after
/// projection is at most `drop_tol` times its original norm is discarded.
pub fn orthonormalize_into<T: Scalar>(basis: &mut Vec<Vec<T>>, mut candidate: Vec<T>, drop_tol: T) -> bool {
    let original = norm2(&candidate);
    if original == T::zero() || !original.is_finite() {
        return false;
    }
    for _ in 0..2 {
        let coeffs: Vec<T> = basis.iter().map(|u| dot(u, &candidate)).collect();
        for (u, &c) in basis.iter().zip(&coeffs) {
            axpy(-c, u, &mut candidate);
        }
    }
    let remaining = norm2(&candidate);
    if remaining <= drop_tol * original {
        return false;
    }
    for x in candidate.iter_mut() {
        *x /= remaining;
    }
    basis.push(candidate);
    true
}

/// Extends an orthonormal basis by the columns of `candidates`.
///
/// The leading columns of the result are exactly the columns of `u`;
/// surviving candidates follow in their original order. Returns the extended
/// basis and the number of accepted candidates.
pub fn gram_schmidt_extend<T: Scalar>(
    u: &DenseMatrix<T>,
    candidates: &DenseMatrix<T>,
    drop_tol: T,
) -> Result<(DenseMatrix<T>, usize)> {
    let n = candidates.rows();
    if u.cols() > 0 && u.rows() != n {
        return Err(Error::DimensionMismatch {
            context: "gram_schmidt_extend",
            expected: u.rows(),
            found: n,
        });
    }
    let mut basis = if u.cols() == 0 { Vec::new() } else { u.columns() };
    let before = basis.len();
    for j in 0..candidates.cols() {
        orthonormalize_into(&mut basis, candidates.column(j), drop_tol);
    }
    let accepted = basis.len() - before;
    let mut out = DenseMatrix::from_columns(n, &basis)?;
    // the copy through column vectors is exact, but keep the contract explicit
    for j in 0..before {
        for i in 0..n {
            out[(i, j)] = u[(i, j)];
        }
    }
    Ok((out, accepted))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_first_candidate() {
        let empty = DenseMatrix::<f64>::zeros(3, 0);
        let c = DenseMatrix::column_vector(&[3.0, 4.0, 0.0]);
        let (u, accepted) = gram_schmidt_extend(&empty, &c, 1e-10).unwrap();
        assert_eq!(accepted, 1);
        assert_eq!(u.column(0), vec![0.6, 0.8, 0.0]);
    }

    #[test]
    fn drops_candidate_in_span() {
        let e1 = DenseMatrix::column_vector(&[1.0, 0.0, 0.0]);
        let c = DenseMatrix::column_vector(&[2.0, 0.0, 0.0]);
        let (u, accepted) = gram_schmidt_extend(&e1, &c, 1e-10).unwrap();
        assert_eq!(accepted, 0);
        assert_eq!(u, e1);
    }

    #[test]
    fn mismatched_rows_rejected() {
        let e1 = DenseMatrix::column_vector(&[1.0, 0.0, 0.0]);
        let c = DenseMatrix::column_vector(&[2.0, 0.0]);
        assert!(gram_schmidt_extend(&e1, &c, 1e-10).is_err());
    }

    #[test]
    fn zero_candidate_dropped() {
        let mut basis: Vec<Vec<f64>> = Vec::new();
        assert!(!orthonormalize_into(&mut basis, vec![0.0; 4], 1e-10));
        assert!(basis.is_empty());
    }
}
