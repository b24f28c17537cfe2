use crate::dense::{real_schur, DenseLu, DenseMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest operator dimension accepted by the Kronecker-based constant.
pub const BOUND_MAX_DIM: usize = 64;

/// `I⊗A + M⊗I` for `A` (`n×n`) and `M` (`m×m`).
fn kron_sum<T: Scalar>(a: &DenseMatrix<T>, m: &DenseMatrix<T>) -> DenseMatrix<T> {
    let n = a.rows();
    let k = m.rows();
    let mut out = DenseMatrix::zeros(n * k, n * k);
    for i in 0..k {
        for p in 0..n {
            for q in 0..n {
                out[(i * n + p, i * n + q)] += a[(p, q)];
            }
        }
        for j in 0..k {
            let mij = m[(i, j)];
            if mij != T::zero() {
                for p in 0..n {
                    out[(i * n + p, j * n + p)] += mij;
                }
            }
        }
    }
    out
}

fn inverse_frobenius<T: Scalar>(m: &DenseMatrix<T>) -> Result<T> {
    Ok(DenseLu::new(m)?.inverse()?.frobenius_norm())
}

/// Constant `C = ‖(I⊗A + A⊗I)⁻¹‖_F + √(2r)·‖(I⊗A + B⊗I)⁻¹‖_F` of the bound
/// `F(U) ≤ C·R₁(U)`.
///
/// The first term depends only on `A` and is computed once.
#[derive(Clone, Debug)]
pub struct BoundConstant<T: Scalar> {
    a: DenseMatrix<T>,
    lyapunov_term: T,
}

impl<T: Scalar> BoundConstant<T> {
    pub fn new(a_dense: &DenseMatrix<T>) -> Result<Self> {
        if !a_dense.is_square() {
            return Err(Error::NotSquare {
                rows: a_dense.rows(),
                cols: a_dense.cols(),
            });
        }
        if a_dense.rows() > BOUND_MAX_DIM {
            return Err(Error::TooLarge {
                context: "bound constant",
                size: a_dense.rows(),
                limit: BOUND_MAX_DIM,
            });
        }
        let lyapunov_term = inverse_frobenius(&kron_sum(a_dense, a_dense))?;
        Ok(Self {
            a: a_dense.clone(),
            lyapunov_term,
        })
    }

    pub fn evaluate(&self, b: &DenseMatrix<T>) -> Result<T> {
        real_schur(b)?.require_stable()?;
        let r = T::lit(b.rows() as f64);
        let sylvester_term = inverse_frobenius(&kron_sum(&self.a, b))?;
        Ok(self.lyapunov_term + (T::lit(2.0) * r).sqrt() * sylvester_term)
    }
}

pub fn bound_constant<T: Scalar>(a_dense: &DenseMatrix<T>, b: &DenseMatrix<T>) -> Result<T> {
    BoundConstant::new(a_dense)?.evaluate(b)
}
