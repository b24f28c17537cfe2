//! Matrix sign function iteration for Sylvester equations, used when the
//! Kronecker system is too large to factorize densely.

use crate::dense::{DenseLu, DenseMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 100;

/// Solves `A P + P Bᵀ = −G` for stable `A` and `B` by Newton iteration on
/// the sign of `[[A, G], [0, −Bᵀ]]`, whose off-diagonal block converges to
/// `2P`.
pub fn sign_sylvester<T: Scalar>(a: &DenseMatrix<T>, b: &DenseMatrix<T>, g: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let mut ak = a.clone();
    let mut bk = b.transpose();
    let mut gk = g.clone();
    let half = T::lit(0.5);
    let tol = T::lit(1e-13);
    let mut converged_sweeps = 0;
    for _ in 0..MAX_SWEEPS {
        let a_inv = DenseLu::new(&ak)?.inverse()?;
        let b_inv = DenseLu::new(&bk)?.inverse()?;
        // determinant-free norm scaling speeds up the early sweeps
        let num = (a_inv.frobenius_norm().powi(2) + b_inv.frobenius_norm().powi(2)).sqrt();
        let den = (ak.frobenius_norm().powi(2) + bk.frobenius_norm().powi(2)).sqrt();
        let c = if converged_sweeps > 0 { T::one() } else { (den / num).sqrt() };
        let a_next = ak.scaled(T::one() / c).add(&a_inv.scaled(c))?.scaled(half);
        let b_next = bk.scaled(T::one() / c).add(&b_inv.scaled(c))?.scaled(half);
        let g_next = gk
            .scaled(T::one() / c)
            .add(&a_inv.matmul(&gk)?.matmul(&b_inv)?.scaled(c))?
            .scaled(half);
        let change = a_next.sub(&ak)?.frobenius_norm() / a_next.frobenius_norm()
            + b_next.sub(&bk)?.frobenius_norm() / b_next.frobenius_norm();
        ak = a_next;
        bk = b_next;
        gk = g_next;
        if change <= tol.sqrt() {
            // quadratic convergence: a couple more sweeps reach full accuracy
            converged_sweeps += 1;
            if converged_sweeps > 2 {
                break;
            }
        }
    }
    // the limits must be −I; anything else means an unstable coefficient
    let n = ak.rows();
    let m = bk.rows();
    let dev_a = ak.add(&DenseMatrix::identity(n))?.frobenius_norm();
    let dev_b = bk.add(&DenseMatrix::identity(m))?.frobenius_norm();
    if !(dev_a <= T::lit(1e-8) * T::lit(n as f64).sqrt()) || !(dev_b <= T::lit(1e-8) * T::lit(m as f64).sqrt()) {
        return Err(Error::InvalidProblem("sign iteration did not converge to -I; coefficient not stable".into()));
    }
    Ok(gk.scaled(half))
}
