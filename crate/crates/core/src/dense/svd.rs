use crate::dense::DenseMatrix;
use crate::scalar::{dot, norm2, Scalar};

/// Singular values in descending order, `min(rows, cols)` of them.
///
/// One-sided Jacobi (Hestenes) on the columns of the taller orientation,
/// which keeps high relative accuracy for small singular values.
pub fn singular_values<T: Scalar>(m: &DenseMatrix<T>) -> Vec<T> {
    let work = if m.rows() >= m.cols() { m.clone() } else { m.transpose() };
    let k = work.cols();
    let mut cols = work.columns();
    let tol = T::epsilon();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma == T::zero() || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let (cp, cq) = (&mut left[p], &mut right[0]);
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let xv = *x;
                    let yv = *y;
                    *x = c * xv - s * yv;
                    *y = s * xv + c * yv;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> = cols.iter().map(|c| norm2(c)).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_values() {
        let m = DenseMatrix::<f64>::from_rows(&[&[3.0, 0.0], &[0.0, -2.0]]);
        assert_eq!(singular_values(&m), vec![3.0, 2.0]);
    }

    #[test]
    fn outer_product_is_rank_one() {
        let w = [1.0, 2.0, 2.0];
        let q = [3.0, 4.0];
        let mut m = DenseMatrix::<f64>::zeros(3, 2);
        for i in 0..3 {
            for j in 0..2 {
                m[(i, j)] = w[i] * q[j];
            }
        }
        let sv = singular_values(&m);
        assert!((sv[0] - 15.0).abs() < 1e-13);
        assert!(sv[1] < 1e-14);
    }

    #[test]
    fn wide_matrix_count() {
        let m = DenseMatrix::<f64>::from_rows(&[&[1.0, 0.0, 2.0]]);
        let sv = singular_values(&m);
        assert_eq!(sv.len(), 1);
        assert!((sv[0] - 5f64.sqrt()).abs() < 1e-15);
    }
}
