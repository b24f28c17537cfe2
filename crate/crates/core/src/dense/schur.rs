//! Real Schur decomposition by Householder Hessenberg reduction followed by
//! Francis implicit double-shift QR sweeps.
//!
//! Complex conjugate eigenvalue pairs stay in 2×2 diagonal blocks that are
//! brought to standard form `[[a, b], [c, a]]` with `b·c < 0`; 2×2 blocks
//! with real eigenvalues are split into triangular form.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `M = Q T Qᵀ` with orthogonal `Q` and quasi-upper-triangular `T`.
#[derive(Clone, Debug)]
pub struct SchurForm<T: Scalar> {
    pub q_factor: DenseMatrix<T>,
    pub t_factor: DenseMatrix<T>,
}

/// Diagonal block of a real Schur form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SchurBlock<T> {
    Real { index: usize, value: T },
    /// Eigenvalues `re ± i·im` with `im > 0`, occupying rows `index, index + 1`.
    Complex { index: usize, re: T, im: T },
}

impl<T: Scalar> SchurForm<T> {
    pub fn dim(&self) -> usize {
        self.t_factor.rows()
    }

    pub fn blocks(&self) -> Vec<SchurBlock<T>> {
        let t = &self.t_factor;
        let n = t.rows();
        let mut out = Vec::with_capacity(n);
        let mut i = 0;
        while i < n {
            if i + 1 < n && t[(i + 1, i)] != T::zero() {
                let a = t[(i, i)];
                let b = t[(i, i + 1)];
                let c = t[(i + 1, i)];
                let d = t[(i + 1, i + 1)];
                let re = T::lit(0.5) * (a + d);
                let disc = T::lit(0.25) * (a - d) * (a - d) + b * c;
                out.push(SchurBlock::Complex {
                    index: i,
                    re,
                    im: (-disc).max(T::zero()).sqrt(),
                });
                i += 2;
            } else {
                out.push(SchurBlock::Real { index: i, value: t[(i, i)] });
                i += 1;
            }
        }
        out
    }

    /// Eigenvalues as `(re, im)` pairs in diagonal order.
    pub fn eigenvalues(&self) -> Vec<(T, T)> {
        let mut out = Vec::with_capacity(self.dim());
        for b in self.blocks() {
            match b {
                SchurBlock::Real { value, .. } => out.push((value, T::zero())),
                SchurBlock::Complex { re, im, .. } => {
                    out.push((re, im));
                    out.push((re, -im));
                }
            }
        }
        out
    }

    /// Largest real part over the spectrum.
    pub fn spectral_abscissa(&self) -> T {
        self.eigenvalues()
            .into_iter()
            .fold(T::neg_infinity(), |m, (re, _)| m.max(re))
    }

    /// Fails with [`Error::UnstableProjection`] unless every eigenvalue has a
    /// strictly negative real part.
    pub fn require_stable(&self) -> Result<()> {
        let abscissa = self.spectral_abscissa();
        if self.dim() > 0 && !(abscissa < T::zero()) {
            return Err(Error::UnstableProjection {
                real_part: abscissa.as_f64(),
            });
        }
        Ok(())
    }
}

pub fn real_schur<T: Scalar>(m: &DenseMatrix<T>) -> Result<SchurForm<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("real_schur"));
    }
    let n = m.rows();
    let mut h = m.clone();
    let mut q = DenseMatrix::identity(n);
    if n > 2 {
        hessenberg(&mut h, &mut q);
    }
    francis(&mut h, &mut q)?;
    Ok(SchurForm {
        q_factor: q,
        t_factor: h,
    })
}

/// Reduces `h` to upper Hessenberg form in place, accumulating `q ← q·P`.
fn hessenberg<T: Scalar>(h: &mut DenseMatrix<T>, q: &mut DenseMatrix<T>) {
    let n = h.rows();
    let mut v = vec![T::zero(); n];
    for k in 0..n.saturating_sub(2) {
        let alpha = crate::scalar::norm2(&(k + 1..n).map(|i| h[(i, k)]).collect::<Vec<_>>());
        if alpha == T::zero() {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let beta = if x0 >= T::zero() { -alpha } else { alpha };
        // v = x - beta e1, tau = 2 / (vᵀv)
        for i in k + 1..n {
            v[i] = h[(i, k)];
        }
        v[k + 1] = x0 - beta;
        let vtv: T = (k + 1..n).map(|i| v[i] * v[i]).sum();
        if vtv == T::zero() {
            continue;
        }
        let tau = T::lit(2.0) / vtv;
        // left: rows k+1.., all columns from k
        for j in k..n {
            let s: T = (k + 1..n).map(|i| v[i] * h[(i, j)]).sum::<T>() * tau;
            for i in k + 1..n {
                h[(i, j)] -= s * v[i];
            }
        }
        // right: all rows, columns k+1..
        for i in 0..n {
            let s: T = (k + 1..n).map(|j| h[(i, j)] * v[j]).sum::<T>() * tau;
            for j in k + 1..n {
                h[(i, j)] -= s * v[j];
            }
        }
        for i in 0..n {
            let s: T = (k + 1..n).map(|j| q[(i, j)] * v[j]).sum::<T>() * tau;
            for j in k + 1..n {
                q[(i, j)] -= s * v[j];
            }
        }
        h[(k + 1, k)] = beta;
        for i in k + 2..n {
            h[(i, k)] = T::zero();
        }
    }
}

/// Householder reflector `I - tau·v·vᵀ` with `v[0] = 1` mapping `x` onto a
/// multiple of `e1`. Returns `None` for a zero vector.
fn reflector<T: Scalar>(x: &[T]) -> Option<(Vec<T>, T)> {
    let norm = crate::scalar::norm2(x);
    if norm == T::zero() {
        return None;
    }
    let alpha = if x[0] >= T::zero() { -norm } else { norm };
    let u0 = x[0] - alpha;
    if u0 == T::zero() {
        return None;
    }
    let mut v = Vec::with_capacity(x.len());
    v.push(T::one());
    v.extend(x[1..].iter().map(|&xi| xi / u0));
    let vtv: T = v.iter().map(|&a| a * a).sum();
    Some((v, T::lit(2.0) / vtv))
}

fn apply_left<T: Scalar>(h: &mut DenseMatrix<T>, row0: usize, v: &[T], tau: T, cols: std::ops::Range<usize>) {
    for j in cols {
        let s: T = v.iter().enumerate().map(|(t, &vt)| vt * h[(row0 + t, j)]).sum::<T>() * tau;
        for (t, &vt) in v.iter().enumerate() {
            h[(row0 + t, j)] -= s * vt;
        }
    }
}

fn apply_right<T: Scalar>(h: &mut DenseMatrix<T>, col0: usize, v: &[T], tau: T, rows: std::ops::Range<usize>) {
    for i in rows {
        let s: T = v.iter().enumerate().map(|(t, &vt)| vt * h[(i, col0 + t)]).sum::<T>() * tau;
        for (t, &vt) in v.iter().enumerate() {
            h[(i, col0 + t)] -= s * vt;
        }
    }
}

fn negligible<T: Scalar>(h: &DenseMatrix<T>, l: usize, fallback: T) -> bool {
    let mut s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
    if s == T::zero() {
        s = fallback;
    }
    h[(l, l - 1)].abs() <= T::epsilon() * s
}

fn francis<T: Scalar>(h: &mut DenseMatrix<T>, q: &mut DenseMatrix<T>) -> Result<()> {
    let n = h.rows();
    if n < 2 {
        return Ok(());
    }
    let max_sweeps = 30 * n;
    let hnorm = h.frobenius_norm();
    let mut sweeps = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;

    loop {
        // locate the start of the trailing unreduced block
        let mut lo = hi;
        while lo > 0 {
            if negligible(h, lo, hnorm) {
                h[(lo, lo - 1)] = T::zero();
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            since_deflation = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        if lo + 1 == hi {
            standardize_block(h, q, lo);
            since_deflation = 0;
            if hi < 2 {
                break;
            }
            hi -= 2;
            continue;
        }

        sweeps += 1;
        since_deflation += 1;
        if sweeps > max_sweeps {
            return Err(Error::SchurNoConvergence { sweeps: max_sweeps });
        }

        let (s, t) = if since_deflation % 10 == 0 {
            // exceptional shift
            let w = h[(hi, hi - 1)].abs() + h[(hi - 1, hi - 2)].abs();
            let mu = h[(hi, hi)] + T::lit(0.75) * w;
            (mu + mu, mu * mu)
        } else {
            let a = h[(hi - 1, hi - 1)];
            let b = h[(hi - 1, hi)];
            let c = h[(hi, hi - 1)];
            let d = h[(hi, hi)];
            (a + d, a * d - b * c)
        };

        let h00 = h[(lo, lo)];
        let h10 = h[(lo + 1, lo)];
        let h01 = h[(lo, lo + 1)];
        let h11 = h[(lo + 1, lo + 1)];
        let mut x = h00 * h00 + h01 * h10 - s * h00 + t;
        let mut y = h10 * (h00 + h11 - s);
        let mut z = h10 * h[(lo + 2, lo + 1)];

        for k in lo..hi {
            let three = k + 1 < hi;
            let xs: Vec<T> = if three { vec![x, y, z] } else { vec![x, y] };
            if let Some((v, tau)) = reflector(&xs) {
                let first_col = if k > lo { k - 1 } else { lo };
                apply_left(h, k, &v, tau, first_col..n);
                let last_row = (k + 3).min(hi);
                apply_right(h, k, &v, tau, 0..last_row + 1);
                apply_right(q, k, &v, tau, 0..n);
                if k > lo {
                    h[(k + 1, k - 1)] = T::zero();
                    if three {
                        h[(k + 2, k - 1)] = T::zero();
                    }
                }
            }
            if k + 1 < hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
                if k + 2 < hi {
                    z = h[(k + 3, k)];
                }
            }
        }
    }

    for i in 2..n {
        for j in 0..i - 1 {
            h[(i, j)] = T::zero();
        }
    }
    Ok(())
}

/// Rotates the 2×2 diagonal block at `(i, i)` into standard form, updating
/// the rest of `h` and the accumulated `q`.
fn standardize_block<T: Scalar>(h: &mut DenseMatrix<T>, q: &mut DenseMatrix<T>, i: usize) {
    let n = h.rows();
    let (a, b, c, d, cs, sn) = lanv2(h[(i, i)], h[(i, i + 1)], h[(i + 1, i)], h[(i + 1, i + 1)]);
    h[(i, i)] = a;
    h[(i, i + 1)] = b;
    h[(i + 1, i)] = c;
    h[(i + 1, i + 1)] = d;
    // rows i, i+1 to the right of the block
    for j in i + 2..n {
        let x = h[(i, j)];
        let y = h[(i + 1, j)];
        h[(i, j)] = cs * x + sn * y;
        h[(i + 1, j)] = cs * y - sn * x;
    }
    // columns i, i+1 above the block
    for r in 0..i {
        let x = h[(r, i)];
        let y = h[(r, i + 1)];
        h[(r, i)] = cs * x + sn * y;
        h[(r, i + 1)] = cs * y - sn * x;
    }
    for r in 0..n {
        let x = q[(r, i)];
        let y = q[(r, i + 1)];
        q[(r, i)] = cs * x + sn * y;
        q[(r, i + 1)] = cs * y - sn * x;
    }
}

fn sign<T: Scalar>(a: T, b: T) -> T {
    if b >= T::zero() {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Schur factorization of a real 2×2 matrix in standardized form:
/// `[[a, b], [c, d]] = R · [[a', b'], [c', d']] · Rᵀ` with
/// `R = [[cs, -sn], [sn, cs]]`. Follows the LAPACK `dlanv2` construction.
fn lanv2<T: Scalar>(mut a: T, mut b: T, mut c: T, mut d: T) -> (T, T, T, T, T, T) {
    let zero = T::zero();
    let one = T::one();
    let half = T::lit(0.5);
    let eps = T::epsilon();
    let mut cs = one;
    let mut sn = zero;

    if c == zero {
    } else if b == zero {
        cs = zero;
        sn = one;
        std::mem::swap(&mut a, &mut d);
        b = -c;
        c = zero;
    } else if (a - d) == zero && (b >= zero) != (c >= zero) {
    } else {
        let temp = a - d;
        let mut p = half * temp;
        let bcmax = b.abs().max(c.abs());
        let bcmis = b.abs().min(c.abs()) * sign(one, b) * sign(one, c);
        let scale = p.abs().max(bcmax);
        let mut z = (p / scale) * p + (bcmax / scale) * bcmis;
        if z >= T::lit(4.0) * eps {
            // real eigenvalues
            z = p + sign(scale.sqrt() * z.sqrt(), p);
            a = d + z;
            d -= (bcmax / z) * bcmis;
            let tau = c.hypot(z);
            cs = z / tau;
            sn = c / tau;
            b -= c;
            c = zero;
        } else {
            let sigma = b + c;
            let tau = sigma.hypot(temp);
            cs = (half * (one + sigma.abs() / tau)).sqrt();
            sn = -(p / (tau * cs)) * sign(one, sigma);
            let aa = a * cs + b * sn;
            let bb = -a * sn + b * cs;
            let cc = c * cs + d * sn;
            let dd = -c * sn + d * cs;
            a = aa * cs + cc * sn;
            b = bb * cs + dd * sn;
            c = -aa * sn + cc * cs;
            d = -bb * sn + dd * cs;
            let temp = half * (a + d);
            a = temp;
            d = temp;
            if c != zero {
                if b != zero {
                    if (b >= zero) == (c >= zero) {
                        // real eigenvalues after all
                        let sab = b.abs().sqrt();
                        let sac = c.abs().sqrt();
                        p = sign(sab * sac, c);
                        let tau = one / (b + c).abs().sqrt();
                        a = temp + p;
                        d = temp - p;
                        b -= c;
                        c = zero;
                        let cs1 = sab * tau;
                        let sn1 = sac * tau;
                        let t2 = cs * cs1 - sn * sn1;
                        sn = cs * sn1 + sn * cs1;
                        cs = t2;
                    }
                } else {
                    b = -c;
                    c = zero;
                    let t2 = cs;
                    cs = -sn;
                    sn = t2;
                }
            }
        }
    }
    (a, b, c, d, cs, sn)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(f: &SchurForm<f64>) -> DenseMatrix<f64> {
        f.q_factor
            .matmul(&f.t_factor)
            .unwrap()
            .matmul(&f.q_factor.transpose())
            .unwrap()
    }

    #[test]
    fn diagonal_input_is_fixed_point() {
        let m = DenseMatrix::<f64>::from_rows(&[&[-1.0, 0.0], &[0.0, -2.0]]);
        let f = real_schur(&m).unwrap();
        assert_eq!(f.t_factor, m);
        assert_eq!(f.q_factor, DenseMatrix::identity(2));
    }

    #[test]
    fn rotation_block_kept() {
        let m = DenseMatrix::<f64>::from_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        let f = real_schur(&m).unwrap();
        let blocks = f.blocks();
        assert_eq!(blocks.len(), 1);
        match blocks[0] {
            SchurBlock::Complex { re, im, .. } => {
                assert!(re.abs() < 1e-15);
                assert!((im - 1.0).abs() < 1e-15);
            }
            _ => panic!("expected a complex pair"),
        }
    }

    #[test]
    fn real_2x2_block_is_split() {
        let m = DenseMatrix::<f64>::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let f = real_schur(&m).unwrap();
        assert_eq!(f.t_factor[(1, 0)], 0.0);
        let mut eig: Vec<f64> = f.eigenvalues().iter().map(|e| e.0).collect();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s = 33f64.sqrt();
        assert!((eig[0] - (5.0 - s) / 2.0).abs() < 1e-13);
        assert!((eig[1] - (5.0 + s) / 2.0).abs() < 1e-13);
        let r = reconstruct(&f).sub(&m).unwrap().frobenius_norm();
        assert!(r < 1e-13);
    }

    #[test]
    fn companion_matrix_mixed_spectrum() {
        // roots 1, 2, and ±i: x^4 - 3x^3 + 3x^2 - 3x + 2
        let m = DenseMatrix::<f64>::from_rows(&[
            &[3.0, -3.0, 3.0, -2.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
        ]);
        let f = real_schur(&m).unwrap();
        let r = reconstruct(&f).sub(&m).unwrap().frobenius_norm() / m.frobenius_norm();
        assert!(r < 1e-12, "reconstruction {r}");
        let mut re: Vec<f64> = f.eigenvalues().iter().map(|e| e.0).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(re[0].abs() < 1e-10 && re[1].abs() < 1e-10);
        assert!((re[2] - 1.0).abs() < 1e-10 && (re[3] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn unstable_detected() {
        let m = DenseMatrix::<f64>::from_rows(&[&[-1.0, 5.0], &[0.0, 0.5]]);
        let f = real_schur(&m).unwrap();
        assert!(matches!(f.require_stable(), Err(Error::UnstableProjection { .. })));
    }

    #[test]
    fn rejects_non_square() {
        assert!(real_schur(&DenseMatrix::<f64>::zeros(2, 3)).is_err());
    }
}
