//! Banded LU with partial pivoting (row interchanges are confined to the
//! band, so the upper bandwidth grows to `lower + upper`).

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct BandLu<T> {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<T>,
    piv: Vec<usize>,
}

impl<T: Scalar> BandLu<T> {
    /// Empty band storage for an `n×n` matrix with the given half bandwidths.
    pub fn zeroed(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![T::zero(); n * width],
            piv: Vec::new(),
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.kl + self.ku);
        i * self.width + j + self.kl - i
    }

    /// Adds `v` to entry `(i, j)`, which must lie inside the original band.
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        debug_assert!(j + self.kl >= i && j <= i + self.ku);
        let k = self.idx(i, j);
        self.data[k] += v;
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Factorizes in place. A pivot of magnitude at most `threshold` is
    /// reported as singular; `shift` only labels the error.
    pub fn factorize(&mut self, threshold: T, shift: f64) -> Result<()> {
        let n = self.n;
        let (kl, ku, w) = (self.kl, self.ku, self.width);
        self.piv = vec![0; n];
        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let mut p = k;
            let mut best = self.data[self.idx(k, k)].abs();
            for i in k + 1..=last_row {
                let v = self.data[self.idx(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if !(best > threshold) {
                return Err(Error::SingularShift { shift });
            }
            self.piv[k] = p;
            let last_col = (k + kl + ku).min(n - 1);
            if p != k {
                for j in k..=last_col {
                    let a = self.idx(k, j);
                    let b = self.idx(p, j);
                    self.data.swap(a, b);
                }
            }
            let pivot = self.data[self.idx(k, k)];
            let len = last_col - k;
            let krow = k * w + kl + 1; // (k, k+1)
            for i in k + 1..=last_row {
                let ik = self.idx(i, k);
                let l = self.data[ik] / pivot;
                self.data[ik] = l;
                if l == T::zero() || len == 0 {
                    continue;
                }
                let irow = ik + 1; // (i, k+1)
                let (top, bottom) = self.data.split_at_mut(irow);
                let src = &top[krow..krow + len];
                for (x, &y) in bottom[..len].iter_mut().zip(src) {
                    *x -= l * y;
                }
            }
        }
        Ok(())
    }

    /// Solves `M x = b` in place.
    pub fn solve_in_place(&self, x: &mut [T]) {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        for k in 0..n {
            let p = self.piv[k];
            if p != k {
                x.swap(k, p);
            }
            let xk = x[k];
            if xk == T::zero() {
                continue;
            }
            for i in k + 1..=(k + kl).min(n.saturating_sub(1)) {
                x[i] -= self.data[self.idx(i, k)] * xk;
            }
        }
        for i in (0..n).rev() {
            let last = (i + kl + ku).min(n - 1);
            let base = self.idx(i, i);
            let mut s = x[i];
            for (off, j) in (i + 1..=last).enumerate() {
                s -= self.data[base + 1 + off] * x[j];
            }
            x[i] = s / self.data[base];
        }
    }

    /// Solves `Mᵀ x = b` in place.
    pub fn solve_transpose_in_place(&self, x: &mut [T]) {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        // Uᵀ y = b
        for i in 0..n {
            let first = i.saturating_sub(kl + ku);
            let mut s = x[i];
            for j in first..i {
                s -= self.data[self.idx(j, i)] * x[j];
            }
            x[i] = s / self.data[self.idx(i, i)];
        }
        // apply L⁻ᵀ and the interchanges in reverse
        for k in (0..n).rev() {
            let mut s = x[k];
            for i in k + 1..=(k + kl).min(n - 1) {
                s -= self.data[self.idx(i, k)] * x[i];
            }
            x[k] = s;
            let p = self.piv[k];
            if p != k {
                x.swap(k, p);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(dense: &[[f64; 4]; 4], kl: usize, ku: usize) -> BandLu<f64> {
        let mut b = BandLu::zeroed(4, kl, ku);
        for i in 0..4 {
            for j in 0..4 {
                if dense[i][j] != 0.0 {
                    b.add(i, j, dense[i][j]);
                }
            }
        }
        b
    }

    #[test]
    fn pivoting_tridiagonal() {
        let m = [
            [1e-3, 2.0, 0.0, 0.0],
            [3.0, 1.0, -1.0, 0.0],
            [0.0, 4.0, 0.5, 2.0],
            [0.0, 0.0, 1.0, -3.0],
        ];
        let mut lu = build(&m, 1, 1);
        lu.factorize(0.0, 0.0).unwrap();
        let b = [1.0, 2.0, 3.0, 4.0];
        let mut x = b;
        lu.solve_in_place(&mut x);
        for i in 0..4 {
            let r: f64 = (0..4).map(|j| m[i][j] * x[j]).sum();
            assert!((r - b[i]).abs() < 1e-12);
        }
        let mut y = b;
        lu.solve_transpose_in_place(&mut y);
        for i in 0..4 {
            let r: f64 = (0..4).map(|j| m[j][i] * y[j]).sum();
            assert!((r - b[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_pivot_is_singular() {
        let m = [[0.0; 4]; 4];
        let mut lu = build(&m, 1, 1);
        assert!(matches!(lu.factorize(0.0, 1.0), Err(Error::SingularShift { .. })));
    }
}
