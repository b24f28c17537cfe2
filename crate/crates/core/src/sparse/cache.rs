use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::scalar::{norm2, Scalar};
use crate::sparse::band_lu::BandLu;
use crate::sparse::ordering::BandOrdering;
use crate::sparse::CsrMatrix;

/// Relative pivot threshold below which `A + sI` is reported singular.
pub const SINGULAR_PIVOT_RTOL: f64 = 1e-14;

/// Exact cache key: bit patterns of the real and imaginary shift parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShiftKey {
    re: u64,
    im: u64,
}

impl ShiftKey {
    fn new<T: Scalar>(re: T, im: T) -> Self {
        Self {
            re: re.key_bits(),
            im: im.key_bits(),
        }
    }
}

/// Factorization of `A + (re + i·im) I`. Complex shifts are stored as the
/// equivalent real system of twice the size on interleaved `[re, im]`
/// unknowns.
#[derive(Debug)]
pub struct ShiftedFactor<T: Scalar> {
    re: T,
    im: T,
    ordering: Arc<BandOrdering>,
    lu: BandLu<T>,
}

impl<T: Scalar> ShiftedFactor<T> {
    pub fn shift(&self) -> (T, T) {
        (self.re, self.im)
    }

    pub fn is_complex(&self) -> bool {
        self.im != T::zero()
    }

    /// Solves with the factorized matrix (or its transpose) on a vector in
    /// the original numbering of its dimension (`n` real, `2n` interleaved).
    fn solve(&self, rhs: &[T], transpose: bool) -> Vec<T> {
        let perm = &self.ordering.perm;
        let mut x: Vec<T> = perm.iter().map(|&old| rhs[old]).collect();
        if transpose {
            self.lu.solve_transpose_in_place(&mut x);
        } else {
            self.lu.solve_in_place(&mut x);
        }
        let mut out = vec![T::zero(); x.len()];
        for (new, &old) in perm.iter().enumerate() {
            out[old] = x[new];
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct CacheStats {
    pub factorizations: usize,
    pub hits: usize,
    pub solves: usize,
    pub factorize_seconds: f64,
    pub solve_seconds: f64,
    /// Largest relative residual `‖(A+sI)v − w‖/‖w‖` seen while verification
    /// is enabled.
    pub max_backward_error: Option<f64>,
}

/// Map from shift to a factorization of `A + sI`, reused across solves.
///
/// The band ordering depends only on the pattern of `A` and is computed once.
pub struct ShiftedFactorCache<'a, T: Scalar> {
    base: &'a CsrMatrix<T>,
    base_norm: T,
    ordering: Option<Arc<BandOrdering>>,
    doubled_ordering: Option<Arc<BandOrdering>>,
    entries: HashMap<ShiftKey, Arc<ShiftedFactor<T>>>,
    verify: bool,
    stats: CacheStats,
}

impl<'a, T: Scalar> ShiftedFactorCache<'a, T> {
    pub fn new(base: &'a CsrMatrix<T>) -> Self {
        Self {
            base,
            base_norm: base.norm_inf(),
            ordering: None,
            doubled_ordering: None,
            entries: HashMap::new(),
            verify: false,
            stats: CacheStats::default(),
        }
    }

    pub fn base(&self) -> &'a CsrMatrix<T> {
        self.base
    }

    /// When enabled, every solve re-multiplies and records its backward error.
    pub fn set_verify(&mut self, verify: bool) {
        self.verify = verify;
    }

    pub fn stats(&self) -> &CacheStats {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn ordering(&mut self) -> Arc<BandOrdering> {
        if self.ordering.is_none() {
            self.ordering = Some(Arc::new(BandOrdering::for_pattern(self.base)));
        }
        self.ordering.clone().unwrap()
    }

    fn doubled_ordering(&mut self) -> Arc<BandOrdering> {
        if self.doubled_ordering.is_none() {
            let d = self.ordering().doubled();
            self.doubled_ordering = Some(Arc::new(d));
        }
        self.doubled_ordering.clone().unwrap()
    }

    /// Factorization of `A + sI`, built on first request and cached under the
    /// exact bit pattern of `s`.
    pub fn factorize_shifted(&mut self, s: T) -> Result<Arc<ShiftedFactor<T>>> {
        self.factorize_complex(s, T::zero())
    }

    /// Factorization of `A + (re + i·im) I`.
    pub fn factorize_complex(&mut self, re: T, im: T) -> Result<Arc<ShiftedFactor<T>>> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::NonFinite("shift"));
        }
        let key = ShiftKey::new(re, im);
        if let Some(f) = self.entries.get(&key) {
            self.stats.hits += 1;
            return Ok(f.clone());
        }
        let start = Instant::now();
        let factor = if im == T::zero() {
            self.build_real(re)?
        } else {
            self.build_complex(re, im)?
        };
        self.stats.factorize_seconds += start.elapsed().as_secs_f64();
        self.stats.factorizations += 1;
        let factor = Arc::new(factor);
        self.entries.insert(key, factor.clone());
        Ok(factor)
    }

    fn build_real(&mut self, s: T) -> Result<ShiftedFactor<T>> {
        let ord = self.ordering();
        let a = self.base;
        let n = a.dim();
        let mut lu = BandLu::zeroed(n, ord.lower, ord.upper);
        for i in 0..n {
            let pi = ord.inverse[i];
            for (j, v) in a.row(i) {
                lu.add(pi, ord.inverse[j], v);
            }
            lu.add(pi, pi, s);
        }
        let norm = self.shifted_norm(s, T::zero());
        lu.factorize(T::lit(SINGULAR_PIVOT_RTOL) * norm, s.as_f64())?;
        Ok(ShiftedFactor {
            re: s,
            im: T::zero(),
            ordering: ord,
            lu,
        })
    }

    fn build_complex(&mut self, re: T, im: T) -> Result<ShiftedFactor<T>> {
        let ord = self.doubled_ordering();
        let a = self.base;
        let n = a.dim();
        let mut lu = BandLu::zeroed(2 * n, ord.lower, ord.upper);
        for i in 0..n {
            let (pr, pim) = (ord.inverse[2 * i], ord.inverse[2 * i + 1]);
            for (j, v) in a.row(i) {
                lu.add(pr, ord.inverse[2 * j], v);
                lu.add(pim, ord.inverse[2 * j + 1], v);
            }
            // [A + re, -im; im, A + re] acting on (x_re, x_im)
            lu.add(pr, pr, re);
            lu.add(pim, pim, re);
            lu.add(pr, pim, -im);
            lu.add(pim, pr, im);
        }
        let norm = self.shifted_norm(re, im);
        lu.factorize(T::lit(SINGULAR_PIVOT_RTOL) * norm, re.as_f64())?;
        Ok(ShiftedFactor { re, im, ordering: ord, lu })
    }

    fn shifted_norm(&self, re: T, im: T) -> T {
        let a = self.base;
        (0..a.dim())
            .map(|i| {
                let mut s = im.abs();
                let mut diag_seen = false;
                for (j, v) in a.row(i) {
                    if j == i {
                        s += (v + re).abs();
                        diag_seen = true;
                    } else {
                        s += v.abs();
                    }
                }
                if !diag_seen {
                    s += re.abs();
                }
                s
            })
            .fold(T::zero(), |m, s| m.max(s))
            .max(self.base_norm * T::epsilon())
    }

    /// Solves `(A + sI) v = w`.
    pub fn shifted_solve(&mut self, s: T, w: &[T]) -> Result<Vec<T>> {
        self.real_solve(s, w, false)
    }

    /// Solves `(Aᵀ + sI) v = w` with the same factorization.
    pub fn shifted_solve_transpose(&mut self, s: T, w: &[T]) -> Result<Vec<T>> {
        self.real_solve(s, w, true)
    }

    fn real_solve(&mut self, s: T, w: &[T], transpose: bool) -> Result<Vec<T>> {
        let n = self.base.dim();
        if w.len() != n {
            return Err(Error::DimensionMismatch {
                context: "shifted_solve",
                expected: n,
                found: w.len(),
            });
        }
        let f = self.factorize_shifted(s)?;
        let start = Instant::now();
        let v = f.solve(w, transpose);
        self.stats.solve_seconds += start.elapsed().as_secs_f64();
        self.stats.solves += 1;
        if self.verify {
            let mut r = if transpose {
                self.base.matvec_transpose(&v)?
            } else {
                self.base.matvec(&v)?
            };
            for ((ri, &vi), &wi) in r.iter_mut().zip(&v).zip(w) {
                *ri += s * vi - wi;
            }
            self.record_backward_error(norm2(&r), norm2(w));
        }
        Ok(v)
    }

    /// Solves `(op(A) + (re + i·im) I) x = b` for complex `b = b_re + i·b_im`,
    /// where `op(A)` is `A` or `Aᵀ`. Returns `(x_re, x_im)`.
    pub fn complex_solve(
        &mut self,
        re: T,
        im: T,
        b_re: &[T],
        b_im: &[T],
        transpose: bool,
    ) -> Result<(Vec<T>, Vec<T>)> {
        let n = self.base.dim();
        if b_re.len() != n || b_im.len() != n {
            return Err(Error::DimensionMismatch {
                context: "complex_solve",
                expected: n,
                found: b_re.len().min(b_im.len()),
            });
        }
        if im == T::zero() {
            let x_re = self.real_solve(re, b_re, transpose)?;
            let x_im = self.real_solve(re, b_im, transpose)?;
            return Ok((x_re, x_im));
        }
        // the doubled matrix for shift (re, -im) transposes into the doubled
        // matrix of Aᵀ with shift (re, im)
        let key_im = if transpose { -im } else { im };
        let f = self.factorize_complex(re, key_im)?;
        let mut rhs = vec![T::zero(); 2 * n];
        for i in 0..n {
            rhs[2 * i] = b_re[i];
            rhs[2 * i + 1] = b_im[i];
        }
        let start = Instant::now();
        let x = f.solve(&rhs, transpose);
        self.stats.solve_seconds += start.elapsed().as_secs_f64();
        self.stats.solves += 1;
        let x_re: Vec<T> = (0..n).map(|i| x[2 * i]).collect();
        let x_im: Vec<T> = (0..n).map(|i| x[2 * i + 1]).collect();
        if self.verify {
            let (ar, ai) = if transpose {
                (self.base.matvec_transpose(&x_re)?, self.base.matvec_transpose(&x_im)?)
            } else {
                (self.base.matvec(&x_re)?, self.base.matvec(&x_im)?)
            };
            let mut r = Vec::with_capacity(2 * n);
            for i in 0..n {
                r.push(ar[i] + re * x_re[i] - im * x_im[i] - b_re[i]);
                r.push(ai[i] + re * x_im[i] + im * x_re[i] - b_im[i]);
            }
            self.record_backward_error(norm2(&r), norm2(&rhs));
        }
        Ok((x_re, x_im))
    }

    fn record_backward_error(&mut self, residual: T, rhs: T) {
        let rel = if rhs > T::zero() {
            (residual / rhs).as_f64()
        } else {
            residual.as_f64()
        };
        let cur = self.stats.max_backward_error.unwrap_or(0.0);
        self.stats.max_backward_error = Some(cur.max(rel));
    }
}
