use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense LU factorization with partial pivoting, `P M = L U`.
#[derive(Clone, Debug)]
pub struct DenseLu<T: Scalar> {
    lu: DenseMatrix<T>,
    perm: Vec<usize>,
}

impl<T: Scalar> DenseLu<T> {
    pub fn new(m: &DenseMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = m.max_abs();
        let tiny = T::epsilon() * T::lit(n.max(1) as f64) * scale * T::epsilon();
        for k in 0..n {
            let mut piv = k;
            let mut best = lu[(k, k)].abs();
            for i in k + 1..n {
                let v = lu[(i, k)].abs();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best <= tiny || best == T::zero() {
                return Err(Error::SingularSystem);
            }
            if piv != k {
                perm.swap(k, piv);
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(piv, j)];
                    lu[(piv, j)] = t;
                }
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f == T::zero() {
                    continue;
                }
                let data = lu.as_mut_slice();
                let (top, bottom) = data.split_at_mut(i * n);
                let upper = &top[k * n..(k + 1) * n];
                let lower = &mut bottom[..n];
                for (x, &y) in lower[k + 1..].iter_mut().zip(&upper[k + 1..]) {
                    *x -= f * y;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.dim();
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                context: "DenseLu::solve",
                expected: n,
                found: b.len(),
            });
        }
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let mut v = x[i];
            for j in 0..i {
                v -= row[j] * x[j];
            }
            x[i] = v;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let mut v = x[i];
            for j in i + 1..n {
                v -= row[j] * x[j];
            }
            x[i] = v / row[i];
        }
        Ok(x)
    }

    /// Solves for every column of `b`.
    pub fn solve_matrix(&self, b: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
        let mut out = DenseMatrix::zeros(b.rows(), b.cols());
        for j in 0..b.cols() {
            let x = self.solve(&b.column(j))?;
            out.set_column(j, &x);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<DenseMatrix<T>> {
        self.solve_matrix(&DenseMatrix::identity(self.dim()))
    }
}
