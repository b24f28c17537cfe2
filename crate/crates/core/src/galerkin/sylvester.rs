use crate::dense::{real_schur, DenseMatrix, SchurBlock, SchurForm};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::ShiftedFactorCache;

/// Solves `op(A)·P + P·Bᵀ = −G` for `P` (`n×r`), where `op(A)` is `A` or
/// `Aᵀ` and `A` is the cache's base operator.
///
/// With `Bᵀ = Q T Qᵀ` the unknown `Y = P Q` is found column by column from
/// shifted solves with the diagonal entries of `T`. Conjugate pairs in 2×2
/// blocks are solved through one complex shift in real doubled form. `B`
/// need not be stable; a shift hitting the spectrum of `−A` fails with
/// [`Error::SingularShift`].
pub fn solve_projected_sylvester<T: Scalar>(
    cache: &mut ShiftedFactorCache<'_, T>,
    b: &DenseMatrix<T>,
    g: &DenseMatrix<T>,
    transpose_a: bool,
) -> Result<DenseMatrix<T>> {
    let schur = real_schur(&b.transpose())?;
    solve_projected_sylvester_with(cache, &schur, g, transpose_a)
}

/// Same as [`solve_projected_sylvester`] with a precomputed Schur form of `Bᵀ`.
pub fn solve_projected_sylvester_with<T: Scalar>(
    cache: &mut ShiftedFactorCache<'_, T>,
    bt_schur: &SchurForm<T>,
    g: &DenseMatrix<T>,
    transpose_a: bool,
) -> Result<DenseMatrix<T>> {
    let n = cache.base().dim();
    let r = bt_schur.dim();
    if g.rows() != n || g.cols() != r {
        return Err(Error::DimensionMismatch {
            context: "solve_projected_sylvester right-hand side",
            expected: n * r,
            found: g.rows() * g.cols(),
        });
    }
    let q = &bt_schur.q_factor;
    let t = &bt_schur.t_factor;
    let h = g.matmul(q)?;
    let mut y: Vec<Vec<T>> = Vec::with_capacity(r);

    // right-hand side of column j: −h_j − Σ_{i<start} T_ij y_i
    let rhs = |y: &[Vec<T>], j: usize, start: usize| -> Vec<T> {
        let mut out: Vec<T> = (0..n).map(|k| -h[(k, j)]).collect();
        for (i, yi) in y.iter().enumerate().take(start) {
            let tij = t[(i, j)];
            if tij != T::zero() {
                for (o, &v) in out.iter_mut().zip(yi) {
                    *o -= tij * v;
                }
            }
        }
        out
    };

    for block in bt_schur.blocks() {
        match block {
            SchurBlock::Real { index, value } => {
                let f = rhs(&y, index, index);
                let col = if transpose_a {
                    cache.shifted_solve_transpose(value, &f)?
                } else {
                    cache.shifted_solve(value, &f)?
                };
                y.push(col);
            }
            SchurBlock::Complex { index: j, re, im } => {
                let r0 = rhs(&y, j, j);
                let r1 = rhs(&y, j + 1, j);
                let a = t[(j, j)];
                let b = t[(j, j + 1)];
                // eigenvector of the block for re + i·im is (b, re − a + i·im)
                let d = re - a;
                let v_re: Vec<T> = r0.iter().zip(&r1).map(|(&x0, &x1)| b * x0 + d * x1).collect();
                let v_im: Vec<T> = r1.iter().map(|&x1| im * x1).collect();
                let (xr, xi) = cache.complex_solve(re, im, &v_re, &v_im, transpose_a)?;
                // [y_j, y_{j+1}] = [xr, xi] · [[b, 0], [d, im]]⁻¹
                let bim = b * im;
                let c0: Vec<T> = xr.iter().zip(&xi).map(|(&p, &q)| (p * im - q * d) / bim).collect();
                let c1: Vec<T> = xi.iter().map(|&q| q / im).collect();
                y.push(c0);
                y.push(c1);
            }
        }
    }

    let y = DenseMatrix::from_columns(n, &y)?;
    y.matmul(&q.transpose())
}
