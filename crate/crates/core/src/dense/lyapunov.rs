//! Bartels–Stewart solvers for small dense Sylvester and Lyapunov equations.

use crate::dense::schur::{real_schur, SchurForm};
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Solves `B Z + Z Bᵀ = -C` for a stable `B` and symmetric `C`.
///
/// The result is explicitly symmetrized.
pub fn solve_small_lyapunov<T: Scalar>(b: &DenseMatrix<T>, c: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let schur = real_schur(b)?;
    solve_small_lyapunov_with(&schur, c)
}

/// Same as [`solve_small_lyapunov`] with a precomputed Schur form of `B`.
pub fn solve_small_lyapunov_with<T: Scalar>(schur: &SchurForm<T>, c: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    schur.require_stable()?;
    let mut z = sylvester_schur(schur, schur, c)?;
    z.symmetrize();
    Ok(z)
}

/// Solves `B Z + Z Bᵀ = -C` without requiring `B` to be stable; only unique
/// solvability (`λᵢ + λⱼ ≠ 0` for all eigenvalue pairs) is needed.
pub fn solve_small_lyapunov_unchecked_with<T: Scalar>(schur: &SchurForm<T>, c: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let eig = schur.eigenvalues();
    let scale = eig.iter().fold(T::zero(), |m, &(re, im)| m.max(re.hypot(im)));
    let floor = T::lit(1e-14) * scale;
    for &(r1, i1) in &eig {
        for &(r2, i2) in &eig {
            if (r1 + r2).hypot(i1 + i2) <= floor {
                return Err(Error::SingularSystem);
            }
        }
    }
    let mut z = sylvester_schur(schur, schur, c)?;
    z.symmetrize();
    Ok(z)
}

/// Solves `A X + X Bᵀ = -C` for small dense `A` (m×m), `B` (k×k), `C` (m×k).
///
/// Requires `spec(A) ∩ spec(-B) = ∅`.
pub fn solve_small_sylvester<T: Scalar>(
    a: &DenseMatrix<T>,
    b: &DenseMatrix<T>,
    c: &DenseMatrix<T>,
) -> Result<DenseMatrix<T>> {
    let sa = real_schur(a)?;
    let sb = real_schur(b)?;
    sylvester_schur(&sa, &sb, c)
}

fn block_ranges<T: Scalar>(schur: &SchurForm<T>) -> Vec<(usize, usize)> {
    let t = &schur.t_factor;
    let n = t.rows();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)] != T::zero() {
            out.push((i, i + 2));
            i += 2;
        } else {
            out.push((i, i + 1));
            i += 1;
        }
    }
    out
}

fn sylvester_schur<T: Scalar>(sa: &SchurForm<T>, sb: &SchurForm<T>, c: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let m = sa.dim();
    let k = sb.dim();
    if c.rows() != m || c.cols() != k {
        return Err(Error::DimensionMismatch {
            context: "small Sylvester right-hand side",
            expected: m * k,
            found: c.rows() * c.cols(),
        });
    }
    let ta = &sa.t_factor;
    let tb = &sb.t_factor;
    // C̃ = Qaᵀ C Qb
    let ct = sa.q_factor.tr_matmul(&c.matmul(&sb.q_factor)?)?;
    let mut x = DenseMatrix::zeros(m, k);

    let rows = block_ranges(sa);
    let cols = block_ranges(sb);
    for &(i0, i1) in rows.iter().rev() {
        for &(j0, j1) in cols.iter().rev() {
            let p = i1 - i0;
            let q = j1 - j0;
            let mut rhs = [T::zero(); 4];
            for r in i0..i1 {
                for cc in j0..j1 {
                    let mut v = -ct[(r, cc)];
                    for kk in i1..m {
                        v -= ta[(r, kk)] * x[(kk, cc)];
                    }
                    for l in j1..k {
                        v -= x[(r, l)] * tb[(cc, l)];
                    }
                    rhs[(r - i0) * q + (cc - j0)] = v;
                }
            }
            // (Ta_ii ⊗ I + I ⊗ Tb_jj) on unknowns ordered (r, c)
            let dim = p * q;
            let mut sys = [[T::zero(); 4]; 4];
            for r in 0..p {
                for cc in 0..q {
                    let row = r * q + cc;
                    for r2 in 0..p {
                        sys[row][r2 * q + cc] += ta[(i0 + r, i0 + r2)];
                    }
                    for c2 in 0..q {
                        sys[row][r * q + c2] += tb[(j0 + cc, j0 + c2)];
                    }
                }
            }
            let sol = solve_tiny(&mut sys, &mut rhs, dim)?;
            for r in 0..p {
                for cc in 0..q {
                    x[(i0 + r, j0 + cc)] = sol[r * q + cc];
                }
            }
        }
    }
    // X = Qa X̃ Qbᵀ
    let out = sa.q_factor.matmul(&x)?.matmul(&sb.q_factor.transpose())?;
    if !out.is_finite() {
        return Err(Error::SingularSystem);
    }
    Ok(out)
}

/// Gaussian elimination with partial pivoting on a system of size ≤ 4.
fn solve_tiny<T: Scalar>(a: &mut [[T; 4]; 4], b: &mut [T; 4], n: usize) -> Result<[T; 4]> {
    let scale = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .fold(T::zero(), |m, (i, j)| m.max(a[i][j].abs()));
    let tiny = T::epsilon() * T::epsilon() * scale.max(T::min_positive_value());
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[piv][col].abs() <= tiny {
            return Err(Error::SingularSystem);
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for cc in col..n {
                let v = a[col][cc];
                a[r][cc] -= f * v;
            }
            let v = b[col];
            b[r] -= f * v;
        }
    }
    let mut x = [T::zero(); 4];
    for r in (0..n).rev() {
        let mut v = b[r];
        for cc in r + 1..n {
            v -= a[r][cc] * x[cc];
        }
        x[r] = v / a[r][r];
    }
    Ok(x)
}
