mod common;

use alr_lyap::dense::*;
use alr_lyap::oracle::{dense_lyapunov, dense_sylvester, symmetric_eigen};
use alr_lyap::Error;
use common::*;

#[test]
fn schur_reconstructs_and_is_orthogonal() {
    let mut g = rng(10);
    for n in [1, 2, 5, 9, 16] {
        let m = random_matrix(&mut g, n, n);
        let s = real_schur(&m).unwrap();
        let q = &s.q_factor;
        let back = q.matmul(&s.t_factor).unwrap().matmul(&q.transpose()).unwrap();
        assert!(rel_err(&back, &m) < 1e-12, "n={n}");
        assert!(rel_err(&q.tr_matmul(q).unwrap(), &DenseMatrix::identity(n)) < 1e-12);
        // quasi-triangular: nothing below the first subdiagonal
        for i in 0..n {
            for j in 0..i.saturating_sub(1) {
                assert_eq!(s.t_factor[(i, j)], 0.0);
            }
        }
        let trace: f64 = s.eigenvalues().iter().map(|e| e.0).sum();
        assert!((trace - m.trace()).abs() < 1e-10 * (1.0 + m.frobenius_norm()));
    }
}

#[test]
fn schur_eigenvalues_of_symmetric_match_jacobi() {
    let mut g = rng(11);
    let m = random_matrix(&mut g, 8, 8);
    let sym = m.add(&m.transpose()).unwrap();
    let mut schur: Vec<f64> = real_schur(&sym).unwrap().eigenvalues().iter().map(|e| e.0).collect();
    schur.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (jac, _) = symmetric_eigen(&sym).unwrap();
    for (a, b) in schur.iter().zip(&jac) {
        assert!((a - b).abs() < 1e-11);
    }
}

#[test]
fn rotation_has_complex_pair() {
    let m = DenseMatrix::<f64>::from_rows(&[&[-1.0, 2.0], &[-2.0, -1.0]]);
    let mut e = real_schur(&m).unwrap().eigenvalues();
    e.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    assert!((e[0].0 + 1.0).abs() < 1e-14 && (e[0].1 + 2.0).abs() < 1e-14);
    assert!((e[1].1 - 2.0).abs() < 1e-14);
}

#[test]
fn singular_values_match_gram_eigenvalues() {
    let mut g = rng(12);
    let m = random_matrix(&mut g, 9, 4);
    let sv = singular_values(&m);
    let (ev, _) = symmetric_eigen(&m.tr_matmul(&m).unwrap()).unwrap();
    let mut want: Vec<f64> = ev.iter().map(|x| x.max(0.0).sqrt()).collect();
    want.reverse();
    for (a, b) in sv.iter().zip(&want) {
        assert!((a - b).abs() < 1e-12 * want[0]);
    }
    // wide input gives the same values
    let svt = singular_values(&m.transpose());
    for (a, b) in sv.iter().zip(&svt) {
        assert!((a - b).abs() < 1e-12 * want[0]);
    }
}

#[test]
fn small_lyapunov_matches_oracle() {
    let mut g = rng(13);
    for r in [1, 2, 5, 12] {
        let b = random_stable(&mut g, r, 0.1);
        let c = random_vec(&mut g, r);
        let z = solve_small_lyapunov(&b, &{
            let cv = DenseMatrix::column_vector(&c);
            cv.matmul(&cv.transpose()).unwrap()
        })
        .unwrap();
        let want = dense_lyapunov(&b, &c).unwrap().x;
        assert!(rel_err(&z, &want) < 1e-10, "r={r}");
    }
}

#[test]
fn small_sylvester_matches_oracle() {
    let mut g = rng(14);
    let a = random_stable(&mut g, 6, 0.2);
    let b = random_stable(&mut g, 3, 0.2);
    let c = random_matrix(&mut g, 6, 3);
    let x = solve_small_sylvester(&a, &b, &c).unwrap();
    assert!(rel_err(&x, &dense_sylvester(&a, &b, &c).unwrap()) < 1e-10);
}

#[test]
fn unstable_matrix_is_rejected() {
    let b = DenseMatrix::<f64>::from_rows(&[&[0.5, 1.0], &[0.0, -1.0]]);
    let c = DenseMatrix::identity(2);
    assert!(matches!(solve_small_lyapunov(&b, &c), Err(Error::UnstableProjection { .. })));
    // still uniquely solvable, so the unchecked path succeeds
    let s = real_schur(&b).unwrap();
    let z = solve_small_lyapunov_unchecked_with(&s, &c).unwrap();
    let res = b.matmul(&z).unwrap().add(&z.matmul(&b.transpose()).unwrap()).unwrap().add(&c).unwrap();
    assert!(res.frobenius_norm() < 1e-13);
}

#[test]
fn lu_solves_and_inverts() {
    let mut g = rng(15);
    let m = random_matrix(&mut g, 7, 7);
    let lu = DenseLu::new(&m).unwrap();
    let inv = lu.inverse().unwrap();
    assert!(rel_err(&m.matmul(&inv).unwrap(), &DenseMatrix::identity(7)) < 1e-12);
    let b = random_vec(&mut g, 7);
    let x = lu.solve(&b).unwrap();
    let mx = m.matvec(&x).unwrap();
    for (u, v) in mx.iter().zip(&b) {
        assert!((u - v).abs() < 1e-12);
    }
    let singular = DenseMatrix::<f64>::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
    assert!(DenseLu::new(&singular).is_err());
}

#[test]
fn gram_schmidt_drops_dependent_columns() {
    let mut g = rng(16);
    let u = random_matrix(&mut g, 10, 3);
    let (q, k) = gram_schmidt_extend(&DenseMatrix::zeros(10, 0), &u, DEFAULT_DROP_TOL).unwrap();
    assert_eq!(k, 3);
    // a combination of existing columns adds nothing
    let combo = u.matmul(&DenseMatrix::column_vector(&[1.0, -2.0, 0.5])).unwrap();
    let (q2, k2) = gram_schmidt_extend(&q, &combo, DEFAULT_DROP_TOL).unwrap();
    assert_eq!((k2, q2.cols()), (0, 3));
    assert!(rel_err(&q.tr_matmul(&q).unwrap(), &DenseMatrix::identity(3)) < 1e-14);
}

#[test]
fn f32_instantiation_works() {
    let b = DenseMatrix::<f64>::from_rows(&[&[-2.0, 1.0], &[0.0, -3.0]]).cast::<f32>();
    let z = solve_small_lyapunov(&b, &DenseMatrix::<f32>::identity(2)).unwrap();
    let res = b.matmul(&z).unwrap().add(&z.matmul(&b.transpose()).unwrap()).unwrap();
    assert!((res[(0, 0)] + 1.0).abs() < 1e-5 && res[(0, 1)].abs() < 1e-5);
}
