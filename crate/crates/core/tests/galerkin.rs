mod common;

use alr_lyap::dense::DenseMatrix;
use alr_lyap::galerkin::*;
use alr_lyap::oracle::{dense_lyapunov, dense_sylvester, lyapunov_residual, sylvester_residual};
use alr_lyap::problems::{convdiff2d, laplace2d};
use alr_lyap::sparse::{CsrMatrix, ShiftedFactorCache};
use common::*;

fn ones(n: usize) -> Vec<f64> {
    vec![1.0; n]
}

#[test]
fn cheap_residual_matches_dense_forms() {
    let a: CsrMatrix<f64> = laplace2d(6);
    let ad = a.to_dense();
    let mut g = rng(1);
    for r in [1, 3, 6] {
        let y0 = random_vec(&mut g, a.dim());
        let s = random_state(&a, &y0, r, &mut g);
        let cheap = residual_norm(&s).unwrap();
        let u = s.basis();
        let uz = u.matmul(s.z().unwrap()).unwrap();
        let x = uz.matmul(&u.transpose()).unwrap();
        let lyap = lyapunov_residual(&ad, &x, &y0).unwrap();
        assert!((cheap - lyap).abs() <= 1e-9 * lyap, "r={r}: {cheap} vs {lyap}");

        let rhs = DenseMatrix::column_vector(&y0).matmul(&DenseMatrix::column_vector(s.c0()).transpose()).unwrap();
        let syl = sylvester_residual(&ad, s.b(), &uz, &rhs).unwrap();
        assert!((cheap - 2f64.sqrt() * syl).abs() <= 1e-9 * cheap);
    }
}

#[test]
fn projected_sylvester_matches_oracle() {
    let a: CsrMatrix<f64> = convdiff2d(5);
    let ad = a.to_dense();
    let mut g = rng(2);
    let b = random_stable(&mut g, 4, 0.5);
    let rhs = random_matrix(&mut g, a.dim(), 4);
    let mut cache = ShiftedFactorCache::new(&a);
    let p = solve_projected_sylvester(&mut cache, &b, &rhs, false).unwrap();
    let want = dense_sylvester(&ad, &b, &rhs).unwrap();
    assert!(rel_err(&p, &want) < 1e-10);

    // transposed operator
    let pt = solve_projected_sylvester(&mut cache, &b, &rhs, true).unwrap();
    let want = dense_sylvester(&ad.transpose(), &b, &rhs).unwrap();
    assert!(rel_err(&pt, &want) < 1e-10);
}

#[test]
fn reduced_functional_for_minus_identity() {
    let a = CsrMatrix::<f64>::from_diagonal(&[-1.0; 4]);
    let mut s = alr_lyap::galerkin::ProjectionState::new(&a, &[1.0, 0.0, 0.0, 0.0]).unwrap();
    s.solve_gramian().unwrap();
    let mut cache = ShiftedFactorCache::new(&a);
    let f = functional_value(&s, &mut cache, Some(0.5)).unwrap();
    assert!((f.reduced + 0.5).abs() < 1e-14);
    assert!(f.total().unwrap().abs() < 1e-14);
}

#[test]
fn gradient_matches_finite_differences() {
    let a: CsrMatrix<f64> = laplace2d(4);
    let mut g = rng(3);
    let y0 = random_vec(&mut g, a.dim());
    let s = random_state(&a, &y0, 3, &mut g);
    let mut cache = ShiftedFactorCache::new(&a);
    let grad = functional_gradient(&s, &mut cache).unwrap();
    let u = s.basis();
    let f = |u: &DenseMatrix<f64>, cache: &mut ShiftedFactorCache<'_, f64>| {
        ProjectedSystem::from_basis(&a, &y0, u).unwrap().reduced_functional(cache).unwrap()
    };
    for _ in 0..3 {
        let d = random_matrix(&mut g, u.rows(), u.cols());
        let h = 1e-5;
        let fd = (f(&u.add(&d.scaled(h)).unwrap(), &mut cache) - f(&u.sub(&d.scaled(h)).unwrap(), &mut cache)) / (2.0 * h);
        let exact: f64 = (0..u.cols()).map(|j| grad.column(j).iter().zip(d.column(j)).map(|(x, y)| x * y).sum::<f64>()).sum();
        assert!((fd - exact).abs() <= 1e-5 * exact.abs().max(1e-8), "{fd} vs {exact}");
    }
}

#[test]
fn functional_bounds_hold() {
    let a: CsrMatrix<f64> = laplace2d(4);
    let ad = a.to_dense();
    let mut g = rng(4);
    let bound = BoundConstant::new(&ad).unwrap();
    let mut cache = ShiftedFactorCache::new(&a);
    for r in 1..=4 {
        let y0 = ones(a.dim());
        let s = random_state(&a, &y0, r, &mut g);
        let x = dense_lyapunov(&ad, &y0).unwrap();
        let fv = functional_value(&s, &mut cache, Some(x.trace())).unwrap();
        let f = fv.total().unwrap();
        assert!(f >= -1e-10);
        let c = bound.evaluate(s.b()).unwrap();
        assert!(f <= c * residual_norm(&s).unwrap() + 1e-8);
    }
}

#[test]
fn bound_constant_rejects_large_operators() {
    let a = DenseMatrix::<f64>::identity(BOUND_MAX_DIM + 1).scaled(-1.0);
    assert!(BoundConstant::new(&a).is_err());
}

#[test]
fn extend_updates_projection_consistently() {
    let a: CsrMatrix<f64> = convdiff2d(4);
    let mut g = rng(5);
    let y0 = random_vec(&mut g, a.dim());
    let s = random_state(&a, &y0, 5, &mut g);
    let sys = ProjectedSystem::from_basis(&a, &y0, &s.basis()).unwrap();
    assert!(rel_err(s.b(), &sys.b) < 1e-13);
    let utu = s.basis().tr_matmul(&s.basis()).unwrap();
    assert!(rel_err(&utu, &DenseMatrix::identity(5)) < 1e-13);
}
