#![allow(dead_code)]

use alr_lyap::dense::{real_schur, DenseMatrix};
use alr_lyap::galerkin::ProjectionState;
use alr_lyap::sparse::CsrMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DenseMatrix<f64> {
    DenseMatrix::from_row_major(rows, cols, random_vec(rng, rows * cols)).unwrap()
}

/// Random matrix shifted so that its spectral abscissa is at most `-margin`.
pub fn random_stable(rng: &mut ChaCha8Rng, n: usize, margin: f64) -> DenseMatrix<f64> {
    let mut m = random_matrix(rng, n, n);
    let alpha = real_schur(&m).unwrap().spectral_abscissa();
    for i in 0..n {
        m[(i, i)] -= alpha + margin;
    }
    m
}

pub fn rel_err(a: &DenseMatrix<f64>, b: &DenseMatrix<f64>) -> f64 {
    a.sub(b).unwrap().frobenius_norm() / b.frobenius_norm()
}

/// State with `y₀` as first column and `r − 1` random further directions,
/// redrawn until `B` is stable and the Gramian is solved.
pub fn random_state(a: &CsrMatrix<f64>, y0: &[f64], r: usize, rng: &mut ChaCha8Rng) -> ProjectionState<f64> {
    for _ in 0..10_000 {
        let mut s = ProjectionState::new(a, y0).unwrap();
        while s.rank() < r {
            let v = random_vec(rng, a.dim());
            s.extend(a, &[v], 1e-10).unwrap();
        }
        if s.solve_gramian().is_ok() {
            return s;
        }
    }
    panic!("no stable random state found");
}
