mod common;

use alr_lyap::problems::{convdiff2d, laplace2d};
use alr_lyap::sparse::io::{read_matrix_market, read_vector, write_matrix_market, write_vector};
use alr_lyap::sparse::*;
use alr_lyap::Error;
use common::*;

#[test]
fn matvec_matches_dense() {
    let a: CsrMatrix<f64> = convdiff2d(5);
    let ad = a.to_dense();
    let mut g = rng(20);
    let x = random_vec(&mut g, a.dim());
    let y = a.matvec(&x).unwrap();
    let yd = ad.matvec(&x).unwrap();
    let yt = a.matvec_transpose(&x).unwrap();
    let ytd = ad.transpose().matvec(&x).unwrap();
    for i in 0..a.dim() {
        assert!((y[i] - yd[i]).abs() < 1e-10 && (yt[i] - ytd[i]).abs() < 1e-10);
    }
    assert!(a.matvec(&x[1..]).is_err());
}

#[test]
fn from_triplets_sums_duplicates() {
    let a = CsrMatrix::<f64>::from_triplets(2, &[(0, 1, 1.0), (0, 1, 2.0), (1, 0, -1.0)]).unwrap();
    assert_eq!(a.get(0, 1), 3.0);
    assert_eq!(a.nnz(), 2);
    assert!(CsrMatrix::<f64>::from_triplets(2, &[(2, 0, 1.0)]).is_err());
}

#[test]
fn cache_reuses_factorizations() {
    let a: CsrMatrix<f64> = laplace2d(8);
    let mut cache = ShiftedFactorCache::new(&a);
    let w = vec![1.0; a.dim()];
    cache.shifted_solve(-3.0, &w).unwrap();
    cache.shifted_solve(-3.0, &w).unwrap();
    cache.shifted_solve(0.0, &w).unwrap();
    let st = cache.stats();
    assert_eq!((st.factorizations, st.hits, st.solves), (2, 1, 3));
    assert_eq!(cache.len(), 2);
}

#[test]
fn shifted_solves_have_small_backward_error() {
    let a: CsrMatrix<f64> = convdiff2d(12);
    let mut cache = ShiftedFactorCache::new(&a);
    cache.set_verify(true);
    let mut g = rng(21);
    let w = random_vec(&mut g, a.dim());
    for s in [0.0, -5.0, 100.0] {
        let v = cache.shifted_solve(s, &w).unwrap();
        let av = a.matvec(&v).unwrap();
        let r: f64 = av.iter().zip(&v).zip(&w).map(|((x, y), z)| (x + s * y - z).powi(2)).sum::<f64>().sqrt();
        assert!(r <= 1e-10 * w.iter().map(|x| x * x).sum::<f64>().sqrt());
        let vt = cache.shifted_solve_transpose(s, &w).unwrap();
        let atv = a.matvec_transpose(&vt).unwrap();
        for i in 0..a.dim() {
            assert!((atv[i] + s * vt[i] - w[i]).abs() < 1e-9);
        }
    }
    assert!(cache.stats().max_backward_error.unwrap() < 1e-12);
}

#[test]
fn complex_solve_matches_dense_complex_system() {
    let a: CsrMatrix<f64> = convdiff2d(4);
    let ad = a.to_dense();
    let n = a.dim();
    let mut g = rng(22);
    let (br, bi) = (random_vec(&mut g, n), random_vec(&mut g, n));
    let (re, im) = (-2.0, 7.5);
    for transpose in [false, true] {
        let (xr, xi) = ShiftedFactorCache::new(&a).complex_solve(re, im, &br, &bi, transpose).unwrap();
        let m = if transpose { ad.transpose() } else { ad.clone() };
        // (M + (re + i im) I)(xr + i xi) = br + i bi
        let mr = m.matvec(&xr).unwrap();
        let mi = m.matvec(&xi).unwrap();
        for k in 0..n {
            let real = mr[k] + re * xr[k] - im * xi[k];
            let imag = mi[k] + re * xi[k] + im * xr[k];
            assert!((real - br[k]).abs() < 1e-10 && (imag - bi[k]).abs() < 1e-10);
        }
    }
}

#[test]
fn singular_shift_is_reported() {
    let a = CsrMatrix::<f64>::from_diagonal(&[-1.0, -2.0, -3.0]);
    let mut cache = ShiftedFactorCache::new(&a);
    assert!(matches!(cache.shifted_solve(2.0, &[1.0; 3]), Err(Error::SingularShift { .. })));
}

#[test]
fn rcm_narrows_a_scrambled_band() {
    // path graph numbered out of order
    let n = 30;
    let label: Vec<usize> = (0..n).map(|i| (i * 7) % n).collect();
    let mut trip = Vec::new();
    for i in 0..n {
        trip.push((label[i], label[i], -2.0));
        if i + 1 < n {
            trip.push((label[i], label[i + 1], 1.0));
            trip.push((label[i + 1], label[i], 1.0));
        }
    }
    let a = CsrMatrix::<f64>::from_triplets(n, &trip).unwrap();
    let natural = BandOrdering::from_perm(&a, (0..n).collect());
    let chosen = BandOrdering::for_pattern(&a);
    assert!(natural.lower > 1);
    assert_eq!((chosen.lower, chosen.upper), (1, 1));
}

#[test]
fn matrix_market_round_trip() {
    let a: CsrMatrix<f64> = convdiff2d(3);
    let mut buf = Vec::new();
    write_matrix_market(&a, &mut buf).unwrap();
    let b: CsrMatrix<f64> = read_matrix_market(&buf[..]).unwrap();
    assert_eq!(a.to_dense().as_slice(), b.to_dense().as_slice());

    let v = vec![0.1, -2.5e-7, 3.0];
    let mut buf = Vec::new();
    write_vector(&v, &mut buf).unwrap();
    assert_eq!(read_vector::<f64, _>(&buf[..]).unwrap(), v);
}

#[test]
fn matrix_market_symmetric_is_expanded() {
    let text = "%%MatrixMarket matrix coordinate real symmetric\n% comment\n2 2 2\n1 1 -2\n2 1 1\n";
    let a: CsrMatrix<f64> = read_matrix_market(text.as_bytes()).unwrap();
    assert_eq!(a.get(0, 1), 1.0);
    assert_eq!(a.get(1, 0), 1.0);
    assert!(read_matrix_market::<f64, _>("garbage\n".as_bytes()).is_err());
    assert!(read_matrix_market::<f64, _>("%%MatrixMarket matrix coordinate real general\n2 3 0\n".as_bytes()).is_err());
}
