#![allow(dead_code)]

use lw_core::linalg::{self, CMat};
use lw_core::C64;
use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_c(r: &mut ChaCha8Rng) -> C64 {
    C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn random_mat(r: &mut ChaCha8Rng, d: usize) -> CMat {
    CMat::from_fn(d, |_, _| random_c(r))
}

pub fn random_hermitian(r: &mut ChaCha8Rng, d: usize) -> CMat {
    let a = random_mat(r, d);
    (&a + &a.adjoint()).scale(0.5)
}

pub fn random_unit(r: &mut ChaCha8Rng, d: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..d).map(|_| random_c(r)).collect();
    linalg::normalize(&mut v);
    v
}

/// Eigenvectors of a random Hermitian matrix, from nalgebra.
pub fn random_unitary(r: &mut ChaCha8Rng, d: usize) -> CMat {
    let h = to_na(&random_hermitian(r, d));
    let e = h.symmetric_eigen();
    from_na(&e.eigenvectors)
}

pub fn to_na(m: &CMat) -> DMatrix<Complex<f64>> {
    let d = m.dim();
    DMatrix::from_fn(d, d, |i, j| Complex::new(m[(i, j)].re, m[(i, j)].im))
}

pub fn from_na(m: &DMatrix<Complex<f64>>) -> CMat {
    CMat::from_fn(m.nrows(), |i, j| C64::new(m[(i, j)].re, m[(i, j)].im))
}

/// Ascending eigenvalues from nalgebra.
pub fn na_eigenvalues(m: &CMat) -> Vec<f64> {
    let mut v: Vec<f64> = to_na(m).symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn na_trace_norm(m: &CMat) -> f64 {
    to_na(m).singular_values().iter().sum()
}

pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
