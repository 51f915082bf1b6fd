//! Seeded generators for test matrices, vectors and certificates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{vector, Matrix, C64};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_normal(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn vector(rng: &mut impl Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| complex_normal(rng)).collect()
}

pub fn unit_vector(rng: &mut impl Rng, n: usize) -> Vec<C64> {
    let v = vector(rng, n);
    let r = vector::norm(&v);
    vector::scale_real(&v, 1.0 / r)
}

/// Complex Gaussian matrix with entries of variance `1/n`, so `‖a‖ ≈ 2`.
pub fn matrix(rng: &mut impl Rng, n: usize) -> Matrix {
    let s = 1.0 / (n as f64).sqrt();
    Matrix::from_fn(n, |_, _| complex_normal(rng) * s)
}

pub fn hermitian(rng: &mut impl Rng, n: usize) -> Matrix {
    matrix(rng, n).real_part()
}

/// Haar-like unitary from Gram–Schmidt on a Gaussian matrix.
pub fn unitary(rng: &mut impl Rng, n: usize) -> Matrix {
    let cols: Vec<Vec<C64>> = (0..n).map(|_| vector(rng, n)).collect();
    let q = vector::complete_basis(n, &vector::orthonormalize(&cols, 1e-12));
    Matrix::from_columns(n, &q)
}

/// `W·diag(values)·W*` for a random unitary `W`.
pub fn with_spectrum(rng: &mut impl Rng, values: &[C64]) -> Matrix {
    let n = values.len();
    let w = unitary(rng, n);
    &(&w * &Matrix::from_diag(values)) * &w.adjoint()
}

/// Normal matrix with eigenvalues drawn from the complex Gaussian.
pub fn normal(rng: &mut impl Rng, n: usize) -> Matrix {
    let values: Vec<C64> = (0..n).map(|_| complex_normal(rng)).collect();
    with_spectrum(rng, &values)
}

/// Positive semidefinite `b*b`; with `rank < n` the result is singular.
pub fn positive(rng: &mut impl Rng, n: usize, rank: usize) -> Matrix {
    let s = 1.0 / (n as f64).sqrt();
    let b = Matrix::from_fn(n, |i, _| if i < rank { complex_normal(rng) * s } else { C64::new(0.0, 0.0) });
    &b.adjoint() * &b
}

/// Random matrix of the given rank (product of two Gaussian factors).
pub fn with_rank(rng: &mut impl Rng, n: usize, rank: usize) -> Matrix {
    let left = Matrix::from_fn(n, |_, j| if j < rank { complex_normal(rng) } else { C64::new(0.0, 0.0) });
    let right = matrix(rng, n);
    (&left * &right).scale_real(1.0 / (n as f64).sqrt())
}
