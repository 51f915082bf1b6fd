use opstar::linalg::{operator_norm, ZERO};
use opstar::random;
use opstar::spectral::{eigenvalues, multiset_distance, spectral_radius_gelfand, spectrum};
use opstar::{Matrix, ToleranceConfig, C64};
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn near_some(z: C64, candidates: &[C64], tol: f64) -> bool {
    candidates.iter().any(|c| (z - c).norm() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn products_in_either_order_share_spectra(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = random::rng(seed);
        let a = random::matrix(&mut rng, n);
        let b = random::matrix(&mut rng, n);
        let ab = eigenvalues(&(&a * &b), &cfg()).unwrap();
        let ba = eigenvalues(&(&b * &a), &cfg()).unwrap();
        let scale = 1.0 + operator_norm(&a) * operator_norm(&b);
        prop_assert!(multiset_distance(&ab, &ba).unwrap() <= cfg().eig_tol * scale);
    }

    #[test]
    fn radius_bounded_by_norm(seed in any::<u64>(), n in 1usize..=6) {
        let a = random::matrix(&mut random::rng(seed), n);
        let r = spectrum(&a, &cfg()).unwrap().max_modulus();
        prop_assert!(r <= operator_norm(&a) * (1.0 + 1e-10));
    }

    #[test]
    fn radius_equals_norm_for_normal(seed in any::<u64>(), n in 1usize..=6) {
        let a = random::normal(&mut random::rng(seed), n);
        let norm = operator_norm(&a);
        let r = spectrum(&a, &cfg()).unwrap().max_modulus();
        let g = spectral_radius_gelfand(&a, &cfg()).unwrap();
        prop_assert!((r - norm).abs() <= 1e-6 * norm);
        prop_assert!((g - norm).abs() <= 1e-6 * norm);
    }

    #[test]
    fn gelfand_matches_eigenvalues(seed in any::<u64>(), n in 1usize..=6) {
        let a = random::matrix(&mut random::rng(seed), n);
        let r = spectrum(&a, &cfg()).unwrap().max_modulus();
        let g = spectral_radius_gelfand(&a, &cfg()).unwrap();
        prop_assert!((g - r).abs() <= 1e-3 * (1.0 + operator_norm(&a)));
    }

    #[test]
    fn commuting_normal_pairs(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = random::rng(seed);
        let w = random::unitary(&mut rng, n);
        let alpha: Vec<C64> = (0..n).map(|_| random::complex_normal(&mut rng)).collect();
        let beta: Vec<C64> = (0..n).map(|_| random::complex_normal(&mut rng)).collect();
        let conj = |d: &[C64]| &(&w * &Matrix::from_diag(d)) * &w.adjoint();
        let (a, b) = (conj(&alpha), conj(&beta));
        let sums: Vec<C64> = alpha.iter().flat_map(|x| beta.iter().map(move |y| x + y)).collect();
        let prods: Vec<C64> = alpha.iter().flat_map(|x| beta.iter().map(move |y| x * y)).collect();
        let tol = cfg().eig_tol * (1.0 + a.frobenius_norm() + b.frobenius_norm()).powi(2);
        for z in eigenvalues(&(&a + &b), &cfg()).unwrap() {
            prop_assert!(near_some(z, &sums, tol));
        }
        for z in eigenvalues(&(&a * &b), &cfg()).unwrap() {
            prop_assert!(near_some(z, &prods, tol));
        }
    }

    #[test]
    fn unitary_spectrum_on_circle(seed in any::<u64>(), n in 1usize..=6) {
        let u = random::unitary(&mut random::rng(seed), n);
        for z in eigenvalues(&u, &cfg()).unwrap() {
            prop_assert!((z.norm() - 1.0).abs() <= cfg().eig_tol);
        }
    }

    #[test]
    fn strictly_triangular_is_quasinilpotent(seed in any::<u64>(), n in 1usize..=6) {
        let a = random::matrix(&mut random::rng(seed), n);
        let strict = Matrix::from_fn(n, |i, j| if j > i { a[(i, j)] } else { ZERO });
        prop_assert!(eigenvalues(&strict, &cfg()).unwrap().iter().all(|z| *z == ZERO));
        prop_assert_eq!(spectral_radius_gelfand(&strict, &cfg()).unwrap(), 0.0);
        prop_assert_eq!(strict.powi(n as u32), Matrix::zeros(n));
    }
}

#[test]
fn nilpotent_under_similarity() {
    let mut rng = random::rng(7);
    let n = 4;
    let shift = Matrix::from_fn(n, |i, j| if j == i + 1 { C64::new(1.0, 0.0) } else { ZERO });
    let w = random::unitary(&mut rng, n);
    let a = &(&w * &shift) * &w.adjoint();
    let pts = eigenvalues(&a, &cfg()).unwrap();
    assert!(pts.iter().all(|z| z.norm() <= 1e-6));
    // rounding leaves ‖a⁴‖ near 1e-16, so the power sequence sees radius ~1e-4
    assert!(spectral_radius_gelfand(&a, &cfg()).unwrap() <= 1e-3);
}

#[test]
fn normal_with_zero_spectrum_is_zero() {
    let z = Matrix::zeros(3);
    assert!(z.is_normal(1e-12));
    assert!(eigenvalues(&z, &cfg()).unwrap().iter().all(|p| *p == ZERO));
    assert_eq!(spectral_radius_gelfand(&z, &cfg()).unwrap(), 0.0);
}
