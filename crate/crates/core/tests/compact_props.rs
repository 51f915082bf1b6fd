use opstar::compactop::{
    eigenvalues_descending, grid_nodes, kernel_operator, min_kernel_eigenvalue, multiplication_operator,
    named_kernel, truncation_approximate_unit, volterra_operator, GridOperator,
};
use opstar::funcalc::{borel_calculus, ScalarFunction};
use opstar::linalg::{operator_norm, vector};
use opstar::random;
use opstar::spectral::eigenvalues;
use opstar::{ToleranceConfig, C64};
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn symmetric_kernels_are_self_adjoint(a in -2.0f64..2.0, b in -2.0f64..2.0, n in 2usize..=40) {
        let t = kernel_operator(move |s, t| C64::new((a * s * t).cos() + b * (s + t), 0.0), n).unwrap();
        prop_assert!(t.matrix.is_hermitian(1e-14));
        prop_assert!(eigenvalues(&t.matrix, &cfg()).unwrap().iter().all(|z| z.im.abs() <= 1e-12));
    }

    #[test]
    fn lipschitz_kernels_give_equicontinuous_images(seed in any::<u64>(), n in 2usize..=40) {
        // |∂K/∂s| ≤ 3 for K(s, t) = sin(3s·t) + t
        let lip = 3.0;
        let t = kernel_operator(|s, t| C64::new((3.0 * s * t).sin() + t, 0.0), n).unwrap();
        let f: Vec<C64> = random::vector(&mut random::rng(seed), n);
        let sup = f.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let image = t.matrix.apply(&f);
        let nodes = grid_nodes(n);
        for i in 0..n {
            for j in 0..n {
                let bound = lip * (nodes[i] - nodes[j]).abs() * sup;
                prop_assert!((image[i] - image[j]).norm() <= bound + 1e-12);
            }
        }
    }

    #[test]
    fn borel_calculus_of_multiplication_operators(seed in any::<u64>(), n in 1usize..=12) {
        let values = random::vector(&mut random::rng(seed), n);
        let m = multiplication_operator(&values).unwrap();
        let g = ScalarFunction::new("g", |z: C64| C64::new(z.re.floor(), z.im.abs()));
        let expected = multiplication_operator(&values.iter().map(|&z| g.eval(z)).collect::<Vec<_>>()).unwrap();
        prop_assert!(borel_calculus(&m.matrix, &g, &cfg()).unwrap().distance(&expected.matrix) <= 1e-10);
    }

    #[test]
    fn truncation_residuals_decrease(seed in any::<u64>(), n in 2usize..=16) {
        let t = GridOperator::custom(random::matrix(&mut random::rng(seed), n));
        let residuals: Vec<f64> = (1..=n).map(|k| truncation_approximate_unit(&t, k, &cfg()).unwrap()).collect();
        prop_assert!(residuals.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        prop_assert_eq!(residuals[n - 1], 0.0);
        prop_assert!(residuals[0] <= operator_norm(&t.matrix) + 1e-12);
    }
}

#[test]
fn min_kernel_spectrum_decays_like_the_analytic_one() {
    let t = kernel_operator(named_kernel("min").unwrap(), 400).unwrap();
    let values = eigenvalues_descending(&t, &cfg()).unwrap();
    for k in 1..=5 {
        let reference = min_kernel_eigenvalue(k);
        assert!((values[k - 1] - reference).abs() <= 0.01 * reference, "k = {k}");
    }
    assert!(values.windows(2).all(|w| w[1] <= w[0]));
    assert!(*values.last().unwrap() < cfg().rank_tol.sqrt());
}

#[test]
fn volterra_radius_and_norm() {
    let mut previous = f64::INFINITY;
    for n in [25, 50, 100, 200] {
        let v = volterra_operator(n).unwrap();
        let radius = eigenvalues(&v.matrix, &cfg()).unwrap().iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(radius <= 2.0 / n as f64);
        assert!(radius < previous);
        previous = radius;
        assert!(operator_norm(&v.matrix) <= 1.0);
    }
    let v = volterra_operator(100).unwrap();
    let ones = vec![C64::new(1.0, 0.0); 100];
    let image = v.matrix.apply(&ones);
    let err: Vec<C64> = image.iter().zip(grid_nodes(100)).map(|(z, s)| z - s).collect();
    assert!(vector::norm(&err) <= 1e-12);
}
