use std::sync::Arc;

use opstar::groupalg::{
    convolve, explicit_characters, fourier_transform, involute, left_regular, pontryagin_characters, GroupFunction,
    GroupTable,
};
use opstar::linalg::operator_norm;
use opstar::random::{self, SeededRng};
use opstar::{ToleranceConfig, C64};
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn random_function(rng: &mut SeededRng, group: &Arc<GroupTable>) -> GroupFunction {
    GroupFunction::new(group.clone(), random::vector(rng, group.order())).unwrap()
}

fn groups() -> Vec<Arc<GroupTable>> {
    vec![
        Arc::new(GroupTable::cyclic(6).unwrap()),
        Arc::new(GroupTable::product_of_cyclics(&[2, 3]).unwrap()),
        Arc::new(GroupTable::symmetric3()),
        Arc::new(GroupTable::quaternion()),
    ]
}

fn l_p_norm(f: &GroupFunction, p: u8) -> f64 {
    if p == 1 {
        f.l1_norm()
    } else {
        f.l2_norm()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn youngs_inequality(seed in any::<u64>(), which in 0usize..4, p in 1u8..=2) {
        let mut rng = random::rng(seed);
        let group = &groups()[which];
        let f = random_function(&mut rng, group);
        let g = random_function(&mut rng, group);
        let fg = convolve(&f, &g).unwrap();
        prop_assert!(l_p_norm(&fg, p) <= f.l1_norm() * l_p_norm(&g, p) + 1e-12);
    }

    #[test]
    fn regular_representation_is_contractive(seed in any::<u64>(), which in 0usize..4) {
        let mut rng = random::rng(seed);
        let group = &groups()[which];
        let f = random_function(&mut rng, group);
        prop_assert!(operator_norm(&left_regular(&f)) <= f.l1_norm() + 1e-12);
        let g = random_function(&mut rng, group);
        let product = &left_regular(&f) * &left_regular(&g);
        prop_assert!(product.approx_eq(&left_regular(&convolve(&f, &g).unwrap()), 1e-12));
        prop_assert!(left_regular(&involute(&f)).approx_eq(&left_regular(&f).adjoint(), 1e-12));
    }

    #[test]
    fn delta_at_identity_is_the_unit(seed in any::<u64>(), which in 0usize..4) {
        let group = &groups()[which];
        let f = random_function(&mut random::rng(seed), group);
        let unit = GroupFunction::delta(group.clone(), group.identity()).unwrap();
        prop_assert_eq!(convolve(&unit, &f).unwrap().values().to_vec(), f.values().to_vec());
        prop_assert_eq!(convolve(&f, &unit).unwrap().values().to_vec(), f.values().to_vec());
    }

    #[test]
    fn fourier_is_isometric_onto_sup_norm(seed in any::<u64>(), n in 2usize..=12) {
        let group = Arc::new(GroupTable::cyclic(n).unwrap());
        let f = random_function(&mut random::rng(seed), &group);
        let hat = fourier_transform(&f, &cfg()).unwrap();
        let sup = hat.iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!((operator_norm(&left_regular(&f)) - sup).abs() <= 1e-8);
        let g = random_function(&mut random::rng(seed ^ 1), &group);
        let fg = fourier_transform(&convolve(&f, &g).unwrap(), &cfg()).unwrap();
        let ghat = fourier_transform(&g, &cfg()).unwrap();
        for ((x, y), z) in hat.iter().zip(&ghat).zip(&fg) {
            prop_assert!((x * y - z).norm() <= 1e-10 * (1.0 + z.norm()));
        }
    }
}

#[test]
fn commutativity_transfers_from_the_group() {
    let mut rng = random::rng(3);
    for group in groups() {
        let mut commuting = true;
        for _ in 0..20 {
            let f = random_function(&mut rng, &group);
            let g = random_function(&mut rng, &group);
            let (fg, gf) = (convolve(&f, &g).unwrap(), convolve(&g, &f).unwrap());
            commuting &= fg.distance(&gf) <= 1e-12;
        }
        assert_eq!(commuting, group.is_abelian());
    }
}

#[test]
fn l1_norm_fails_cstar_identity_on_every_nontrivial_group() {
    let mut rng = random::rng(11);
    for group in groups().into_iter().chain([Arc::new(GroupTable::cyclic(2).unwrap())]) {
        let found = (0..1000).any(|_| {
            let f = random_function(&mut rng, &group);
            let ff = convolve(&f, &involute(&f)).unwrap();
            (ff.l1_norm() - f.l1_norm().powi(2)).abs() > 0.01
        });
        assert!(found);
    }
    let trivial = Arc::new(GroupTable::cyclic(1).unwrap());
    let f = GroupFunction::new(trivial, vec![C64::new(2.0, -1.0)]).unwrap();
    let ff = convolve(&f, &involute(&f)).unwrap();
    assert!((ff.l1_norm() - f.l1_norm().powi(2)).abs() <= 1e-12);
}

#[test]
fn computed_characters_match_the_explicit_formula() {
    for factors in [vec![3], vec![12], vec![2, 2], vec![2, 3], vec![4, 2]] {
        let group = Arc::new(GroupTable::product_of_cyclics(&factors).unwrap());
        let computed = pontryagin_characters(&group, &cfg()).unwrap();
        let explicit = explicit_characters(&group).unwrap();
        assert_eq!(computed.len(), group.order());
        for (c, e) in computed.iter().zip(&explicit) {
            for (x, y) in c.values.iter().zip(&e.values) {
                assert!((x - y).norm() <= 1e-10, "{factors:?}");
            }
        }
    }
}
