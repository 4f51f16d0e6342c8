use ks3_core::bloch::decompose;
use ks3_core::gellmann::{su3, su3_constants};
use ks3_core::ks::{
    ks_difference, ks_difference_raw, ks_expansion, search_violation, spread_bound,
};
use ks3_core::map::catalog;
use ks3_core::numerics::{min_eigenvalue, ComplexMatrix};
use ks3_core::random::{ginibre, haar_unitary, rng_for};
use ks3_core::{
    c3_constant, certify_ks, classify, is_cp, kadison_contraction_check, sample_random_map,
    Budgets, Complex64, RandomMapKind, SearchOptions, UnitalMap,
};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn expansion_matches_direct_difference() {
    let mut rng = rng_for(31, 0);
    let sc = su3_constants();
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let mu: Vec<f64> = (0..8).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let map = UnitalMap::from_diagonal(&mu).unwrap();
        let x = ginibre(&mut rng, 3);
        let e = ks_expansion(&mu, &decompose(&x, su3()).unwrap(), sc).unwrap();
        assert!(e.alpha >= 0.0);
        let direct = ks_difference_raw(&map, &x).unwrap();
        worst = worst.max((&direct - &e.to_matrix(su3())).frobenius_norm());
    }
    assert!(worst <= 1e-10, "{worst:e}");
}

#[test]
fn bound_constants() {
    let c3 = c3_constant(su3_constants());
    assert!((c3 - 4.0 * 6f64.sqrt()).abs() < 1e-12);
    assert!((spread_bound(c3) - 3f64.sqrt() / 18.0).abs() < 1e-15);
}

#[test]
fn search_is_unitarily_covariant() {
    // Δ of the conjugated map at X' = U_2^dag X U_2 is U_1 Δ(X) U_1^dag
    let mut rng = rng_for(32, 0);
    let map = catalog::transposition();
    let (u1, u2) = (haar_unitary(&mut rng, 3), haar_unitary(&mut rng, 3));
    let conj = map.conjugated(&u1, &u2).unwrap();
    for _ in 0..10 {
        let x = ginibre(&mut rng, 3);
        let xp = u2.adjoint().matmul(&x).matmul(&u2);
        let a = min_eigenvalue(&ks_difference(&map, &x).unwrap()).unwrap();
        let b = min_eigenvalue(&ks_difference(&conj, &xp).unwrap()).unwrap();
        assert!((a - b).abs() < 1e-10);
    }
    let opts = SearchOptions::new(64, 5);
    let a = search_violation(&map, &opts).unwrap().best_min_eig;
    let b = search_violation(&conj, &opts).unwrap().best_min_eig;
    assert!(a <= -0.99 && b <= -0.99, "{a} {b}");
}

#[test]
fn unitary_mixtures_are_contractive_and_schwarz() {
    for seed in 0..10 {
        let m = sample_random_map(RandomMapKind::UnitaryMixture { terms: 3 }, seed).unwrap();
        assert!(kadison_contraction_check(&m, 50, seed).unwrap().passed());
        let s = search_violation(&m, &SearchOptions::new(16, seed)).unwrap();
        assert!(!s.found());
    }
}

#[test]
fn hierarchy_is_consistent() {
    let maps = vec![
        catalog::identity(),
        catalog::transposition(),
        catalog::completely_depolarizing(),
        catalog::depolarizing(-0.1).unwrap(),
        catalog::depolarizing(-0.3).unwrap(),
        sample_random_map(RandomMapKind::Kraus { terms: 2 }, 7).unwrap(),
    ];
    for m in &maps {
        let c = classify(m, Budgets::uniform(32), 3, 1e-9, 0).unwrap();
        if c.cp.is_cp() {
            assert!(!c.ks.is_violated(), "{}", m.label());
            assert!(!c.positive.is_violated(), "{}", m.label());
        }
        if c.positive.is_violated() {
            assert!(!c.cp.is_cp(), "{}", m.label());
        }
    }
}

#[test]
fn depolarizing_cp_threshold() {
    for step in 0..=120 {
        let p = -0.2 + 0.01 * step as f64;
        let (cp, min) = is_cp(&catalog::depolarizing(p).unwrap(), 1e-9).unwrap();
        let want = ((1.0 - p) / 3.0).min((1.0 + 8.0 * p) / 3.0);
        assert!((min - want).abs() < 1e-12, "p = {p}");
        assert_eq!(cp, p >= -0.125 - 1e-12, "p = {p}");
    }
}

#[test]
fn certified_examples() {
    let c3 = c3_constant(su3_constants());
    assert!(certify_ks(&[0.5; 8], c3).is_certified());
    assert!(!certify_ks(&[1.0, 1.0, 1.0, 1.0, 0.5, 0.5, 0.5, 0.5], c3).is_certified());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn difference_scales_quadratically(
        entries in prop::collection::vec(-1.0f64..1.0, 18),
        re in -3.0f64..3.0,
        im in -3.0f64..3.0,
        mu in prop::collection::vec(-1.0f64..1.0, 8),
    ) {
        let x = ComplexMatrix::from_fn(3, |i, j| Complex64::new(entries[6 * i + 2 * j], entries[6 * i + 2 * j + 1]));
        let map = UnitalMap::from_diagonal(&mu).unwrap();
        let c = Complex64::new(re, im);
        let lhs = ks_difference(&map, &x.scale(c)).unwrap();
        let rhs = ks_difference(&map, &x).unwrap().scale_real(c.norm_sqr());
        prop_assert!((&lhs - &rhs).frobenius_norm() < 1e-11 * (1.0 + rhs.frobenius_norm()));
    }

    #[test]
    fn difference_is_hermitian(entries in prop::collection::vec(-1.0f64..1.0, 18)) {
        let x = ComplexMatrix::from_fn(3, |i, j| Complex64::new(entries[6 * i + 2 * j], entries[6 * i + 2 * j + 1]));
        let raw = ks_difference_raw(&catalog::transposition(), &x).unwrap();
        prop_assert!(raw.hermiticity_residual() < 1e-13);
    }
}
