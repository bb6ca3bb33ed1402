mod common;

use common::*;
use fibertor::covers::{
    build_cover, coinvariant_cover_spec, enumerate_lifts, lift_automorphism, AbelianQuotient, CoverSpec,
};
use fibertor::{IntMatrix, SurfacePresentation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random abelian quotient of the base with group order at most `max`.
fn random_quotient<R: Rng>(rng: &mut R, rank: usize, max: u64) -> AbelianQuotient {
    let k = rng.gen_range(1..=2usize);
    let mut moduli = Vec::new();
    let mut order = 1;
    for _ in 0..k {
        let m = rng.gen_range(2..=6u64);
        if order * m <= max {
            moduli.push(m);
            order *= m;
        }
    }
    if moduli.is_empty() {
        moduli.push(2);
    }
    let images = (0..rank)
        .map(|_| moduli.iter().map(|&m| rng.gen_range(0..m as i64)).collect())
        .collect();
    AbelianQuotient::new(moduli, images).unwrap()
}

fn expected_rank(base: &SurfacePresentation, d: usize) -> usize {
    if base.is_closed() {
        d * base.euler_characteristic_abs() + 2
    } else {
        d * (base.rank - 1) + 1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn free_base_rank_formula(seed in any::<u64>(), rank in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = SurfacePresentation::free(rank).unwrap();
        let spec = CoverSpec::abelian(base, random_quotient(&mut rng, rank, 36)).unwrap();
        let c = build_cover(&spec).unwrap();
        prop_assert_eq!(c.degree(), spec.degree);
        prop_assert_eq!(c.h1_rank(), spec.degree * (rank - 1) + 1);
        prop_assert_eq!(c.schreier_generators().len(), c.h1_rank());
    }

    #[test]
    fn closed_base_rank_formula(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = SurfacePresentation::closed(2).unwrap();
        let spec = CoverSpec::abelian(base, random_quotient(&mut rng, 4, 8)).unwrap();
        let c = build_cover(&spec).unwrap();
        prop_assert_eq!(c.h1_rank(), expected_rank(&base, spec.degree));
        let omega = c.intersection_form().unwrap();
        prop_assert!(omega.is_unimodular());
        prop_assert_eq!(omega.transpose(), -&omega);
    }

    #[test]
    fn lift_of_square_is_square_of_lift(seed in any::<u64>(), rank in 2usize..=3, n in 2u64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_automorphism(&mut rng, rank, 5);
        let base = *a.domain();
        let c = build_cover(&CoverSpec::homology(base, n).unwrap()).unwrap();
        let la = lift_automorphism(&a, &c).unwrap().matrix;
        let laa = lift_automorphism(&a.compose(&a).unwrap(), &c).unwrap().matrix;
        prop_assert_eq!(laa, &la * &la);
    }

    #[test]
    fn coinvariant_covers_always_lift(seed in any::<u64>(), rank in 2usize..=3, n in 2u64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_automorphism(&mut rng, rank, 6);
        let spec = coinvariant_cover_spec(&a, n).unwrap();
        prop_assume!(spec.degree <= 64);
        let c = build_cover(&spec).unwrap();
        let l = lift_automorphism(&a, &c).unwrap();
        prop_assert!(l.matrix.is_unimodular());
        prop_assert_eq!(l.matrix.rows(), c.h1_rank());
    }

    #[test]
    fn deck_orders_divide_exponent(seed in any::<u64>(), rank in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = SurfacePresentation::free(rank).unwrap();
        let c = build_cover(&CoverSpec::abelian(base, random_quotient(&mut rng, rank, 24)).unwrap()).unwrap();
        let e = c.deck_group_exponent().unwrap();
        let decks = c.deck_transformations().unwrap();
        prop_assert_eq!(decks.len(), c.degree());
        let id = IntMatrix::identity(c.h1_rank());
        for (_, g) in &decks {
            prop_assert_eq!(g.power(e).unwrap(), id.clone());
        }
    }

    #[test]
    fn enumerated_lifts_share_spectral_radius(seed in any::<u64>(), rank in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_automorphism(&mut rng, rank, 5);
        let c = build_cover(&CoverSpec::homology(*a.domain(), 2).unwrap()).unwrap();
        let l = lift_automorphism(&a, &c).unwrap();
        let radii: Vec<f64> = enumerate_lifts(&l)
            .unwrap()
            .iter()
            .map(|m| {
                let (lo, hi) = m.char_poly().unwrap().spectral_radius_bounds().unwrap();
                0.5 * (lo + hi)
            })
            .collect();
        for r in &radii {
            prop_assert!((r - radii[0]).abs() <= 1e-9 * radii[0].max(1.0), "{radii:?}");
        }
    }
}

#[test]
fn genus_two_homology_cover() {
    let base = SurfacePresentation::closed(2).unwrap();
    let c = build_cover(&CoverSpec::homology(base, 2).unwrap()).unwrap();
    assert_eq!(c.degree(), 16);
    assert_eq!(c.h1_rank(), 34);
}

#[test]
fn permutation_cover_rank() {
    // A non-normal degree-3 cover of F₂.
    let base = SurfacePresentation::free(2).unwrap();
    let spec = CoverSpec::permutation(base, vec![vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
    let c = build_cover(&spec).unwrap();
    assert_eq!(c.h1_rank(), 4);
    assert!(c.deck_transformations().is_err());
}
