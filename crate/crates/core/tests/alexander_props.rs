mod common;

use common::*;
use fibertor::alexander::{
    alexander_polynomial, column_deleted_minor, evaluate_character, fox_alexander_matrix, torus_presentation,
    Character, LaurentPoly,
};
use fibertor::{Automorphism, FreeWord, SurfacePresentation};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `p` as a univariate polynomial normalized to positive leading coefficient
/// and no factor `u`.
fn unit_normal(p: &LaurentPoly) -> Vec<BigInt> {
    let q = p.normalized().as_univariate().expect("one variable");
    let (_, q) = q.strip_zero_roots();
    let c = q.coeffs().to_vec();
    if q.leading().is_negative() {
        c.iter().map(|x| -x).collect()
    } else {
        c
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fox_fundamental_identity(seed in any::<u64>(), rank in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_automorphism(&mut rng, rank, 5);
        let m = fox_alexander_matrix(&torus_presentation(&a).unwrap()).unwrap();
        prop_assert!(m.fox_identity_holds());
    }

    #[test]
    fn one_variable_alexander_is_char_poly(seed in any::<u64>(), rank in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_automorphism(&mut rng, rank, 6);
        let b = a.abelianization_matrix();
        let cp = b.char_poly().unwrap();
        // Coinvariants finite: the only variable left is the stable letter.
        prop_assume!(!cp.eval(&BigInt::from(1)).is_zero());
        let m = fox_alexander_matrix(&torus_presentation(&a).unwrap()).unwrap();
        prop_assert_eq!(m.nvars, 1);
        let delta = alexander_polynomial(&m).unwrap();
        let expected = LaurentPoly::from_terms(1, cp.coeffs().iter().enumerate().map(|(i, c)| (vec![i as i64], c.clone()))).unwrap();
        prop_assert_eq!(unit_normal(&delta), unit_normal(&expected));
    }

    #[test]
    fn trivial_character_recovers_base_action(seed in any::<u64>(), rank in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_automorphism(&mut rng, rank, 6);
        let m = fox_alexander_matrix(&torus_presentation(&a).unwrap()).unwrap();
        let p = evaluate_character(&m, &Character::trivial(m.nvars - 1)).unwrap();
        let cp = fibertor::alexander::ComplexPoly::from_int(&a.abelianization_matrix().char_poly().unwrap());
        prop_assert!(p.max_coeff_distance(&cp) < 1e-8);
    }

    #[test]
    fn characters_decompose_lifted_action(seed in any::<u64>(), rank in 2usize..=3, n in 2u64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_automorphism(&mut rng, rank, 4);
        let gap = character_decomposition_gap(&a, n);
        prop_assume!(gap.is_some_and(|(_, d)| d <= 27));
        let (gap, _) = gap.unwrap();
        prop_assert!(gap < 1e-8, "gap {gap}");
    }
}

fn fixture() -> Automorphism {
    let s1 = Automorphism::braid_generator(3, 0, false).unwrap();
    let s2inv = Automorphism::braid_generator(3, 1, true).unwrap();
    s1.compose(&s2inv).unwrap()
}

#[test]
fn braid_fixture_alexander_polynomial() {
    let m = fox_alexander_matrix(&torus_presentation(&fixture()).unwrap()).unwrap();
    let delta = alexander_polynomial(&m).unwrap();
    // u² − u(1 − x − x⁻¹) + 1, times the unit x.
    let expected = LaurentPoly::from_terms(
        2,
        [(vec![2, 1], 1), (vec![1, 2], 1), (vec![1, 1], -1), (vec![1, 0], 1), (vec![0, 1], 1)]
            .into_iter()
            .map(|(e, c)| (e, BigInt::from(c))),
    )
    .unwrap();
    assert_eq!(delta, expected.normalized());
}

#[test]
fn identity_on_rank_one() {
    let s = SurfacePresentation::free(1).unwrap();
    let a = Automorphism::from_images(s, vec![FreeWord::parse("a").unwrap()]).unwrap();
    let m = fox_alexander_matrix(&torus_presentation(&a).unwrap()).unwrap();
    assert_eq!((m.rows, m.cols), (1, 2));
    assert_eq!(alexander_polynomial(&m).unwrap(), LaurentPoly::one(2));
    let x_minus_one = LaurentPoly::from_terms(2, [(vec![0, 1], BigInt::from(1)), (vec![0, 0], BigInt::from(-1))]).unwrap();
    assert_eq!(column_deleted_minor(&m, 1).unwrap().normalized(), x_minus_one);
}

#[test]
fn braid_fixture_characters() {
    let m = fox_alexander_matrix(&torus_presentation(&fixture()).unwrap()).unwrap();
    let minus_one = evaluate_character(&m, &Character::new(vec![(1, 2)]).unwrap()).unwrap();
    let want = fibertor::alexander::ComplexPoly::from_int(&poly(&[1, -3, 1]));
    assert!(minus_one.max_coeff_distance(&want) < 1e-12);
}
