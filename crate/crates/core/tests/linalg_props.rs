mod common;

use common::*;
use fibertor::{cokernel, resultant, smith_normal_form, IntMatrix, IntPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>, e: i64) -> impl Strategy<Value = IntMatrix> {
    (rows, cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-e..=e, r * c).prop_map(move |v| {
            IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

fn square(n: std::ops::RangeInclusive<usize>, e: i64) -> impl Strategy<Value = IntMatrix> {
    n.prop_flat_map(move |n| {
        prop::collection::vec(-e..=e, n * n)
            .prop_map(move |v| IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_certificate(m in matrix(1..=4, 1..=4, 5)) {
        let s = smith_normal_form(&m).unwrap();
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert!(laplace_det(&s.u).abs().is_one());
        prop_assert!(laplace_det(&s.v).abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag: Vec<BigInt> = (0..m.rows().min(m.cols())).map(|i| s.d.get(i, i).clone()).collect();
        let nonzero: Vec<BigInt> = diag.iter().filter(|x| !x.is_zero()).cloned().collect();
        prop_assert_eq!(&nonzero[..], &diag[..nonzero.len()]);
        prop_assert_eq!(&nonzero, &s.invariant_factors);
        for w in nonzero.windows(2) {
            prop_assert!(w[0].is_positive());
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn cokernel_matches_determinantal_divisors(m in matrix(1..=3, 1..=3, 3)) {
        let c = cokernel(&m).unwrap();
        let factors = invariant_factors_by_minors(&m);
        prop_assert_eq!(c.betti, m.rows() - factors.len());
        let torsion: Vec<BigInt> = factors.iter().filter(|f| !f.is_one()).cloned().collect();
        prop_assert_eq!(&c.torsion_factors, &torsion);
        prop_assert_eq!(c.torsion_order, torsion.iter().product::<BigInt>());
    }

    #[test]
    fn char_poly_matches_cofactor_expansion(m in square(1..=5, 4), t0 in -6i64..=6) {
        let p = m.char_poly().unwrap();
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), m.rows());
        let shifted = &IntMatrix::identity(m.rows()).scaled(&BigInt::from(t0)) - &m;
        prop_assert_eq!(p.eval(&BigInt::from(t0)), laplace_det(&shifted));
    }

    #[test]
    fn det_matches_laplace(m in square(1..=5, 6)) {
        prop_assert_eq!(m.det().unwrap(), laplace_det(&m));
    }

    #[test]
    fn restricted_det_of_power_is_resultant(seed in any::<u64>(), n in 1usize..=4, k in 1u64..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_unimodular(&mut rng, n, 3 * n, 2);
        let r = resultant(&a.char_poly().unwrap(), &IntPoly::t_pow_minus_one(k as usize)).unwrap();
        prop_assume!(!r.is_zero());
        let ak = a.power(k).unwrap().minus_identity().unwrap();
        prop_assert_eq!(ak.restricted_det().unwrap().abs(), r.abs());
        prop_assert_eq!(ak.det().unwrap(), r);
    }

    #[test]
    fn torsion_divides_restricted_det_when_semisimple(seed in any::<u64>(), n in 1usize..=4, ones in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Block sum I ⊕ B conjugated: eigenvalue 1 splits off over Z.
        let ones = ones.min(n - 1);
        let rest = random_unimodular(&mut rng, n - ones, 3 * n, 2);
        let blocks: Vec<IntMatrix> = [IntMatrix::identity(ones), rest.clone()].into_iter().filter(|b| b.rows() > 0).collect();
        let a = conjugate(&block_diag(&blocks), &random_unimodular(&mut rng, n, 2 * n, 1));
        prop_assume!(semisimple_at_one(&a));
        let m = a.minus_identity().unwrap();
        let torsion = cokernel(&m).unwrap().torsion_order;
        let dprime = m.restricted_det().unwrap().abs();
        prop_assert!((&dprime % &torsion).is_zero());
        if root_multiplicity(&rest.char_poly().unwrap(), 1) == 0 {
            prop_assert_eq!(torsion, dprime);
        }
    }

    #[test]
    fn inverse_unimodular_round_trip(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unimodular(&mut rng, n, 4 * n, 3);
        prop_assert!(u.is_unimodular());
        prop_assert_eq!(&u * &u.inverse_unimodular().unwrap(), IntMatrix::identity(n));
    }
}

#[test]
fn unipotent_torsion_disagrees_with_restricted_det() {
    let m = mat(&[&[1, 2], &[0, 1]]).minus_identity().unwrap();
    assert_eq!(cokernel(&m).unwrap().torsion_order, big(2));
    assert_eq!(m.restricted_det().unwrap(), big(1));
}

#[test]
fn snf_terminates_with_negative_pivot() {
    let m = mat(&[&[-4, -2, 5], &[5, -4, 0], &[-1, -5, -5], &[-3, -4, 2]]);
    let s = smith_normal_form(&m).unwrap();
    assert_eq!(&(&s.u * &m) * &s.v, s.d);
    assert_eq!(s.invariant_factors, invariant_factors_by_minors(&m));
}

#[test]
fn semisimple_but_not_split_over_z() {
    // Eigenvalues 1 and −1, diagonalizable over Q, but Z² ≠ ker ⊕ image.
    let a = mat(&[&[1, 1], &[0, -1]]);
    assert!(semisimple_at_one(&a));
    let m = a.minus_identity().unwrap();
    assert_eq!(cokernel(&m).unwrap().torsion_order, big(1));
    assert_eq!(m.restricted_det().unwrap().abs(), big(2));
}
