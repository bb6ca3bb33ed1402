//! Homology of mapping tori and torsion growth along towers of covers.

use std::f64::consts::LN_2;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::covers::{
    build_cover_with_limits, coinvariant_cover_spec, fiber_component_count, lift_automorphism,
    CoverKind, CoverLimits, CoverSpec, LiftedAction, TorusQuotient,
};
use crate::error::{domain_err, Error, Result};
use crate::exact_linalg::{invariant_factors, IntMatrix};
use crate::group::{Automorphism, SurfaceKind, SurfacePresentation};
use crate::intpoly::{cyclotomic_poly, IntPoly, DEFAULT_MAHLER_TOL};
use crate::roots::certified_roots;
use crate::serial::{bigint_str, bigint_vec_str};

/// Natural logarithm of a positive big integer.
pub fn log_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * LN_2
}

/// `H_1(T_ψ) = Z ⊕ coker(A − I)` for the monodromy action `A` on `H_1(S)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingTorus {
    pub monodromy_matrix: IntMatrix,
    pub fiber: SurfacePresentation,
    pub h1_betti: usize,
    #[serde(with = "bigint_vec_str")]
    pub h1_torsion: Vec<BigInt>,
    #[serde(with = "bigint_str")]
    pub torsion_order: BigInt,
    /// `|det′(A − I)|`, the product of the nonzero eigenvalues.
    #[serde(with = "bigint_str")]
    pub restricted_det_abs: BigInt,
    /// Whether the torsion order equals `|det′(A − I)|`. It can fail when the
    /// eigenvalue 1 is not semisimple.
    pub torsion_matches_restricted_det: bool,
    /// `A` is unipotent (all eigenvalues 1) yet the mapping torus has torsion.
    pub unipotent_with_torsion: bool,
}

pub fn mapping_torus_homology(a: &IntMatrix, fiber: SurfacePresentation) -> Result<MappingTorus> {
    if !a.is_square() || a.is_empty() {
        return domain_err("monodromy matrix must be square and nonempty");
    }
    fiber.validate()?;
    if a.rows() != fiber.h1_rank() {
        return domain_err(format!(
            "monodromy is {}×{} but the fiber has H1 rank {}",
            a.rows(),
            a.cols(),
            fiber.h1_rank()
        ));
    }
    if !a.is_unimodular() {
        return domain_err("monodromy matrix is not unimodular, so it is not induced by a homeomorphism");
    }
    let m = a.minus_identity()?;
    let factors = invariant_factors(&m);
    let h1_torsion: Vec<BigInt> = factors.iter().filter(|f| !f.is_one()).cloned().collect();
    let torsion_order: BigInt = h1_torsion.iter().product();
    let restricted_det_abs = m.restricted_det()?.abs();
    let cp = a.char_poly()?;
    let unipotent = cp == power(&IntPoly::from_i64(&[-1, 1]), a.rows());
    Ok(MappingTorus {
        monodromy_matrix: a.clone(),
        fiber,
        h1_betti: 1 + a.rows() - factors.len(),
        torsion_matches_restricted_det: torsion_order == restricted_det_abs,
        unipotent_with_torsion: unipotent && !h1_torsion.is_empty(),
        h1_torsion,
        torsion_order,
        restricted_det_abs,
    })
}

fn power(p: &IntPoly, k: usize) -> IntPoly {
    (0..k).fold(IntPoly::one(), |acc, _| &acc * p)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TowerLevel {
    /// `k` for cyclic towers, `N` for abelian towers.
    pub index: u64,
    /// Degree of the cover over `T_ψ`.
    pub degree: u64,
    pub betti: usize,
    #[serde(with = "bigint_str")]
    pub torsion_order: BigInt,
    pub normalized_log_torsion: f64,
    pub fiber_components: u64,
    /// Upper bound on `normalized_log_torsion` when the monodromy is cyclotomic.
    pub bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    Cyclotomic,
    /// Certified enclosure `[lower, upper]` of the spectral radius.
    NonCyclotomic { spectral_radius: f64, lower: f64, upper: f64 },
}

impl Classification {
    pub fn is_cyclotomic(&self) -> bool {
        matches!(self, Classification::Cyclotomic)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TowerReport {
    pub levels: Vec<TowerLevel>,
    /// Mean of `normalized_log_torsion` over the last quartile of levels.
    pub limit_estimate: f64,
    pub limit_method: String,
    /// `log M(char poly)` for cyclic towers.
    pub mahler_reference: Option<f64>,
    pub classification: Classification,
}

const LIMIT_METHOD: &str = "mean over the last quartile of levels";

fn tail_mean(levels: &[TowerLevel]) -> f64 {
    let n = levels.len();
    let take = n.div_ceil(4).max(1);
    let tail = &levels[n - take..];
    tail.iter().map(|l| l.normalized_log_torsion).sum::<f64>() / take as f64
}

/// Cyclotomic test on the characteristic polynomial, with a certified
/// spectral-radius enclosure as witness otherwise.
pub fn classify_monodromy(a: &IntMatrix) -> Result<Classification> {
    if !a.is_square() || a.is_empty() {
        return domain_err("classification needs a square nonempty matrix");
    }
    classify_char_poly(&a.char_poly()?)
}

pub fn classify_char_poly(p: &IntPoly) -> Result<Classification> {
    if p.is_cyclotomic_product()? {
        return Ok(Classification::Cyclotomic);
    }
    let (lower, upper) = p.spectral_radius_bounds()?;
    Ok(Classification::NonCyclotomic {
        spectral_radius: 0.5 * (lower + upper),
        lower,
        upper,
    })
}

/// Torsion of `Z ⊕ coker(A^k − I)` for `k = 1..=k_max`.
pub fn cyclic_tower(a: &IntMatrix, k_max: u64) -> Result<TowerReport> {
    if k_max == 0 {
        return domain_err("k_max must be at least 1");
    }
    if !a.is_square() || a.is_empty() {
        return domain_err("monodromy matrix must be square and nonempty");
    }
    if !a.is_unimodular() {
        return domain_err("monodromy matrix is not unimodular");
    }
    let n = a.rows();
    let cp = a.char_poly()?;
    let classification = classify_char_poly(&cp)?;
    let mahler = cp.mahler_measure(DEFAULT_MAHLER_TOL)?.log_value();
    let mut powers = Vec::with_capacity(k_max as usize);
    let mut cur = a.clone();
    for _ in 0..k_max {
        powers.push(cur.minus_identity()?);
        cur = &cur * a;
    }
    let ks: Vec<u64> = (1..=k_max).collect();
    let cyclotomic = classification.is_cyclotomic();
    let levels = crate::par::map(&ks, |&k| {
        let m = &powers[(k - 1) as usize];
        let factors = invariant_factors(m);
        let torsion_order: BigInt = factors.iter().filter(|f| !f.is_one()).product();
        TowerLevel {
            index: k,
            degree: k,
            betti: 1 + n - factors.len(),
            normalized_log_torsion: log_bigint(&torsion_order) / k as f64,
            torsion_order,
            fiber_components: k,
            bound: cyclotomic.then(|| n as f64 * LN_2 / k as f64),
        }
    });
    Ok(TowerReport {
        limit_estimate: tail_mean(&levels),
        levels,
        limit_method: LIMIT_METHOD.into(),
        mahler_reference: Some(mahler),
        classification,
    })
}

/// `C/c + 2·log 2/d` with `C = log 2·2(g − 1)` for a closed fiber of genus
/// `g` and `C = log 2·(r − 1)` for a free fiber of rank `r`.
pub fn cyclotomic_upper_bound(level: &TowerLevel, fiber: &SurfacePresentation) -> f64 {
    cyclotomic_upper_bound_with_constant(
        level.fiber_components,
        level.degree,
        cyclotomic_constant(fiber),
    )
}

pub fn cyclotomic_constant(fiber: &SurfacePresentation) -> f64 {
    match fiber.kind {
        SurfaceKind::Closed { genus } => LN_2 * 2.0 * (genus as f64 - 1.0),
        SurfaceKind::Free => LN_2 * (fiber.rank as f64 - 1.0),
    }
}

pub fn cyclotomic_upper_bound_with_constant(components: u64, degree: u64, c: f64) -> f64 {
    c / components as f64 + 2.0 * LN_2 / degree as f64
}

/// Tower of covers of `T_ψ` induced by `π_1(T_ψ) → Z/N ⊕ D_N`, where
/// `D_N` is the mod-`N` coinvariant quotient of `H_1(S)` and `t ↦ (1, 0)`.
pub fn homology_cover_tower(a: &Automorphism, moduli: &[u64], limits: &CoverLimits) -> Result<TowerReport> {
    if moduli.is_empty() {
        return domain_err("no moduli given");
    }
    if moduli[0] < 2 {
        return domain_err("moduli must be at least 2");
    }
    for w in moduli.windows(2) {
        if w[1] <= w[0] || w[1] % w[0] != 0 {
            return Err(Error::NotUniversalTower(format!(
                "{} does not strictly divide {}; every modulus must divide the next",
                w[0], w[1]
            )));
        }
    }
    let base = a.abelianization_matrix();
    let classification = classify_monodromy(&base)?;
    let fiber = *a.domain();
    let levels: Vec<Result<TowerLevel>> = crate::par::map(moduli, |&n| {
        abelian_level(a, &base, n, limits, &fiber, classification.is_cyclotomic())
    });
    let levels = levels.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(TowerReport {
        limit_estimate: tail_mean(&levels),
        levels,
        limit_method: LIMIT_METHOD.into(),
        mahler_reference: None,
        classification,
    })
}

fn abelian_level(
    a: &Automorphism,
    base: &IntMatrix,
    n: u64,
    limits: &CoverLimits,
    fiber: &SurfacePresentation,
    cyclotomic: bool,
) -> Result<TowerLevel> {
    let spec = coinvariant_cover_spec(a, n)?;
    let CoverKind::Abelian { quotient, .. } = &spec.kind else {
        unreachable!("coinvariant covers are abelian")
    };
    let mut moduli = vec![n];
    moduli.extend(&quotient.moduli);
    let fiber_images = quotient
        .images
        .iter()
        .map(|img| std::iter::once(0).chain(img.iter().map(|&x| x as i64)).collect())
        .collect();
    let mut t_image = vec![0i64; moduli.len()];
    t_image[0] = 1;
    let c = fiber_component_count(&TorusQuotient {
        moduli,
        fiber_images,
        t_image,
        monodromy: base.clone(),
    })?;
    let cover = build_cover_with_limits(&spec, limits)?;
    let lifted = lift_automorphism(a, &cover)?;
    let m = lifted.matrix.power(c)?.minus_identity()?;
    let factors = invariant_factors(&m);
    let torsion_order: BigInt = factors.iter().filter(|f| !f.is_one()).product();
    let degree = c * spec.degree as u64;
    let mut level = TowerLevel {
        index: n,
        degree,
        betti: 1 + m.rows() - factors.len(),
        normalized_log_torsion: log_bigint(&torsion_order) / degree as f64,
        torsion_order,
        fiber_components: c,
        bound: None,
    };
    if cyclotomic {
        level.bound = Some(cyclotomic_upper_bound(&level, fiber));
    }
    Ok(level)
}

/// One cover examined by [`search_noncyclotomic_lift`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchAttempt {
    pub cover: String,
    pub modulus: Option<u64>,
    pub degree: usize,
    pub h1_rank: Option<usize>,
    pub outcome: AttemptOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum AttemptOutcome {
    Classified { classification: Classification },
    Refused { reason: String },
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub attempts: Vec<SearchAttempt>,
    /// Index into `attempts` and the lift, when a non-cyclotomic lift was found.
    pub found: Option<(usize, LiftedAction)>,
}

/// Looks for a lift of `ψ` with spectral radius > 1, trying the trivial
/// cover first, then for each modulus the coinvariant cover and (with
/// `include_homology`) the full homology cover. At most `budget` covers are
/// examined.
pub fn search_noncyclotomic_lift(
    a: &Automorphism,
    moduli: &[u64],
    budget: usize,
    include_homology: bool,
    limits: &CoverLimits,
) -> Result<SearchReport> {
    if budget == 0 {
        return domain_err("search budget must be positive");
    }
    if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
        return domain_err(format!("modulus {m} is below 2"));
    }
    let base = *a.domain();
    let mut candidates: Vec<(String, Option<u64>, CoverSpec)> =
        vec![("trivial".into(), None, CoverSpec::homology(base, 1)?)];
    for &n in moduli {
        let co = coinvariant_cover_spec(a, n)?;
        if co.degree > 1 {
            candidates.push((format!("coinvariant mod {n}"), Some(n), co.clone()));
        }
        if include_homology {
            let h = CoverSpec::homology(base, n)?;
            if h.degree != co.degree {
                candidates.push((format!("homology mod {n}"), Some(n), h));
            }
        }
    }
    let mut attempts = Vec::new();
    for (label, modulus, spec) in candidates.into_iter().take(budget) {
        let degree = spec.degree;
        let cover = match build_cover_with_limits(&spec, limits) {
            Ok(c) => c,
            Err(e) if e.is_scale_refusal() => {
                attempts.push(SearchAttempt {
                    cover: label,
                    modulus,
                    degree,
                    h1_rank: None,
                    outcome: AttemptOutcome::Refused { reason: e.to_string() },
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let lifted = lift_automorphism(a, &cover)?;
        let classification = classify_monodromy(&lifted.matrix)?;
        let hit = !classification.is_cyclotomic();
        attempts.push(SearchAttempt {
            cover: label,
            modulus,
            degree,
            h1_rank: Some(cover.h1_rank()),
            outcome: AttemptOutcome::Classified { classification },
        });
        if hit {
            let idx = attempts.len() - 1;
            return Ok(SearchReport {
                attempts,
                found: Some((idx, lifted)),
            });
        }
    }
    Ok(SearchReport {
        attempts,
        found: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthBound {
    pub lambda0: f64,
    /// Fraction of eigenvalues (with multiplicity) of modulus at least `lambda0`.
    pub q: f64,
    pub chi_abs: u64,
    /// Power `N` applied to the eigenvalues in `C_N`.
    pub power: u64,
    /// `Σ log|μ^N − 1|` over eigenvalues `μ` with `|μ| < λ₀` and `μ^N ≠ 1`.
    pub c_n_log: f64,
    /// `|χ(S)|·q·log λ₀`.
    pub lower_bound: f64,
}

/// Growth lower bound from the eigenvalues of a lifted action `B`.
/// Eigenvalue moduli come from certified enclosures; an enclosure reaching
/// `lambda0` counts toward `q`.
pub fn growth_lower_bound(b: &IntMatrix, lambda0: f64, chi_abs: u64, power: u64) -> Result<GrowthBound> {
    if !(lambda0 > 1.0) || !lambda0.is_finite() {
        return domain_err(format!("lambda0 must exceed 1, got {lambda0}"));
    }
    if power == 0 {
        return domain_err("power must be at least 1");
    }
    if !b.is_square() || b.is_empty() {
        return domain_err("growth bound needs a square nonempty matrix");
    }
    let size = b.rows();
    let mut p = b.char_poly()?;
    // Drop eigenvalues with μ^N = 1 exactly: they are the zero eigenvalues of B^N − I.
    for d in divisors(power) {
        let phi = cyclotomic_poly(d as usize)?;
        while !p.is_constant() && p.pseudo_rem(&phi)?.is_zero() {
            p = p.div_exact(&phi)?;
        }
    }
    let mut count = 0usize;
    let mut c_n_log = 0.0;
    if !p.is_constant() {
        for e in certified_roots(&p)? {
            if e.modulus_upper() >= lambda0 {
                count += e.multiplicity;
            } else {
                let z = e.center().powu(power as u32) - 1.0;
                c_n_log += e.multiplicity as f64 * z.norm().ln();
            }
        }
    }
    let q = count as f64 / size as f64;
    Ok(GrowthBound {
        lambda0,
        q,
        chi_abs,
        power,
        c_n_log,
        lower_bound: chi_abs as f64 * q * lambda0.ln(),
    })
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Default threshold: just below the certified spectral radius.
pub fn default_lambda0(b: &IntMatrix) -> Result<Option<f64>> {
    Ok(match classify_monodromy(b)? {
        Classification::Cyclotomic => None,
        Classification::NonCyclotomic { lower, .. } => Some(lower - 1e-6),
    })
}

impl TowerLevel {
    pub fn torsion_is_trivial(&self) -> bool {
        self.torsion_order.is_one() || self.torsion_order.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FreeWord;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn f(n: usize) -> SurfacePresentation {
        SurfacePresentation::free(n).unwrap()
    }

    fn auto(n: usize, imgs: &[&str]) -> Automorphism {
        Automorphism::from_images(f(n), imgs.iter().map(|s| FreeWord::parse(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn mapping_torus_fixtures() {
        let t = mapping_torus_homology(&IntMatrix::identity(2), f(2)).unwrap();
        assert_eq!((t.h1_betti, t.h1_torsion.len()), (3, 0));
        let t = mapping_torus_homology(&m(&[&[2, 1], &[1, 1]]), f(2)).unwrap();
        assert_eq!((t.h1_betti, t.h1_torsion.len()), (1, 0));
        let t = mapping_torus_homology(&m(&[&[-1, 0], &[0, -1]]), f(2)).unwrap();
        assert_eq!(t.h1_betti, 1);
        assert_eq!(t.h1_torsion, vec![BigInt::from(2), BigInt::from(2)]);
        assert!(t.torsion_matches_restricted_det);
        let t = mapping_torus_homology(&m(&[&[1, 2], &[0, 1]]), f(2)).unwrap();
        assert_eq!(t.torsion_order, BigInt::from(2));
        assert_eq!(t.restricted_det_abs, BigInt::from(1));
        assert!(!t.torsion_matches_restricted_det);
        assert!(t.unipotent_with_torsion);
        assert!(mapping_torus_homology(&m(&[&[2, 0], &[0, 1]]), f(2)).is_err());
    }

    #[test]
    fn cyclic_fixtures() {
        let r = cyclic_tower(&m(&[&[2, 1], &[1, 1]]), 4).unwrap();
        let t: Vec<i64> = r.levels.iter().map(|l| l.torsion_order.to_i64().unwrap()).collect();
        assert_eq!(t, [1, 5, 16, 45]);
        let r = cyclic_tower(&IntMatrix::identity(2), 8).unwrap();
        assert!(r.levels.iter().all(|l| l.torsion_order.is_one()));
        assert_eq!(r.limit_estimate, 0.0);
        let r = cyclic_tower(&m(&[&[-1, 0], &[0, -1]]), 6).unwrap();
        let t: Vec<i64> = r.levels.iter().map(|l| l.torsion_order.to_i64().unwrap()).collect();
        assert_eq!(t, [4, 1, 4, 1, 4, 1]);
        assert!(cyclic_tower(&IntMatrix::identity(2), 0).is_err());
    }

    #[test]
    fn classify_fixtures() {
        let phi12 = cyclotomic_poly(12).unwrap();
        let c = companion(&phi12);
        assert_eq!(classify_monodromy(&c).unwrap(), Classification::Cyclotomic);
        match classify_monodromy(&m(&[&[2, 1], &[1, 1]])).unwrap() {
            Classification::NonCyclotomic { spectral_radius, .. } => {
                assert!((spectral_radius - 2.618034).abs() < 1e-6)
            }
            _ => panic!("cat map is not cyclotomic"),
        }
        assert!(classify_monodromy(&m(&[&[1, 2], &[0, 1]])).unwrap().is_cyclotomic());
    }

    fn companion(p: &IntPoly) -> IntMatrix {
        let n = p.degree();
        let mut c = IntMatrix::zeros(n, n);
        for i in 1..n {
            c.set(i, i - 1, BigInt::one());
        }
        for i in 0..n {
            c.set(i, n - 1, -p.coeff(i));
        }
        c
    }

    #[test]
    fn growth_bound_fixtures() {
        let cat = m(&[&[2, 1], &[1, 1]]);
        let g = growth_lower_bound(&cat, 2.0, 1, 1).unwrap();
        assert_eq!(g.q, 0.5);
        assert!((g.lower_bound - 0.5 * LN_2).abs() < 1e-15);
        let mu: f64 = (3.0 - 5f64.sqrt()) / 2.0;
        assert!((g.c_n_log - (1.0 - mu).ln()).abs() < 1e-12);
        let g = growth_lower_bound(&m(&[&[1, 1], &[0, 1]]), 1.5, 3, 1).unwrap();
        assert_eq!((g.q, g.lower_bound), (0.0, 0.0));
        let g = growth_lower_bound(&m(&[&[2, 0], &[0, 3]]), 2.0, 3, 1).unwrap();
        assert_eq!(g.q, 1.0);
        assert!((g.lower_bound - 3.0 * LN_2).abs() < 1e-15);
        // C_N drops eigenvalues with μ^N = 1: −1 is excluded for N = 2.
        let g = growth_lower_bound(&m(&[&[-1, 0], &[0, -1]]), 2.0, 1, 2).unwrap();
        assert_eq!((g.q, g.c_n_log), (0.0, 0.0));
        assert!(growth_lower_bound(&cat, 1.0, 1, 1).is_err());
    }

    #[test]
    fn upper_bound_fixtures() {
        let g2 = SurfacePresentation::closed(2).unwrap();
        let level = TowerLevel {
            index: 0,
            degree: 8,
            betti: 0,
            torsion_order: BigInt::one(),
            normalized_log_torsion: 0.0,
            fiber_components: 4,
            bound: None,
        };
        assert!((cyclotomic_upper_bound(&level, &g2) - 0.519860385419959).abs() < 1e-12);
        let c = cyclotomic_constant(&f(3));
        assert_eq!(cyclotomic_upper_bound_with_constant(1, 1000, c), c + 2.0 * LN_2 / 1000.0);
    }

    #[test]
    fn abelian_tower_fixtures() {
        let id = Automorphism::identity(f(2));
        let r = homology_cover_tower(&id, &[2, 4], &CoverLimits::default()).unwrap();
        assert!(r.levels.iter().all(|l| l.torsion_order.is_one()));
        assert_eq!(r.levels[0].degree, 2 * 4);
        let cat = auto(2, &["aba", "ba"]);
        let r = homology_cover_tower(&cat, &[2, 4, 8], &CoverLimits::default()).unwrap();
        let cyc = cyclic_tower(&cat.abelianization_matrix(), 8).unwrap();
        for l in &r.levels {
            let k = l.index as usize;
            assert_eq!(l.degree, l.index);
            assert_eq!(l.torsion_order, cyc.levels[k - 1].torsion_order);
        }
        let shear = auto(2, &["ab", "b"]);
        let r = homology_cover_tower(&shear, &[2, 4, 8], &CoverLimits::default()).unwrap();
        for l in &r.levels {
            assert!(l.normalized_log_torsion <= l.bound.unwrap() + 1e-12);
        }
        assert!(matches!(
            homology_cover_tower(&id, &[2, 3], &CoverLimits::default()),
            Err(Error::NotUniversalTower(_))
        ));
    }

    #[test]
    fn search_fixtures() {
        let cat = auto(2, &["aba", "ba"]);
        let r = search_noncyclotomic_lift(&cat, &[2], 4, true, &CoverLimits::default()).unwrap();
        assert_eq!(r.found.as_ref().map(|f| f.0), Some(0));
        let id = Automorphism::identity(f(2));
        let r = search_noncyclotomic_lift(&id, &[2, 3], 10, true, &CoverLimits::default()).unwrap();
        assert!(r.found.is_none());
        assert!(search_noncyclotomic_lift(&id, &[2], 0, true, &CoverLimits::default()).is_err());
    }

    #[test]
    fn big_log() {
        let x = BigInt::from(3u32).pow(2000);
        assert!((log_bigint(&x) - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }
}
