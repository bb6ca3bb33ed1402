use fibertor::alexander::{
    alexander_polynomial, evaluate_characters, fox_alexander_matrix, torus_presentation, AlexanderMatrix,
    Character, LaurentPoly,
};
use fibertor::covers::{build_cover_with_limits, enumerate_lifts, lift_automorphism, CoverLimits, CoverSpec};
use fibertor::roots::{certified_roots, RootEnclosure};
use fibertor::torus_tower::{
    classify_char_poly, cyclic_tower, default_lambda0, growth_lower_bound, homology_cover_tower,
    mapping_torus_homology, search_noncyclotomic_lift, AttemptOutcome, Classification, SearchAttempt,
    TowerReport,
};
use fibertor::{smith_normal_form, CokerSummary, IntMatrix, IntPoly, MahlerResult};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::input::Document;
use crate::output::{float, opt_float, Report};
use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
pub struct SnfOutput {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    #[serde(with = "fibertor::serial::bigint_vec_str")]
    pub invariant_factors: Vec<BigInt>,
    pub cokernel: CokerSummary,
}

pub fn snf(doc: &Document) -> Result<Report, CliError> {
    let m = doc.matrix()?;
    let s = smith_normal_form(&m)?;
    let cokernel = fibertor::cokernel(&m)?;
    let out = SnfOutput {
        u: s.u,
        d: s.d,
        v: s.v,
        invariant_factors: s.invariant_factors,
        cokernel,
    };
    let mut r = Report::new(&out).columns(&["index", "invariant_factor"]);
    for (i, f) in out.invariant_factors.iter().enumerate() {
        r.push(vec![(i + 1).to_string(), f.to_string()]);
    }
    Ok(r)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PolyOutput {
    pub poly: IntPoly,
    pub display: String,
}

pub fn charpoly(doc: &Document) -> Result<Report, CliError> {
    let p = doc.matrix()?.char_poly()?;
    let out = PolyOutput {
        display: p.to_string(),
        poly: p,
    };
    let mut r = Report::new(&out).columns(&["degree", "coefficient"]);
    for (i, c) in out.poly.coeffs().iter().enumerate() {
        r.push(vec![i.to_string(), c.to_string()]);
    }
    Ok(r)
}

fn roots_plot(roots: &[RootEnclosure]) -> String {
    let mut s = String::from("re,im,radius,multiplicity\n");
    for e in roots {
        s.push_str(&format!("{},{},{},{}\n", float(e.re), float(e.im), float(e.radius), e.multiplicity));
    }
    s
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MahlerOutput {
    pub poly: IntPoly,
    pub mahler: MahlerResult,
    pub log_mahler: f64,
    pub roots: Vec<RootEnclosure>,
}

pub fn mahler(doc: &Document, tol: f64) -> Result<Report, CliError> {
    let p = doc.poly()?;
    let mahler = p.mahler_measure(tol)?;
    let roots = if p.is_constant() { Vec::new() } else { certified_roots(&p)? };
    let out = MahlerOutput {
        log_mahler: mahler.log_value(),
        poly: p,
        mahler,
        roots,
    };
    let mut r = Report::new(&out)
        .field("poly", &out.poly)
        .field("mahler", float(out.mahler.value))
        .field("error_bound", float(out.mahler.error_bound))
        .field("log_mahler", float(out.log_mahler))
        .field("roots_outside_unit", out.mahler.roots_outside_unit);
    r.plot = Some(roots_plot(&out.roots));
    Ok(r)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub poly: IntPoly,
    pub classification: Classification,
}

fn classification_fields(r: Report, c: &Classification) -> Report {
    match c {
        Classification::Cyclotomic => r.field("class", "cyclotomic"),
        Classification::NonCyclotomic {
            spectral_radius,
            lower,
            upper,
        } => r
            .field("class", "non_cyclotomic")
            .field("spectral_radius", float(*spectral_radius))
            .field("lower", float(*lower))
            .field("upper", float(*upper)),
    }
}

pub fn classify(doc: &Document) -> Result<Report, CliError> {
    let p = doc.poly()?;
    let classification = classify_char_poly(&p)?;
    let out = ClassifyOutput { poly: p, classification };
    let mut r = classification_fields(Report::new(&out).field("poly", &out.poly), &out.classification);
    if !out.poly.is_constant() {
        r.plot = Some(roots_plot(&certified_roots(&out.poly)?));
    }
    Ok(r)
}

pub fn torus(doc: &Document) -> Result<Report, CliError> {
    let (m, fiber) = if doc.has_automorphism() {
        let a = doc.automorphism()?;
        (a.abelianization_matrix(), *a.domain())
    } else {
        let m = doc.matrix()?;
        let f = doc.fiber_for(m.rows())?;
        (m, f)
    };
    let t = mapping_torus_homology(&m, fiber)?;
    let torsion: Vec<String> = t.h1_torsion.iter().map(|f| format!("Z/{f}")).collect();
    Ok(Report::new(&t)
        .field("h1_betti", t.h1_betti)
        .field("h1_torsion", if torsion.is_empty() { "0".into() } else { torsion.join(" + ") })
        .field("torsion_order", &t.torsion_order)
        .field("restricted_det_abs", &t.restricted_det_abs)
        .field("torsion_matches_restricted_det", t.torsion_matches_restricted_det)
        .field("unipotent_with_torsion", t.unipotent_with_torsion))
}

const TOWER_COLUMNS: [&str; 7] = [
    "index",
    "degree",
    "betti",
    "torsion_order",
    "normalized_log_torsion",
    "fiber_components",
    "bound",
];

fn tower_report(t: &TowerReport) -> Report {
    let mut r = Report::new(t).columns(&TOWER_COLUMNS);
    let mut plot = String::from("index,normalized_log_torsion,bound,mahler_reference\n");
    for l in &t.levels {
        r.push(vec![
            l.index.to_string(),
            l.degree.to_string(),
            l.betti.to_string(),
            l.torsion_order.to_string(),
            float(l.normalized_log_torsion),
            l.fiber_components.to_string(),
            opt_float(l.bound),
        ]);
        plot.push_str(&format!(
            "{},{},{},{}\n",
            l.index,
            float(l.normalized_log_torsion),
            opt_float(l.bound),
            opt_float(t.mahler_reference)
        ));
    }
    r.plot = Some(plot);
    r
}

pub fn tower_cyclic(doc: &Document, kmax: u64) -> Result<Report, CliError> {
    Ok(tower_report(&cyclic_tower(&doc.matrix()?, kmax)?))
}

pub fn tower_abelian(doc: &Document, moduli: &[u64]) -> Result<Report, CliError> {
    let a = doc.automorphism()?;
    let limits = CoverLimits::from_env()?;
    Ok(tower_report(&homology_cover_tower(&a, moduli, &limits)?))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CoverOutput {
    pub spec: CoverSpec,
    pub degree: usize,
    pub h1_rank: usize,
    pub schreier_generators: Vec<String>,
    pub deck_group_exponent: Option<u64>,
}

pub fn cover_build(doc: &Document) -> Result<Report, CliError> {
    let (base, a) = if doc.has_automorphism() {
        let a = doc.automorphism()?;
        (*a.domain(), Some(a))
    } else {
        (doc.fiber_for(0)?, None)
    };
    let spec = doc.cover(base, a.as_ref())?;
    let cover = build_cover_with_limits(&spec, &CoverLimits::from_env()?)?;
    let rank = base.rank;
    let out = CoverOutput {
        degree: cover.degree(),
        h1_rank: cover.h1_rank(),
        schreier_generators: cover.schreier_generators().iter().map(|w| w.format(rank)).collect(),
        deck_group_exponent: spec.is_abelian().then(|| cover.deck_group_exponent()).transpose()?,
        spec,
    };
    Ok(Report::new(&out)
        .field("degree", out.degree)
        .field("h1_rank", out.h1_rank)
        .field("schreier_generators", out.schreier_generators.len())
        .field(
            "deck_group_exponent",
            out.deck_group_exponent.map(|e| e.to_string()).unwrap_or_default(),
        ))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LiftOutput {
    pub spec: CoverSpec,
    pub degree: usize,
    pub h1_rank: usize,
    pub basepoint_choice: usize,
    pub matrix: IntMatrix,
    pub char_poly: IntPoly,
    pub orientation: Option<i32>,
    pub classification: Classification,
    pub lifts: Option<Vec<IntMatrix>>,
}

pub fn cover_lift(doc: &Document, all_lifts: bool) -> Result<Report, CliError> {
    let a = doc.automorphism()?;
    let spec = doc.cover(*a.domain(), Some(&a))?;
    let cover = build_cover_with_limits(&spec, &CoverLimits::from_env()?)?;
    let lift = lift_automorphism(&a, &cover)?;
    let char_poly = lift.matrix.char_poly()?;
    let out = LiftOutput {
        degree: cover.degree(),
        h1_rank: cover.h1_rank(),
        basepoint_choice: lift.basepoint_choice,
        classification: classify_char_poly(&char_poly)?,
        lifts: all_lifts.then(|| enumerate_lifts(&lift)).transpose()?,
        matrix: lift.matrix,
        char_poly,
        orientation: lift.orientation,
        spec,
    };
    let r = Report::new(&out)
        .field("degree", out.degree)
        .field("h1_rank", out.h1_rank)
        .field("char_poly", &out.char_poly)
        .field("orientation", out.orientation.map(|o| o.to_string()).unwrap_or_default());
    let r = classification_fields(r, &out.classification);
    Ok(match &out.lifts {
        Some(l) => r.field("distinct_lifts", l.len()),
        None => r,
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CharacterValue {
    pub character: Character,
    /// `[re, im]` coefficients in ascending powers of `u`.
    pub coeffs: Vec<[f64; 2]>,
    pub error_bound: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AlexanderOutput {
    pub matrix: AlexanderMatrix,
    pub polynomial: Option<LaurentPoly>,
    pub display: Option<String>,
    pub characters: Vec<CharacterValue>,
}

pub fn alexander(doc: &Document, characters: Option<u64>) -> Result<Report, CliError> {
    let a = doc.automorphism()?;
    let m = fox_alexander_matrix(&torus_presentation(&a)?)?;
    let polynomial = match alexander_polynomial(&m) {
        Ok(p) => Some(p),
        Err(e) if e.is_scale_refusal() && characters.is_some() => None,
        Err(e) => return Err(e.into()),
    };
    let mut values = Vec::new();
    if let Some(n) = characters {
        if n == 0 {
            return Err(fibertor::Error::Domain("character modulus must be positive".into()).into());
        }
        let chis = Character::all_mod(m.nvars - 1, n);
        for (chi, p) in chis.iter().zip(evaluate_characters(&m, &chis)) {
            let p = p?;
            values.push(CharacterValue {
                character: chi.clone(),
                coeffs: p.coeffs.iter().map(|z| [z.re, z.im]).collect(),
                error_bound: p.error_bound,
            });
        }
    }
    let out = AlexanderOutput {
        display: polynomial.as_ref().map(|p| p.to_string()),
        polynomial,
        matrix: m,
        characters: values,
    };
    let mut r = Report::new(&out)
        .field("rows", out.matrix.rows)
        .field("cols", out.matrix.cols)
        .field("alexander_polynomial", out.display.clone().unwrap_or_default());
    for v in &out.characters {
        let label: Vec<String> = v.character.values.iter().map(|(k, n)| format!("{k}/{n}")).collect();
        let coeffs: Vec<String> = v
            .coeffs
            .iter()
            .map(|[re, im]| complex(round(*re), round(*im)))
            .collect();
        r.push(vec![format!("chi({})", label.join(",")), coeffs.join(" ")]);
    }
    Ok(r)
}

fn complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        float(re)
    } else if im < 0.0 {
        format!("{}-{}i", float(re), float(-im))
    } else {
        format!("{}+{}i", float(re), float(im))
    }
}

fn round(x: f64) -> f64 {
    let y = (x * 1e9).round() / 1e9;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FoundLift {
    pub attempt: usize,
    pub matrix: IntMatrix,
    pub char_poly: IntPoly,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SearchOutput {
    pub attempts: Vec<SearchAttempt>,
    pub found: Option<FoundLift>,
}

pub fn search_lift(doc: &Document, moduli: &[u64], budget: usize, include_homology: bool) -> Result<Report, CliError> {
    let a = doc.automorphism()?;
    let report = search_noncyclotomic_lift(&a, moduli, budget, include_homology, &CoverLimits::from_env()?)?;
    let found = match report.found {
        Some((i, lift)) => Some(FoundLift {
            attempt: i,
            char_poly: lift.matrix.char_poly()?,
            matrix: lift.matrix,
        }),
        None => None,
    };
    let out = SearchOutput {
        attempts: report.attempts,
        found,
    };
    let mut r = Report::new(&out).columns(&["cover", "degree", "h1_rank", "outcome"]);
    for at in &out.attempts {
        let outcome = match &at.outcome {
            AttemptOutcome::Classified {
                classification: Classification::Cyclotomic,
            } => "cyclotomic".to_string(),
            AttemptOutcome::Classified {
                classification: Classification::NonCyclotomic { spectral_radius, .. },
            } => format!("non_cyclotomic rho={}", float(*spectral_radius)),
            AttemptOutcome::Refused { reason } => format!("refused: {reason}"),
        };
        r.push(vec![
            at.cover.clone(),
            at.degree.to_string(),
            at.h1_rank.map(|h| h.to_string()).unwrap_or_default(),
            outcome,
        ]);
    }
    Ok(r)
}

pub fn bound(doc: &Document, lambda0: Option<f64>, chi: Option<u64>, power: u64) -> Result<Report, CliError> {
    let b = doc.matrix()?;
    let lambda0 = match lambda0 {
        Some(l) => l,
        None => default_lambda0(&b)?.ok_or_else(|| {
            fibertor::Error::Domain("the action is cyclotomic, so there is no threshold above 1".into())
        })?,
    };
    let chi = match chi {
        Some(c) => c,
        None => doc.fiber_for(b.rows())?.euler_characteristic_abs() as u64,
    };
    let g = growth_lower_bound(&b, lambda0, chi, power)?;
    Ok(Report::new(&g)
        .field("lambda0", float(g.lambda0))
        .field("q", float(g.q))
        .field("chi_abs", g.chi_abs)
        .field("power", g.power)
        .field("c_n_log", float(g.c_n_log))
        .field("lower_bound", float(g.lower_bound)))
}
