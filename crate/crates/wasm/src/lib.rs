//! Browser bindings. Every export takes and returns JSON strings; the plain
//! Rust functions behind them are usable (and tested) natively.

use fibertor::covers::{build_cover, lift_automorphism, CoverSpec};
use fibertor::roots::certified_roots;
use fibertor::torus_tower::{classify_char_poly, cyclic_tower, Classification};
use fibertor::{Automorphism, FreeWord, IntMatrix, IntPoly, SurfacePresentation};
use num_bigint::BigInt;
use serde::Serialize;
use wasm_bindgen::prelude::*;

type Res<T> = std::result::Result<T, String>;

fn parse<T: serde::de::DeserializeOwned>(json: &str, what: &str) -> Res<T> {
    serde_json::from_str(json).map_err(|e| format!("{what}: {e}"))
}

fn matrix(json: &str) -> Res<IntMatrix> {
    let rows: Vec<Vec<i64>> = parse(json, "matrix")?;
    let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    IntMatrix::from_rows(&rows).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Res<String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct CurvePoint {
    k: u64,
    value: f64,
    torsion_digits: usize,
    bound: Option<f64>,
}

#[derive(Serialize)]
struct Curve {
    points: Vec<CurvePoint>,
    mahler_log: Option<f64>,
    cyclotomic: bool,
    spectral_radius: Option<f64>,
}

/// `log|torsion|/k` along the cyclic covers of the mapping torus of `matrix`.
pub fn tower_curve_json(matrix_json: &str, k_max: u64) -> Res<String> {
    if k_max > 400 {
        return Err("k_max is limited to 400 in the browser".into());
    }
    let a = matrix(matrix_json)?;
    let t = cyclic_tower(&a, k_max).map_err(|e| e.to_string())?;
    let spectral_radius = match t.classification {
        Classification::Cyclotomic => None,
        Classification::NonCyclotomic { spectral_radius, .. } => Some(spectral_radius),
    };
    to_json(&Curve {
        cyclotomic: spectral_radius.is_none(),
        spectral_radius,
        mahler_log: t.mahler_reference,
        points: t
            .levels
            .iter()
            .map(|l| CurvePoint {
                k: l.index,
                value: l.normalized_log_torsion,
                torsion_digits: l.torsion_order.to_string().len(),
                bound: l.bound,
            })
            .collect(),
    })
}

#[derive(Serialize)]
struct Root {
    re: f64,
    im: f64,
    radius: f64,
    multiplicity: usize,
}

#[derive(Serialize)]
struct RootPlot {
    degree: usize,
    roots: Vec<Root>,
    mahler: f64,
    cyclotomic: bool,
}

fn root_plot(p: &IntPoly) -> Res<RootPlot> {
    let roots = certified_roots(p).map_err(|e| e.to_string())?;
    let mahler = p.mahler_measure(1e-9).map_err(|e| e.to_string())?.value;
    let cyclotomic = classify_char_poly(p).map_err(|e| e.to_string())?.is_cyclotomic();
    Ok(RootPlot {
        degree: p.degree(),
        mahler,
        cyclotomic,
        roots: roots
            .into_iter()
            .map(|r| Root { re: r.re, im: r.im, radius: r.radius, multiplicity: r.multiplicity })
            .collect(),
    })
}

/// Certified roots and Mahler measure of a polynomial given by ascending
/// integer coefficients.
pub fn root_plot_json(coeffs_json: &str) -> Res<String> {
    let c: Vec<i64> = parse(coeffs_json, "coefficients")?;
    let p = IntPoly::from_i64(&c);
    if p.degree() == 0 {
        return Err("polynomial must have positive degree".into());
    }
    to_json(&root_plot(&p)?)
}

#[derive(Serialize)]
struct Spectrum {
    base_matrix: Vec<Vec<String>>,
    base: RootPlot,
    cover_degree: usize,
    lifted_rank: usize,
    lifted: RootPlot,
}

/// Spectrum of an automorphism of `F_r` (images as words, uppercase for
/// inverses) on `H_1` of the base and of the mod-`n` homology cover.
pub fn lifted_spectrum_json(images_json: &str, n: u64) -> Res<String> {
    let words: Vec<String> = parse(images_json, "images")?;
    if words.is_empty() || words.len() > 3 {
        return Err("give between 1 and 3 images".into());
    }
    if !(2..=4).contains(&n) {
        return Err("modulus must be 2, 3 or 4".into());
    }
    let base = SurfacePresentation::free(words.len()).map_err(|e| e.to_string())?;
    let images = words.iter().map(|w| FreeWord::parse(w)).collect::<fibertor::Result<Vec<_>>>();
    let a = Automorphism::from_images(base, images.map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let cover = build_cover(&CoverSpec::homology(base, n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let lifted = lift_automorphism(&a, &cover).map_err(|e| e.to_string())?;
    let b = a.abelianization_matrix();
    to_json(&Spectrum {
        base_matrix: (0..b.rows()).map(|i| (0..b.cols()).map(|j| b.get(i, j).to_string()).collect()).collect(),
        base: root_plot(&b.char_poly().map_err(|e| e.to_string())?)?,
        cover_degree: cover.degree(),
        lifted_rank: cover.h1_rank(),
        lifted: root_plot(&lifted.matrix.char_poly().map_err(|e| e.to_string())?)?,
    })
}

#[wasm_bindgen]
pub fn tower_curve(matrix_json: &str, k_max: u32) -> Result<String, JsValue> {
    tower_curve_json(matrix_json, k_max.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn root_plot_of(coeffs_json: &str) -> Result<String, JsValue> {
    root_plot_json(coeffs_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn lifted_spectrum(images_json: &str, n: u32) -> Result<String, JsValue> {
    lifted_spectrum_json(images_json, n.into()).map_err(|e| JsValue::from_str(&e))
}
