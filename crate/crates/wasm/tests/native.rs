use fibertor_wasm::{lifted_spectrum_json, root_plot_json, tower_curve_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn cat_map_curve_approaches_log_mahler() {
    let v = parse(&tower_curve_json("[[2,1],[1,1]]", 60).unwrap());
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 60);
    let last = points[59]["value"].as_f64().unwrap();
    assert!((last - v["mahler_log"].as_f64().unwrap()).abs() < 1e-9);
    assert_eq!(v["cyclotomic"], false);
    assert_eq!(points[1]["torsion_digits"], 1);
}

#[test]
fn cyclotomic_curve_carries_bound() {
    let v = parse(&tower_curve_json("[[0,-1],[1,0]]", 8).unwrap());
    assert_eq!(v["cyclotomic"], true);
    assert!(v["points"].as_array().unwrap().iter().all(|p| p["bound"].is_f64()));
}

#[test]
fn lehmer_root_plot() {
    let v = parse(&root_plot_json("[1,1,0,-1,-1,-1,-1,-1,0,1,1]").unwrap());
    assert_eq!(v["degree"], 10);
    assert_eq!(v["roots"].as_array().unwrap().len(), 10);
    assert!((v["mahler"].as_f64().unwrap() - 1.1762808182599).abs() < 1e-9);
}

#[test]
fn cat_map_lift_keeps_spectral_radius() {
    let v = parse(&lifted_spectrum_json(r#"["aba","ba"]"#, 2).unwrap());
    assert_eq!((v["cover_degree"].as_u64(), v["lifted_rank"].as_u64()), (Some(4), Some(5)));
    let (base, lifted) = (v["base"]["mahler"].as_f64().unwrap(), v["lifted"]["mahler"].as_f64().unwrap());
    assert!((base - lifted).abs() < 1e-9);
}

#[test]
fn bad_inputs_are_errors() {
    assert!(tower_curve_json("[[2,0],[0,1]]", 5).is_err());
    assert!(tower_curve_json("not json", 5).is_err());
    assert!(root_plot_json("[3]").is_err());
    assert!(lifted_spectrum_json(r#"["ab","ab"]"#, 2).is_err());
}
