//! The checked-in fuzz seeds stay meaningful: valid ones parse and round-trip,
//! the rest are rejected with an error.

use std::path::PathBuf;

use jetoper::json::*;
use jetoper::liealg::ChevalleyAlgebra;
use serde_json::Value;

const REJECTED: &[&str] = &[
    "bad_window",
    "bad_exponent",
    "unknown_label",
    "wrong_count",
    "ragged",
    "count_mismatch",
    "not_cartan",
    "truncated",
];

fn roundtrip(target: &str, v: &Value) -> Result<(), String> {
    let e = |e: jetoper::Error| e.to_string();
    let (out, again) = match target {
        "parse_series" => {
            let out = series_to_json(&series_from_json(v).map_err(e)?);
            (out.clone(), series_to_json(&series_from_json(&out).unwrap()))
        }
        "parse_oper" => {
            let d = oper_from_json(v).map_err(e)?;
            let out = oper_to_json(&d.alg, d.order, &d.x);
            let d2 = oper_from_json(&out).unwrap();
            (out, oper_to_json(&d2.alg, d2.order, &d2.x))
        }
        "parse_canonical" => {
            let (a, c) = canonical_from_json(v).map_err(e)?;
            let out = canonical_to_json(&a, &c);
            let (a2, c2) = canonical_from_json(&out).unwrap();
            (out, canonical_to_json(&a2, &c2))
        }
        "parse_gauge" => {
            let alg = ChevalleyAlgebra::build("A", 2).unwrap();
            let out = gauge_to_json(&alg, &gauge_from_json(&alg, v).map_err(e)?);
            (out.clone(), gauge_to_json(&alg, &gauge_from_json(&alg, &out).unwrap()))
        }
        "parse_class" => {
            let out = class_to_json(&class_from_json(v).map_err(e)?);
            (out.clone(), class_to_json(&class_from_json(&out).unwrap()))
        }
        "parse_jet_weight" => {
            let out = jet_weight_to_json(&jet_weight_from_json(v).map_err(e)?);
            (out.clone(), jet_weight_to_json(&jet_weight_from_json(&out).unwrap()))
        }
        "parse_connection" => {
            let (a, c) = connection_from_json(v).map_err(e)?;
            let out = connection_to_json(&a, &c);
            let (a2, c2) = connection_from_json(&out).unwrap();
            (out, connection_to_json(&a2, &c2))
        }
        other => panic!("no parser for {other}"),
    };
    assert_eq!(out, again, "{target} round trip");
    Ok(())
}

#[test]
fn fuzz_seeds_parse_or_are_rejected() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let mut seen = 0;
    for dir in std::fs::read_dir(&root).unwrap() {
        let dir = dir.unwrap().path();
        let target = dir.file_name().unwrap().to_str().unwrap().to_string();
        for file in std::fs::read_dir(&dir).unwrap() {
            let file = file.unwrap().path();
            let stem = file.file_stem().unwrap().to_str().unwrap();
            let text = std::fs::read_to_string(&file).unwrap();
            let result = parse_text(&text).map_err(|e| e.to_string()).and_then(|v| roundtrip(&target, &v));
            assert_eq!(result.is_err(), REJECTED.contains(&stem), "{target}/{stem}: {result:?}");
            seen += 1;
        }
    }
    assert!(seen >= 7);
}
