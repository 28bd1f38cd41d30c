use std::process::Command;

use mellin_cli::{elaborate, parse, run_with};
use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mellin").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    let value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}\n{err}"));
    (code, value)
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/report.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&schema).unwrap()
}

fn assert_valid(value: &Value) {
    let compiled = schema();
    let msgs: Vec<String> = match compiled.validate(value) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("schema violations: {msgs:?}");
}

#[test]
fn verify_first_order_example() {
    let (code, v) = run_json(&["verify", "(z-1)*T + 1", "--json"]);
    assert_eq!(code, 0);
    assert_valid(&v);
    for check in ["ROTATION", "DIM_IDENTITY", "SLOPE_PARTITION", "HORZ_LOCALIZATION", "LOCAL_DIMS"] {
        assert_eq!(v["checks"][check], "PASS", "{check}");
    }
    assert_eq!(v["defect"], 0);
    assert_eq!(v["horz"], serde_json::json!(["1"]));
    let locals = v["locals"].as_array().unwrap();
    assert_eq!(locals.len(), 3);
    for l in locals {
        assert_eq!((l["dim"].as_u64(), l["irr"].as_u64(), l["mu"].as_u64()), (Some(1), Some(0), Some(1)));
    }
    assert_eq!(v["local_mellin_dims"]["1"], 1);
    assert_eq!(v["mellin_polygon"]["width"], "1");
}

#[test]
fn verify_delta_module() {
    let (code, v) = run_json(&["verify", "z - 2", "--expect-defect", "1", "--json"]);
    assert_eq!(code, 0);
    assert_valid(&v);
    assert_eq!(v["defect"], 1);
    assert_eq!(v["checks"]["ROTATION"], "PASS");
    assert_eq!(v["checks"]["DIM_IDENTITY"], "FAIL");
    assert_eq!(run(&["verify", "z - 2"]).0, 1);
    assert_eq!(run(&["verify", "z - 2", "--expect-defect", "2"]).0, 1);
    assert_eq!(run(&["verify", "(z - 2)^2", "--expect-defect", "2"]).0, 0);
}

#[test]
fn polygon_example() {
    let (code, v) = run_json(&["polygon", "T - z", "--json"]);
    assert_eq!(code, 0);
    let sides = v["global_polygon"]["sides"].as_array().unwrap();
    assert_eq!(sides.len(), 1);
    assert_eq!(sides[0]["slope"], "-1");
    assert_eq!(sides[0]["width"], "1");
    let (code, out, _) = run(&["polygon", "T - z"]);
    assert_eq!(code, 0);
    assert!(out.contains("slope -1, width 1"));
}

#[test]
fn input_errors_exit_two() {
    let (code, _, err) = run(&["polygon", "z z"]);
    assert_eq!(code, 2);
    assert!(err.contains("byte 2"), "{err}");
    assert_eq!(run(&["germ", "T", "--at", "x"]).0, 2);
    assert_eq!(run(&["verify", "z - z"]).0, 2);
    assert_eq!(run(&["verify", "(z+1)^-1"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["corpus", "--profile", "HUGE"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn non_rational_points_warn() {
    let (code, out, err) = run(&["verify", "(z^2 - 2)*T + 1"]);
    assert_eq!(code, 0);
    assert!(err.contains("warning: DIM_IDENTITY skipped"), "{err}");
    assert!(out.contains("SKIPPED"));
    let (_, v) = run_json(&["verify", "(z^2 - 2)*T + 1", "--json"]);
    assert_valid(&v);
    assert_eq!(v["defect"], Value::Null);
    assert_eq!(v["residual_degree"], 2);
}

#[test]
fn germ_and_mellin_commands() {
    let (code, v) = run_json(&["germ", "(z-1)*T + 1", "--at", "1", "--json"]);
    assert_eq!(code, 0);
    assert_eq!((v["dim"].as_u64(), v["irr"].as_u64(), v["mu"].as_u64()), (Some(1), Some(0), Some(1)));
    assert_eq!(v["local_mellin_dim"], 1);
    let (_, v) = run_json(&["germ", "T - z^-1", "--at", "0", "--json"]);
    assert_eq!(v["irr"], 1);
    let (code, v) = run_json(&["mellin", "z*T", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["mellin_operator"], "(-eta - 1)*Phi");
    let (code, _, _) = run(&["germ", "-T + z", "--at", "inf", "--precision", "3"]);
    assert_eq!(code, 0);
}

#[test]
fn svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    let expr = "T^2 + z*T - z^3 + z^-2";
    assert_eq!(run(&["polygon", expr, "--svg", a.to_str().unwrap()]).0, 0);
    assert_eq!(run(&["polygon", expr, "--svg", b.to_str().unwrap()]).0, 0);
    let sa = std::fs::read_to_string(&a).unwrap();
    assert_eq!(sa, std::fs::read_to_string(&b).unwrap());
    let (_, v) = run_json(&["polygon", expr, "--json"]);
    let sides = v["global_polygon"]["sides"].as_array().unwrap().len();
    let vertical = usize::from(v["global_polygon"]["vertical_height"].as_i64().unwrap() > 0);
    assert_eq!(sa.matches("<polyline").count(), sides + vertical);
    assert!(sa.starts_with("<?xml"));
    let missing = dir.path().join("no/such/dir/x.svg");
    assert_eq!(run(&["verify", expr, "--svg", missing.to_str().unwrap()]).0, 2);
}

#[test]
fn corpus_is_sorted_and_reproducible() {
    let args = ["corpus", "--seed", "10", "--count", "24", "--profile", "REGULAR", "--json"];
    let (code, v) = run_json(&args);
    assert_eq!(code, 0);
    let seeds: Vec<u64> = v["operators"].as_array().unwrap().iter().map(|o| o["seed"].as_u64().unwrap()).collect();
    assert_eq!(seeds, (10..34).collect::<Vec<_>>());
    assert_eq!(v["tally"]["ROTATION"]["pass"], 24);
    assert_eq!(run_json(&args).1, v);
    let (code, out, _) = run(&["corpus", "--count", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("5 operators, profile SMALL"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mellin");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["verify", "(z-1)*T + 1", "--json"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_valid(&v);
    assert_eq!(status(&["verify", "z - 2", "--expect-defect", "1"]).status.code(), Some(0));
    assert_eq!(status(&["verify", "z - 2"]).status.code(), Some(1));
    let bad = status(&["polygon", "z z"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("syntax error"));
}

fn expression() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("z".to_string()),
        Just("z^-1".to_string()),
        Just("T".to_string()),
        Just("d".to_string()),
        (0u32..20).prop_map(|n| n.to_string()),
        (0u32..9, 1u32..9).prop_map(|(n, d)| format!("{n}/{d}")),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}-{b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), 0u32..4).prop_map(|(a, n)| format!("({a})^{n}")),
            inner.prop_map(|a| format!("(-{a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_a_fixed_point(negate in any::<bool>(), body in expression()) {
        let text = if negate { format!("-{body}") } else { body };
        let e = parse(&text).unwrap();
        let printed = e.to_string();
        let again = parse(&printed).unwrap();
        prop_assert_eq!(&again, &e);
        prop_assert_eq!(again.to_string(), printed);
        prop_assert_eq!(elaborate(&again).ok(), elaborate(&e).ok());
    }
}
