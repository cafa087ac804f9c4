use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galois-cert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(poly: &str, extra: &[&str]) -> Value {
    let mut args = vec!["analyze", poly, "--format", "json"];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn cube_root_two_json() {
    let v = json("x^3 - 2", &[]);
    for key in ["polynomial", "resolvent", "group", "subgroups", "checks"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["group"]["order"], 6);
    let subgroups = v["subgroups"].as_array().unwrap();
    assert_eq!(subgroups.len(), 6);
    for s in subgroups {
        let dim = s["dim"].as_u64().unwrap();
        let order = s["order"].as_u64().unwrap();
        assert_eq!(dim * order, 6);
        assert_eq!(s["fixed_field_equal"], true);
    }
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
    // rationals are strings
    assert!(v["polynomial"]["input"]["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .all(Value::is_string));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["analyze", "x^4 + 1", "--format", "json"]);
    let b = run(&["analyze", "x^4 + 1", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_and_json_agree() {
    let v = json("x^3 - 3x - 1", &[]);
    let out = run(&["analyze", "x^3 - 3x - 1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(&format!(
        "subgroups: {}",
        v["subgroups"].as_array().unwrap().len()
    )));
    assert!(text.contains(&format!("group order {}", v["group"]["order"])));
}

#[test]
fn arrangement_arrays() {
    let v = json("x^3 - 2", &["--array"]);
    for s in v["subgroups"].as_array().unwrap() {
        let blocks = s["arrangements"].as_array().unwrap();
        let order = s["order"].as_u64().unwrap() as usize;
        assert_eq!(blocks.len() * order, 6);
        assert!(blocks
            .iter()
            .all(|b| b["rows"].as_array().unwrap().len() == order));
    }
}

#[test]
fn explicit_weights() {
    let v = json("x^2 - 2", &["--spec", "1,-1"]);
    assert_eq!(v["resolvent"]["weights"], serde_json::json!([1, -1]));
}

#[test]
fn rescaled_input_is_reported() {
    let v = json("2x^2 - 1", &[]);
    assert_eq!(v["polynomial"]["root_scale"], "2");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "x^2 +"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "x^2 + y"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "x^5 - 2"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "x^2 - 2x + 1"]).status.code(), Some(2));
    assert_eq!(
        run(&["analyze", "x^2 - 2", "--spec", "3,3"]).status.code(),
        Some(3)
    );
    let out = run(&["analyze", "x^2 + y"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 6"));
}
