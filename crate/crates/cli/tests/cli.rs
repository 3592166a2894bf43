//! End-to-end checks of the CLI surface: exit codes, JSON shapes, and
//! determinism of the verification reports.

use std::process::{Command, Output};

fn qcf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qcf(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn list_cases_contains_registry() {
    let text = stdout(&["list-cases"]);
    for id in ["gauss1", "gauss2", "gauss3", "case1", "case5", "wallis", "klein", "jacobi_a5b3"] {
        assert!(text.contains(id), "{id}");
    }
}

#[test]
fn verify_single_case_json_is_deterministic() {
    let a = stdout(&["verify", "--case", "gauss1"]);
    let b = stdout(&["verify", "--case", "gauss1"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v[0]["case"], "gauss1");
    assert_eq!(v[0]["pass"], true);
}

#[test]
fn verify_unknown_case_fails() {
    let out = qcf(&["verify", "--case", "nope"]);
    assert!(!out.status.success());
}

#[test]
fn sum_divergent_json_shape() {
    let text = stdout(&["sum-divergent", "--problem", "gauss1"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["classification"], "cesaro_convergent");
    assert!(v["value"].as_str().unwrap().starts_with("0.4275251302"));
    assert_eq!(v["bracket"].as_array().unwrap().len(), 2);
    let div = stdout(&["sum-divergent", "--problem", "gauss2"]);
    let v: serde_json::Value = serde_json::from_str(&div).unwrap();
    assert_eq!(v["classification"], "divergent");
    assert_eq!(v["value"], serde_json::Value::Null);
}

#[test]
fn eval_series_and_cf() {
    let text = stdout(&[
        "eval-series",
        "--kind",
        "squares_alt",
        "--param",
        "q=0.5",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["value"].as_str().unwrap().starts_with("0.5605621040"));
    // golden ratio minus one from the all-ones normal fraction
    let d: Vec<&str> = std::iter::repeat_n("1", 60).collect();
    let literal = format!("{{\"d\":[{}]}}", d.join(","));
    let text = stdout(&["--tol", "1e-15", "eval-cf", "--cf", &literal]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["value"].as_str().unwrap().starts_with("0.6180339887"));
}

#[test]
fn transform_roundtrip_through_cli() {
    let text = stdout(&[
        "series-to-cf",
        "--method",
        "muir-rogers",
        "--coeffs",
        "[\"1\",\"0.5\",\"0.375\",\"0.3125\",\"0.2734375\"]",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let e: Vec<String> = v["e"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| format!("\"{}\"", x.as_str().unwrap()))
        .collect();
    let literal = format!("{{\"e\":[{}],\"x\":\"1\"}}", e.join(","));
    let back = stdout(&["cf-to-series", "--method", "muir-rogers", "--cf", &literal]);
    let v: serde_json::Value = serde_json::from_str(&back).unwrap();
    let coeffs = v["coefficients"].as_array().unwrap();
    assert!(coeffs[1].as_str().unwrap().starts_with("0.5"));
    assert!(coeffs[2].as_str().unwrap().starts_with("0.375"));
}

#[test]
fn qd_on_matrix_file() {
    let dir = std::env::temp_dir().join("qcf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let dense = dir.join("dense.json");
    std::fs::write(&dense, "[[2,1],[1,2]]").unwrap();
    let text = stdout(&["qd", "--matrix", dense.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let ev = v["eigenvalues"].as_array().unwrap();
    let e0: f64 = ev[0].as_str().unwrap().parse().unwrap();
    let e1: f64 = ev[1].as_str().unwrap().parse().unwrap();
    assert!((e0 - 1.0).abs() < 1e-12 && (e1 - 3.0).abs() < 1e-12);
    assert_eq!(v["converged"], true);
    let tri = dir.join("tri.json");
    std::fs::write(&tri, "{\"diag\":[3,4,5,6],\"offdiag\":[1,1,1]}").unwrap();
    let text = stdout(&["qd", "--matrix", tri.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 4);
}
