use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_annulus-cauchy")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

const DATA: &str = r#"{"g": {"a0": 1.0, "cos": [0.5, 0.0, 0.25], "sin": [0.0, 1.0, 0.0]},
                       "h": {"a0": -0.5, "cos": [0.0, 0.3], "sin": [0.7, 0.0]}}"#;

#[test]
fn compare_reports_agreement_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "data.json", DATA);
    let out = run(&["compare", "--input", &input]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["reference"], "oracle");
    assert_eq!(report["solver"], "eq3-modal");
    assert_eq!(report["points"], 80);
    assert!(report["max_abs"].as_f64().unwrap() <= 1e-8, "{report}");
}

#[test]
fn grid_outside_annulus_is_a_guard_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "data.json", DATA);
    let out = run(&["solve", "--input", &input, "--grid-r", "0.5:1.5:3"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("radius"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_input_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"g": {"a0": 1.0, "cos": ["x"]}}"#);
    let ragged = write(dir.path(), "ragged.json", r#"{"g": {"a0": 1.0, "cos": [1.0]}, "h": {"a0": 0.0}}"#);
    let out = run(&["solve", "--input", &ragged]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid `sin`: expected 1"));
    assert_eq!(run(&["solve", "--input", &bad]).status.code(), Some(2));
    let truncated = write(dir.path(), "trunc.json", r#"{"g": {"a0": 1.0"#);
    assert_eq!(run(&["oracle", "--input", &truncated]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--input", "/nonexistent/data.json"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bad_inner_radius_is_a_guard_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "data.json", DATA);
    assert_eq!(run(&["solve", "--input", &input, "--inner-radius", "1.2"]).status.code(), Some(3));
}

#[test]
fn hadamard_demo_table() {
    let out = run(&["hadamard-demo", "--sobolev", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,data_norm,solution_sup,amplification"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0][0], 5.0);
    let last = rows.last().unwrap();
    assert_eq!(last[0], 45.0);
    assert!((last[2] / 1.06e7 - 1.0).abs() < 5e-3, "{last:?}");

    let modal = run(&["hadamard-demo", "--n-list", "1,9", "--solver", "eq3-modal"]);
    assert_eq!(modal.status.code(), Some(0));
    assert_eq!(stdout(&modal).lines().count(), 3);
}

#[test]
fn csv_round_trip_through_compare() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "data.json", DATA);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert!(run(&["oracle", "--input", &input, "--out", a.to_str().unwrap()]).status.success());
    assert!(run(&["oracle", "--input", &input, "--out", b.to_str().unwrap()]).status.success());
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("# solver_tag: oracle\nr,phi,u\n"));

    let out = run(&["compare", "--field-a", a.to_str().unwrap(), "--field-b", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["max_abs"].as_f64(), Some(0.0));

    let other = dir.path().join("c.csv");
    run(&["oracle", "--input", &input, "--grid-phi", "8", "--out", other.to_str().unwrap()]);
    let mismatch = run(&["compare", "--field-a", a.to_str().unwrap(), "--field-b", other.to_str().unwrap()]);
    assert_ne!(mismatch.status.code(), Some(0));
}

#[test]
fn reconstruct_reports_errors_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "laurent.json", r#"{"powers": [-1, 0, 2], "re": [3.0, 1.0, 1.0], "im": [0.0, 0.5, 0.0]}"#);
    let out = run(&["reconstruct", "--input", &input]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["max_error"].as_f64().unwrap() < 1e-8, "{report}");

    let out = run(&["reconstruct", "--input", &input, "--truncation", "10"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    for p in report["points"].as_array().unwrap() {
        assert!(p["error"].as_f64().unwrap() <= p["bound"].as_f64().unwrap());
    }
}

#[test]
fn oracle_gain_cap_reports_dropped_modes() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "data.json", r#"{"g": {"a0": 0.0}, "h": {"a0": 0.0, "cos": [1.0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1e-6], "sin": [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]}}"#);
    let report = dir.path().join("dropped.json");
    let out = run(&[
        "oracle",
        "--input",
        &input,
        "--gain-cap",
        "1e4",
        "--probe-r",
        "0.5",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let dropped: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(dropped, serde_json::json!([{"component": "h", "n": 25}]));
    assert!(stdout(&out).starts_with("# solver_tag: oracle-filtered\n"));

    let bad = run(&["oracle", "--input", &input, "--gain-cap", "0"]);
    assert_eq!(bad.status.code(), Some(2));
}
