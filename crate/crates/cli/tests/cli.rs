use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linflow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn doc(contents: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().expect("temp file");
    file.write_all(contents.as_bytes()).expect("write doc");
    file
}

fn model(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../models");
    p.push(name);
    p.to_str().expect("utf8 path").to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn jordan_exact_rotation_is_purely_elliptic() {
    let f = doc(r#"{"dim":2,"entries":[["0","-1"],["1","0"]],"mode":"exact"}"#);
    let out = run(&["jordan", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("elliptic:"));
    assert!(text.contains("CHECK sum residual=0e0 threshold=1e-10 PASS"));
    assert!(text.contains("CHECK nilpotency residual=0e0"));
}

#[test]
fn jordan_zero_matrix_has_zero_parts() {
    let f = doc(r#"{"dim":2,"entries":[["0","0"],["0","0"]],"mode":"exact"}"#);
    let out = run(&["jordan", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // every rendered part row is a zero row
    for line in text.lines().filter(|l| l.starts_with("  ")) {
        assert_eq!(line.trim(), "0 0");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn mode_flag_overrides_document_mode() {
    let f = doc(r#"{"dim":2,"entries":[["0","-1"],["1","0"]],"mode":"exact"}"#);
    let out = run(&["jordan", "--mode", "float", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn nonsquare_matrix_is_an_input_error() {
    let f = doc(r#"{"dim":2,"entries":[["1","0","0"],["0","1","0"]]}"#);
    let out = run(&["jordan", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn malformed_document_reports_location() {
    let f = doc("not json");
    let out = run(&["verify", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line 1"), "no location in: {err}");
}

#[test]
fn missing_input_is_an_input_error() {
    let out = run(&["jordan"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_an_input_error() {
    let out = run(&["jordan", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_report_round_trips_losslessly() {
    // the sl2 suite carries informational checks with infinite thresholds,
    // which exercises the non-finite float encoding
    let out = run(&["isometry", "--input", &model("sl2.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let first: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    let parsed: linflow::docs::ReportDoc = serde_json::from_str(&text).expect("report doc");
    assert!(parsed.pass());
    assert!(parsed.checks.iter().any(|c| c.threshold.is_infinite()));
    let again = serde_json::to_string(&parsed).expect("serialize");
    let second: serde_json::Value = serde_json::from_str(&again).expect("valid json");
    assert_eq!(first, second);
}

#[test]
fn repeated_runs_agree_modulo_wall_time() {
    let f = doc(r#"{"A":{"dim":2,"entries":[[-1,0],[0,-2]]},"b":[1,1]}"#);
    let path = f.path().to_str().unwrap();
    let mut values = Vec::new();
    for _ in 0..2 {
        let out = run(&["cocycle", "--input", path, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
        v.as_object_mut().unwrap().insert("wall_ms".into(), 0.into());
        values.push(v);
    }
    assert_eq!(values[0], values[1]);
}

#[test]
fn bundled_corpus_verifies_clean() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in [
        "heisenberg",
        "sl2",
        "sl3",
        "semidirect-example",
        "semidirect-xi0",
        "catmap",
        "abelian-rotation",
    ] {
        assert!(text.contains(&format!("== {name}")), "missing section {name}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_on_exact_matrix_compares_both_paths() {
    let f = doc(r#"{"dim":2,"entries":[["3","1"],["0","3"]],"mode":"exact"}"#);
    let out = run(&["verify", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("exact_float_agreement"));
}

#[test]
fn catmap_defaults_to_bundled_model() {
    let out = run(&["catmap"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("scanned_points"));
    assert!(text.contains("max_period"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn failed_check_exits_one() {
    let out = run(&["flow", "--input", &model("heisenberg.json"), "--tol", "1e-20"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn text_lines_follow_the_check_format() {
    let out = run(&["recurrent", "--input", &model("semidirect-example.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut seen = 0;
    for line in text.lines().filter(|l| l.starts_with("CHECK ")) {
        let parts: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(parts.len(), 5, "bad line: {line}");
        assert!(parts[2].starts_with("residual="), "bad line: {line}");
        assert!(parts[3].starts_with("threshold="), "bad line: {line}");
        assert!(parts[4] == "PASS" || parts[4] == "FAIL", "bad line: {line}");
        seen += 1;
    }
    assert!(seen >= 2);
}
