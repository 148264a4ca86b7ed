//! End-to-end tests of the binary: wire formats, verdicts, exit codes
//! and transcript determinism.

use std::process::{Command, Output};

fn pin2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pin2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn compute_brieskorn_json_report() {
    let out = pin2(&["compute", "--brieskorn", "2,3,7", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["invariants"]["alpha"], "1/1");
    assert_eq!(v["invariants"]["beta"], "-1/1");
    assert_eq!(v["invariants"]["gamma"], "-1/1");
    assert_eq!(v["invariants"]["delta"], "0/1");
    assert_eq!(v["invariants"]["mu_bar"], "1/1");
    assert_eq!(v["projective_type"], true);
    assert_eq!(v["input"]["brieskorn"], serde_json::json!([2, 3, 7]));
    assert_eq!(v["local_class"]["s"], "-2/1");
}

#[test]
fn compute_inline_decomposition_matches_worked_example() {
    let out = pin2(&[
        "compute",
        "--hf",
        r#"{"s":0,"pairs":[[-5,6],[-3,4],[-1,2]]}"#,
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["swfhg"]["towers"].as_array().unwrap().len(), 8);
    assert_eq!(v["invariants"]["alpha"], "4/1");
    assert_eq!(v["invariants"]["delta"], "3/1");
}

#[test]
fn compute_trivial_decomposition() {
    let out = pin2(&["compute", "--hf", r#"{"s":0,"pairs":[]}"#, "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let towers = v["swfhg"]["towers"].as_array().unwrap();
    assert_eq!(towers.len(), 3);
    assert!(towers.iter().all(|t| t.get("len").is_none()));
    for key in ["alpha", "beta", "gamma", "delta", "mu_bar"] {
        assert_eq!(v["invariants"][key], "0/1");
    }
}

#[test]
fn compute_rejects_invalid_decomposition() {
    let out = pin2(&["compute", "--hf", r#"{"s":0,"pairs":[[3,1]]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("DNotAtMostOne"));
}

#[test]
fn compute_needs_exactly_one_input() {
    let out = pin2(&["compute", "--brieskorn", "2,3,7", "--brieskorn", "2,3,11"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compare_detects_obstruction_with_equal_invariants() {
    let out = pin2(&["compare", "--brieskorn", "5,7,13", "--brieskorn", "7,10,17"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("OBSTRUCTED"));
    assert!(text.contains("connected homology"));
}

#[test]
fn compare_same_space_is_unobstructed() {
    let out = pin2(&["compare", "--brieskorn", "2,3,7", "--brieskorn", "2,3,7"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("NO_OBSTRUCTION"));
}

#[test]
fn compare_projective_vs_not() {
    let out = pin2(&["compare", "--brieskorn", "7,10,17", "--brieskorn", "2,3,13", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["verdict"], "OBSTRUCTED");
}

#[test]
fn seifert_input_accepts_wrapped_and_bare_json() {
    for arg in [
        r#"{"seifert":{"b":-1,"fibers":[[1,2],[1,3],[1,7]]}}"#,
        r#"{"b":-1,"fibers":[[1,2],[1,3],[1,7]]}"#,
    ] {
        let out = pin2(&["compute", "--seifert", arg, "--format", "json"]);
        assert!(out.status.success(), "arg {arg}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["invariants"]["mu_bar"], "1/1");
    }
}

#[test]
fn seifert_rejects_positive_fibration() {
    let out = pin2(&["compute", "--seifert", r#"{"b":1,"fibers":[[1,2],[1,3],[1,7]]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("PositiveFibration"));
}

#[test]
fn family_md_and_empty_range() {
    let out = pin2(&["family", "--pattern", "2,5,20k+11", "--k", "1..3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("Sigma(2,5,").count(), 3);
    assert!(text.contains("| Sigma(2,5,31) |"));

    let out = pin2(&["family", "--pattern", "2,5,20k+11", "--k", "1..0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2, "only the header remains");
}

#[test]
fn family_skips_noncoprime_rows() {
    let out = pin2(&["family", "--pattern", "2,3,3k", "--k", "1..2"]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("skipped"));
}

#[test]
fn family_csv_has_q_notes() {
    let out = pin2(&["family", "--pattern", "2,7,28k-1", "--k", "1..1", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("Y,SWFH^G,"));
    assert!(text.contains("q sends V+_3(1) onto V+_2"));
}

#[test]
fn oracle_check_exit_codes_and_determinism() {
    let out = pin2(&["oracle-check", "--cases", "0"]);
    assert_eq!(out.status.code(), Some(2));

    let a = pin2(&["oracle-check", "--cases", "3", "--seed", "9", "--max-degree", "20"]);
    let b = pin2(&["oracle-check", "--cases", "3", "--seed", "9", "--max-degree", "20"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}
