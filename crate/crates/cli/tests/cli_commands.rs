//! End-to-end checks of the binary: command surface, exit codes, and
//! output determinism, driven through real process spawns.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynzeta"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn run_on(config: &Path, rest: &[&str]) -> Output {
    let mut args = vec!["zeta", "--model", config.to_str().unwrap()];
    args.extend_from_slice(rest);
    run(&args)
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn zeta_reports_are_byte_identical_across_runs() {
    let cfg = config_path("torus_q2.json");
    let first = run_on(&cfg, &[]);
    let second = run_on(&cfg, &[]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&first)).unwrap();
    assert!(report["run_hash"].as_str().unwrap().len() == 64);
    assert_eq!(report["n0"], serde_json::json!(2));
}

#[test]
fn zeta_writes_report_and_csv_files() {
    let dir = std::env::temp_dir();
    let out_path = dir.join("dynzeta_test_report.json");
    let csv_path = dir.join("dynzeta_test_plot.csv");
    let result = run_on(
        &config_path("torus_q2.json"),
        &["--out", out_path.to_str().unwrap(), "--csv", csv_path.to_str().unwrap()],
    );
    assert_eq!(result.status.code(), Some(0));
    assert!(stdout_str(&result).is_empty());

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["config"]["kind"], "torus");

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,trace,abs_zeta_coeff");
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[1], "1,-3/1,3/1");
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3);
        assert!(!fields[2].starts_with('-'), "third column is an absolute value");
    }

    std::fs::remove_file(out_path).ok();
    std::fs::remove_file(csv_path).ok();
}

#[test]
fn zeta_terms_flag_overrides_the_config() {
    let result = run_on(&config_path("torus_q2.json"), &["--terms", "8"]);
    assert_eq!(result.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&result)).unwrap();
    assert_eq!(report["config"]["terms"], serde_json::json!(8));
    assert_eq!(report["zeta"]["series"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_prints_one_line_per_iterate() {
    let cfg = config_path("torus_q2.json");
    let result = run(&["verify", "--model", cfg.to_str().unwrap(), "--iterate", "2"]);
    assert_eq!(result.status.code(), Some(0));
    let text = stdout_str(&result);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("r=1 ineq1=fails"));
    assert!(lines[1].starts_with("r=2 ineq1=fails"));
}

#[test]
fn oracle_reports_the_least_matching_twist() {
    let cfg = config_path("torus_q2.json");
    let result = run(&["oracle", "--model", cfg.to_str().unwrap(), "--max-twist", "6"]);
    assert_eq!(result.status.code(), Some(0));
    assert_eq!(stdout_str(&result).trim(), "n0=2");
}

#[test]
fn oracle_rejects_models_without_a_count() {
    let cfg = config_path("constant.json");
    let result = run(&["oracle", "--model", cfg.to_str().unwrap(), "--max-twist", "6"]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn bell_prints_the_requested_polynomials() {
    let result = run(&["bell", "--n", "3"]);
    assert_eq!(result.status.code(), Some(0));
    let text = stdout_str(&result);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, vec!["P_1 = x1", "P_2 = x2 + x1^2", "P_3 = x3 + 3 x1 x2 + x1^3"]);
}

#[test]
fn config_problems_exit_with_code_two() {
    let missing = run(&["zeta", "--model", "/no/such/file.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));

    let dir = std::env::temp_dir();
    let bad = dir.join("dynzeta_test_bad.json");
    std::fs::write(&bad, r#"{"kind":"torus","q":2}"#).unwrap();
    let result = run(&["zeta", "--model", bad.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&result.stderr).contains("matrix"));
    std::fs::remove_file(bad).ok();
}

#[test]
fn contradictions_exit_with_code_three() {
    // The torus action relabeled as proper: purity still holds piece by
    // piece, but ineq1 fails, which a proper model cannot do.
    let mimic = r#"{
        "kind": "custom_graded", "q": 2, "dim": 2, "proper": true,
        "pieces": [
            {"degree": 0, "weight": 0, "f_action": [[1]], "frob_action": [[1]]},
            {"degree": 1, "weight": 2, "f_action": [[2, 3], [1, 2]], "frob_action": [[2, 0], [0, 2]]},
            {"degree": 2, "weight": 4, "f_action": [[1]], "frob_action": [[4]]}
        ],
        "terms": 12
    }"#;
    let dir = std::env::temp_dir();
    let path = dir.join("dynzeta_test_mimic.json");
    std::fs::write(&path, mimic).unwrap();
    let result = run(&["zeta", "--model", path.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(3));
    // the report is still emitted; the exit code is the only alarm
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&result)).unwrap();
    assert_eq!(report["spectral"]["ineq1"], "fails");
    std::fs::remove_file(path).ok();
}
