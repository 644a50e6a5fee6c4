//! End-to-end tests of the `jsrlab` binary: exit codes, output hygiene,
//! and document handling.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jsrlab"))
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

#[test]
fn bounds_on_classic_pair_exits_zero() {
    let out = bin()
        .args(["bounds"])
        .arg(golden("classic_pair.json"))
        .args(["--depth", "8", "--delta", "0.05", "--deterministic"])
        .output()
        .expect("spawn");
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json on stdout");
    let lo = report["enclosure"]["lo"].as_f64().unwrap();
    let hi = report["enclosure"]["hi"].as_f64().unwrap();
    let golden_ratio = (1.0 + 5f64.sqrt()) / 2.0;
    assert!(lo <= golden_ratio + 1e-9 && golden_ratio <= hi + 1e-9);
}

#[test]
fn bounds_brute_algorithm_matches_enclosure() {
    let run = |alg: &str| -> serde_json::Value {
        let out = bin()
            .args(["bounds"])
            .arg(golden("classic_pair.json"))
            .args(["--depth", "6", "--algorithm", alg])
            .output()
            .expect("spawn");
        assert!(out.status.success());
        serde_json::from_slice(&out.stdout).expect("json")
    };
    let enc = run("enclosure");
    let brute = run("brute");
    let lo_e = enc["enclosure"]["lo"].as_f64().unwrap();
    let lo_b = brute["enclosure"]["lo"].as_f64().unwrap();
    assert!((lo_e - lo_b).abs() < 1e-9);
    // The brute upper bound is min over norm levels, a valid bound too.
    let hi_b = brute["enclosure"]["hi"].as_f64().unwrap();
    let golden_ratio = (1.0 + 5f64.sqrt()) / 2.0;
    assert!(hi_b >= golden_ratio - 1e-9);
}

#[test]
fn bounds_csv_format() {
    let out = bin()
        .args(["bounds"])
        .arg(golden("classic_pair.json"))
        .args(["--depth", "4", "--format", "csv"])
        .output()
        .expect("spawn");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("row,n,value_lo,value_hi,witness"));
    assert!(text.lines().any(|l| l.starts_with("enclosure,")));
    // header + ub rows + lb rows + enclosure
    assert_eq!(text.trim_end().lines().count(), 1 + 4 + 4 + 1);
}

#[test]
fn malformed_json_exits_2_without_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ this is not json").unwrap();
    let out_path = dir.path().join("report.json");
    let out = bin()
        .args(["bounds"])
        .arg(&bad)
        .args(["--out"])
        .arg(&out_path)
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_path.exists(), "no partial output file may be written");
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_suite_exits_2() {
    let out = bin()
        .args(["verify", "--suite", "nosuch"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_cases_exits_2() {
    let out = bin()
        .args(["verify", "--suite", "upper_triangular", "--cases", "0"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_berger_wang_smoke_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("report.json");
    let out = bin()
        .args([
            "verify",
            "--suite",
            "berger_wang",
            "--seed",
            "1",
            "--cases",
            "5",
            "--depth",
            "10",
            "--deterministic",
        ])
        .args(["--out"])
        .arg(&json_path)
        .output()
        .expect("spawn");
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(report["suite"], "berger_wang");
    assert_eq!(report["suite_passed"], true);
    // CSV summary lands next to the JSON report.
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.starts_with("suite,seed,case,"));
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn algebra_radical_of_t2() {
    let out = bin()
        .args(["algebra"])
        .arg(golden("t2_algebra.json"))
        .args(["--radical"])
        .output()
        .expect("spawn");
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["what"], "jacobson_radical");
    assert_eq!(report["dim"], 1);
    // The radical of T2 is spanned by e12 (basis index 1).
    let basis = report["basis"].as_array().unwrap();
    let v = basis[0].as_array().unwrap();
    let coord = |i: usize| {
        let p = v[i].as_array().unwrap();
        (p[0].as_f64().unwrap().powi(2) + p[1].as_f64().unwrap().powi(2)).sqrt()
    };
    assert!(coord(0) < 1e-9 && coord(2) < 1e-9);
    assert!((coord(1) - 1.0).abs() < 1e-9);
}

#[test]
fn algebra_rcqa_of_t2_is_whole_algebra() {
    let out = bin()
        .args(["algebra"])
        .arg(golden("t2_algebra.json"))
        .args(["--rcqa"])
        .output()
        .expect("spawn");
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["dim"], 3);
}

#[test]
fn algebra_requires_exactly_one_mode() {
    let out = bin()
        .args(["algebra"])
        .arg(golden("t2_algebra.json"))
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2)); // clap usage error
}

#[test]
fn non_associative_input_exits_2_with_residual() {
    let dir = tempfile::tempdir().unwrap();
    // b*b = b with a bad coefficient pattern: c[0][0][0] = 1 but dim 2 with
    // c[0][1][0] = 1, c[1][0][1] = 1 breaks (b0 b1) b0 = b0 vs b0 (b1 b0) = b1.
    let doc = serde_json::json!({
        "kind": "algebra",
        "dim": 2,
        "structure_constants": [
            [[[0.0,0.0],[0.0,0.0]], [[1.0,0.0],[0.0,0.0]]],
            [[[0.0,0.0],[1.0,0.0]], [[0.0,0.0],[0.0,0.0]]]
        ]
    });
    let path = dir.path().join("bad_algebra.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = bin()
        .args(["algebra"])
        .arg(&path)
        .args(["--radical"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("residual"), "stderr: {stderr}");
}

#[test]
fn budget_env_var_forces_resource_exit_3() {
    let out = bin()
        .args(["bounds"])
        .arg(golden("classic_pair.json"))
        .args(["--depth", "14"])
        .env("JSRLAB_BUDGET", "50")
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("budget"), "stderr: {stderr}");
}

#[test]
fn invalid_budget_env_var_exits_2() {
    let out = bin()
        .args(["bounds"])
        .arg(golden("classic_pair.json"))
        .env("JSRLAB_BUDGET", "zero")
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn op_model_document_bounds() {
    let out = bin()
        .args(["bounds"])
        .arg(golden("op_family.json"))
        .args(["--depth", "8", "--delta", "0.01"])
        .output()
        .expect("spawn");
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // The family contains lambda=0.5 with corner diag(1.5, 0): rho >= 2.
    let hi = report["enclosure"]["hi"].as_f64().unwrap();
    assert!(hi >= 2.0 - 1e-9);
}
