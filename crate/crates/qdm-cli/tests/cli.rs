//! End-to-end tests of the qdm binary: subcommand wiring, file outputs,
//! exit codes and report determinism.

use std::process::{Command, Output};

fn qdm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_chern_suite_passes() {
    let out = qdm(&["verify", "--suite", "chern"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["version"], "1");
    assert_eq!(doc["summary"]["failed"], 0);
    // three chern_number checks, degrees 1..3
    let chern_checks: Vec<&serde_json::Value> = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|chk| chk["name"] == "chern_number")
        .collect();
    assert_eq!(chern_checks.len(), 3);
}

#[test]
fn verify_all_suites_pass_at_defaults() {
    let out = qdm(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["summary"]["failed"], 0);
    // every suite contributed checks
    let suites: std::collections::BTreeSet<&str> = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|chk| chk["suite"].as_str().unwrap())
        .collect();
    assert_eq!(
        suites,
        [
            "classical",
            "jc",
            "pseudo",
            "veronese",
            "representations",
            "chern"
        ]
        .into_iter()
        .collect()
    );
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let out = qdm(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_bad_config_is_usage_error() {
    let out = qdm(&[
        "verify", "--suite", "chern", "--band", "80", "--cutoff", "64",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = qdm(&["verify", "--suite", "chern", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_impossible_tolerance_fails_with_exit_one() {
    let out = qdm(&["verify", "--suite", "chern", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_report_is_deterministic_apart_from_timestamp() {
    let strip = |s: &str| -> String {
        let mut doc: serde_json::Value = serde_json::from_str(s).unwrap();
        doc.as_object_mut().unwrap().remove("timestamp");
        serde_json::to_string(&doc).unwrap()
    };
    let a = qdm(&["verify", "--suite", "classical", "--seed", "7"]);
    let b = qdm(&["verify", "--suite", "classical", "--seed", "7"]);
    assert_eq!(strip(&stdout(&a)), strip(&stdout(&b)));
    // a different seed samples different points
    let c = qdm(&["verify", "--suite", "classical", "--seed", "8"]);
    assert_ne!(strip(&stdout(&a)), strip(&stdout(&c)));
}

#[test]
fn evolve_writes_csv_with_constant_norm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("evolve.csv");
    let out = qdm(&[
        "evolve",
        "--theta",
        "1",
        "--initial",
        "up:0",
        "--gt-max",
        "10",
        "--gt-points",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "gt,p_upper,p_lower,inversion,norm");
    let mut count = 0;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 5);
        let norm: f64 = cols[4].parse().unwrap();
        assert!((norm - 1.0).abs() < 1e-9);
        count += 1;
    }
    assert_eq!(count, 100);
}

#[test]
fn evolve_pseudo_keeps_pseudo_norm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pseudo.csv");
    let out = qdm(&[
        "evolve",
        "--theta",
        "1.5",
        "--pseudo",
        "--initial",
        "up:0",
        "--gt-max",
        "6",
        "--gt-points",
        "60",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("gt,p_upper,p_lower,inversion,pseudo_norm"));
    for line in csv.lines().skip(1) {
        let norm: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
        assert!((norm - 1.0).abs() < 1e-9, "line {line}");
    }
}

#[test]
fn evolve_rejects_empty_grid_and_bad_state() {
    let out = qdm(&[
        "evolve",
        "--theta",
        "1",
        "--gt-points",
        "0",
        "--out",
        "/tmp/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = qdm(&[
        "evolve",
        "--theta",
        "1",
        "--initial",
        "strange:0",
        "--out",
        "/tmp/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dirac_scan_reports_ground_pattern() {
    let out = qdm(&["dirac-scan", "--theta-grid", "-2,-1,1,2", "--cutoff", "32"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["ground_only"], true);
    for entry in doc["entries"].as_array().unwrap() {
        let theta = entry["theta"].as_f64().unwrap();
        let chart = entry["chart"].as_str().unwrap();
        let singular = entry["singular"].as_array().unwrap();
        let expect_singular = (chart == "I" && theta < 0.0) || (chart == "II" && theta > 0.0);
        if expect_singular {
            assert_eq!(singular.len(), 1);
            assert_eq!(singular[0]["component"], "lower");
            assert_eq!(singular[0]["index"], 0);
        } else {
            assert!(singular.is_empty());
        }
    }
}

#[test]
fn dirac_scan_rejects_zero_in_grid() {
    let out = qdm(&["dirac-scan", "--theta-grid", "-1,0,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn veronese_table_has_small_residuals() {
    let out = qdm(&[
        "veronese",
        "--theta",
        "1",
        "--degree-max",
        "3",
        "--cutoff",
        "48",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert!(row["normalization_residual"].as_f64().unwrap() < 1e-9);
        assert!(row["idempotence_residual"].as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn chern_subcommand_prints_integral() {
    let out = qdm(&["chern", "--degree", "5"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["degree"], 5);
    assert_eq!(doc["exact"], 5.0);
    assert!(doc["error"].as_f64().unwrap() < 1e-7);
}

#[test]
fn chern_rejects_degree_zero() {
    let out = qdm(&["chern", "--degree", "0"]);
    assert_eq!(out.status.code(), Some(2));
}
