use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn qgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgeo")).args(args).output().expect("spawn qgeo")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

#[test]
fn metric_command() {
    let out = qgeo(&["metric", "--bloch", "0.8,0,0", "--axis", "z"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["metric"].as_f64().unwrap() - 3.2).abs() < 1e-12);
    assert!((v["eigenvalue_1"].as_f64().unwrap() - 0.9).abs() < 1e-15);
    assert!((v["tangent_01_im"].as_f64().unwrap() + 0.8).abs() < 1e-15);

    let v = json(&qgeo(&["metric", "--bloch", "0,0,0.5", "--axis", "z"]));
    assert_eq!(v["metric"].as_f64().unwrap(), 0.0);

    let out = qgeo(&["metric", "--bloch", "1.5,0,0", "--axis", "z"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Bloch vector outside ball"));

    let v = json(&qgeo(&["metric", "--bloch", "0.3,0.2,0.1", "--function", "bures"]));
    assert_eq!(v["extension"], true);
    assert!(v.get("closed_form").is_none());

    assert_eq!(qgeo(&["metric", "--bloch", "0.3"]).status.code(), Some(2));
    assert_eq!(qgeo(&["metric", "--bloch", "0,0,0", "--function", "nope"]).status.code(), Some(2));
}

#[test]
fn negativity_command() {
    let v = json(&qgeo(&["negativity", "--bloch", "0.6,0.8,0"]));
    assert!((v["negativity_matrix"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(v["negativity_closed_form"].as_f64().unwrap(), 0.5);
    assert!(v["difference"].as_f64().unwrap() < 1e-12);

    for bloch in ["0,0,0", "0,0,0.9"] {
        let v = json(&qgeo(&["negativity", "--bloch", bloch]));
        assert!(v["negativity_matrix"].as_f64().unwrap() < 1e-15);
        assert_eq!(v["negativity_closed_form"].as_f64().unwrap(), 0.0);
    }
}

#[test]
fn verify_relation_default_run() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rows.csv");
    let summary = dir.path().join("summary.json");
    let out = qgeo(&[
        "verify-relation",
        "--out",
        csv.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "shell,nx,ny,nz,axis,negativity,metric,sqrt_metric,mixedness,ratio");
    assert_eq!(lines.count(), 10 * 256);

    let s: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    let shells = s["shells"].as_array().unwrap();
    assert_eq!(shells.len(), 10);
    for shell in shells {
        assert!(shell.get("published_coefficient").is_some());
        assert!(shell.get("measured_coefficient").is_some());
    }
    assert_eq!(s["direction_independent"], true);
}

#[test]
fn verify_relation_small_run() {
    let out = qgeo(&["verify-relation", "--shells", "0.5", "--dirs", "64", "--summary", "/dev/null"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 65);

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rows.csv");
    let out = qgeo(&["verify-relation", "--shells", "0.5", "--dirs", "64", "--out", csv.to_str().unwrap()]);
    let v = json(&out);
    assert!(v["shells"][0]["spread"].as_f64().unwrap() < 1e-9);

    assert_eq!(qgeo(&["verify-relation", "--shells", "1.2"]).status.code(), Some(1));
    assert_eq!(qgeo(&["verify-relation", "--dirs", "3"]).status.code(), Some(1));
    assert_eq!(qgeo(&["verify-relation", "--shells", "abc"]).status.code(), Some(2));
}

#[test]
fn monotonicity_command() {
    let v = json(&qgeo(&["monotonicity", "--samples", "100", "--channels", "unitary", "--out", "/dev/null"]));
    assert_eq!(v["families"][0]["covariance_holds"], true);
    assert!(v["families"][0]["max_abs_change_transformed"].as_f64().unwrap() < 1e-9);

    let v = json(&qgeo(&["monotonicity", "--samples", "50", "--channels", "identity", "--out", "/dev/null"]));
    assert_eq!(v["max_violation_transformed"].as_f64().unwrap(), 0.0);

    assert_eq!(qgeo(&["monotonicity", "--channels", "teleport"]).status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = qgeo(&["monotonicity", "--samples", "500", "--seed", "0"]);
    let b = qgeo(&["monotonicity", "--samples", "500", "--seed", "0"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let a = qgeo(&["verify-relation"]);
    let b = qgeo(&["verify-relation"]);
    assert_eq!(a.stdout, b.stdout);
}

fn check_golden(args: &[&str], csv_name: &str, json_name: &str) {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let summary = dir.path().join("out.json");
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--out", csv.to_str().unwrap(), "--summary", summary.to_str().unwrap()]);
    assert_eq!(qgeo(&full).status.code(), Some(0));
    assert_eq!(std::fs::read(&csv).unwrap(), std::fs::read(golden(csv_name)).unwrap(), "{csv_name}");
    assert_eq!(std::fs::read(&summary).unwrap(), std::fs::read(golden(json_name)).unwrap(), "{json_name}");
}

#[test]
fn golden_outputs() {
    check_golden(
        &["verify-relation", "--shells", "0.3,0.6,0.9", "--dirs", "16", "--axis", "z"],
        "verify_relation.csv",
        "verify_relation.json",
    );
    check_golden(
        &["verify-relation", "--shells", "0.3,0.6,0.9", "--dirs", "16", "--axis", "x"],
        "verify_relation_x.csv",
        "verify_relation_x.json",
    );
    check_golden(&["monotonicity", "--samples", "20", "--seed", "7"], "monotonicity.csv", "monotonicity.json");
}
