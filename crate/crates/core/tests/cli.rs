//! End-to-end checks of the binary: exit codes, output formats, and the
//! determinism contract (identical flags give byte-identical artifacts for
//! any --threads value).

use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mgcensus"))
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

#[test]
fn census_outputs_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["census", "--x", "1e3", "--q", "3", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());

    let csv = read(dir.path(), "census_x1000_q3.csv");
    assert!(csv.starts_with("x,q,k,signature,count\n"));
    let total: u64 = csv
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 1000);

    let manifest: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "run_manifest.json")).unwrap();
    assert_eq!(manifest["config"]["x"], 1000);
    let artifacts = manifest["artifacts"].as_array().unwrap();
    assert_eq!(artifacts.len(), 2);
    for a in artifacts {
        assert_eq!(a["sha256"].as_str().unwrap().len(), 64);
    }
}

#[test]
fn thread_count_does_not_change_artifacts() {
    let mut outputs = Vec::new();
    for threads in ["1", "2"] {
        let dir = tempfile::tempdir().unwrap();
        let status = bin()
            .args([
                "census",
                "--x",
                "200000",
                "--q",
                "3",
                "--segment-size",
                "4096",
                "--threads",
                threads,
                "--out",
            ])
            .arg(dir.path())
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push((
            read(dir.path(), "census_x200000_q3.csv"),
            read(dir.path(), "census_x200000_q3.json"),
        ));
    }
    assert_eq!(outputs[0], outputs[1], "artifacts differ across --threads");
}

#[test]
fn usage_errors_exit_2() {
    // q = 2 is excluded from the whole construction.
    let out = bin().args(["census", "--x", "10", "--q", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("odd prime"), "stderr: {msg}");

    let out = bin().args(["census", "--x", "ten", "--q", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mnc_prints_count() {
    let out = bin().args(["mnc", "--x", "16"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "11");
}

#[test]
fn constants_json_records() {
    let out = bin()
        .args(["constants", "--q", "3", "--alpha", "[]", "--cutoff", "1e4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let records: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = records
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, vec!["B_q", "C_alpha", "E_q_alpha", "K"]);
    let e = &records[2];
    assert!(e["value"].as_str().unwrap().starts_with("1.3333333333333"));
    // B * C * E = K at full precision of the decimal strings.
    let get = |i: usize| records[i]["value"].as_str().unwrap().parse::<f64>().unwrap();
    assert!((get(0) * get(1) * get(2) - get(3)).abs() < 1e-12 * get(3));
}

#[test]
fn verify_small_grid_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "verify",
            "--targets",
            "d:3:[]",
            "--xs",
            "1e4,1e5",
            "--band",
            "0.4",
            "--cutoff",
            "1e5",
            "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("d:3:[]: PASS"), "stdout: {stdout}");
    let rows = read(dir.path(), "verify_rows.csv");
    assert!(rows.lines().count() == 3);
    let summary: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "verify_summary.json")).unwrap();
    assert_eq!(summary["verdicts"][0]["pass"], true);
}

#[test]
fn verify_impossible_band_exits_3() {
    let out = bin()
        .args([
            "verify",
            "--targets",
            "d:3:[]",
            "--xs",
            "1e4,1e5",
            "--band",
            "0.0001",
            "--cutoff",
            "1e4",
            "--out",
        ])
        .arg(tempfile::tempdir().unwrap().path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}
