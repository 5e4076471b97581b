use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use distdyn::io::{parse_scenario, parse_trajectory};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_distdyn"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn appendix_prints_both_examples() {
    let out = bin().arg("appendix").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("S_w=4,S_c=20,"), "{text}");
    assert!(text.contains("S_w=4,S_c=16,"), "{text}");
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn verify_passes_on_a_clean_build() {
    let out = bin()
        .args(["verify", "--samples", "2000"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("[FAIL]"));
}

#[test]
fn missing_scenario_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["run", "--scenario", "missing.json", "--out"])
        .arg(dir.path().join("out.csv"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_scenario_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        r#"{"schema_version": 1, "scenario": {"horizon": 0}}"#,
    )
    .unwrap();
    let out = bin()
        .args(["run", "--scenario"])
        .arg(&path)
        .arg("--out")
        .arg(dir.path().join("out.csv"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("out.csv").exists());
}

#[test]
fn run_writes_one_row_per_period_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let path = dir.path().join(name);
        let status = bin()
            .args(["run", "--scenario"])
            .arg(scenario("rising_wage.json"))
            .arg("--out")
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push(fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);

    let text = String::from_utf8(outputs.swap_remove(0)).unwrap();
    assert_eq!(text.lines().count(), 6);
    let reparsed = parse_trajectory(&text).unwrap();
    let direct = parse_scenario(&fs::read(scenario("rising_wage.json")).unwrap())
        .unwrap()
        .simulate()
        .unwrap();
    assert_eq!(reparsed, direct);
}

#[test]
fn compare_writes_both_runs_and_a_summary() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("ref");
    let out = bin()
        .args(["compare", "--scenario"])
        .arg(scenario("reference.json"))
        .arg("--out-prefix")
        .arg(&prefix)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let summary = stdout(&out);
    let values: Vec<f64> = summary
        .trim()
        .split(',')
        .map(|kv| kv.split_once('=').unwrap().1.parse().unwrap())
        .collect();
    assert!(summary.starts_with("K_unconstrained(T)="));
    assert!(values[1] < values[0]);

    for suffix in ["_unconstrained.csv", "_contract.csv"] {
        let text = fs::read_to_string(dir.path().join(format!("ref{suffix}"))).unwrap();
        assert_eq!(parse_trajectory(&text).unwrap().len(), 50);
    }
}

#[test]
fn compare_rejects_unconstrained_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["compare", "--scenario"])
        .arg(scenario("rising_wage.json"))
        .arg("--out-prefix")
        .arg(dir.path().join("x"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn proportional_documents_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    let status = bin()
        .args(["run", "--scenario"])
        .arg(scenario("proportional.json"))
        .arg("--out")
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let traj = parse_trajectory(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(traj
        .records
        .iter()
        .all(|r| r.equilibrium_residual.unwrap().abs() < 1e-12));
}
