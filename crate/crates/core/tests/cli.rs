use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinsqueeze")).args(args).env("SPINSQUEEZE_THREADS", "1").output().unwrap()
}

fn out_flag(dir: &Path) -> String {
    dir.to_str().unwrap().to_owned()
}

fn manifest(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

#[test]
fn bad_values_exit_two_and_name_the_field() {
    for (args, field) in [
        (vec!["pulses", "--n", "0"], "n"),
        (vec!["noise", "--eta", "-1"], "eta"),
        (vec!["oat", "--freeze"], "freeze"),
        (vec!["sweep", "--n-list", "100,200"], "n-list"),
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(field), "{args:?}: {err}");
    }
    assert_eq!(run(&["warp"]).status.code(), Some(2));
}

#[test]
fn config_file_sits_under_the_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"n": 40, "samples": 30, "seed": 7}"#).unwrap();
    let out = dir.path().join("o");
    let o = run(&["tact", "--config", cfg.to_str().unwrap(), "--n", "60", "--out", &out_flag(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = manifest(&out);
    assert_eq!(m["config"]["n"], 60);
    assert_eq!(m["config"]["samples"], 30);
    assert_eq!(m["config"]["seed"], 7);

    std::fs::write(&cfg, r#"{"n": 40, "colour": "red"}"#).unwrap();
    let o = run(&["tact", "--config", cfg.to_str().unwrap(), "--out", &out_flag(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
}

#[test]
fn oat_run_finds_its_minimum_and_reports_seconds() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["oat", "--n", "1250", "--chi-hz", "0.063", "--out", &out_flag(dir.path())]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(dir.path().join("run.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "chi_t,xi2,xi2_db,jx,jy,jz,theta_min,t_seconds");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    let best = rows.iter().min_by(|a, b| a[1].total_cmp(&b[1])).unwrap();
    assert!((best[0] - 0.0103).abs() < 0.0005, "{best:?}");
    let chi = 2.0 * std::f64::consts::PI * 0.063;
    assert!((best[7] - best[0] / chi).abs() < 1e-9 * best[7]);
}

#[test]
fn pulse_units_and_frozen_state_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["pulses", "--freeze", "--chi-hz", "0.063", "--out", &out_flag(dir.path())]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let units = &manifest(dir.path())["units"];
    let tc = units["pulse_period_s"].as_f64().unwrap();
    let total = units["pulse_total_s"].as_f64().unwrap();
    assert!((tc / 516e-6 - 1.0).abs() < 0.01, "{tc}");
    assert!((total / 25.8e-3 - 1.0).abs() < 0.01, "{total}");

    let state = dir.path().join("freeze_state.json");
    let hus = dir.path().join("h");
    let o = run(&["husimi", "--state", state.to_str().unwrap(), "--out", &out_flag(&hus)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(hus.join("husimi.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 128 * 256);
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = run(&["noise", "--n", "60", "--nc", "10", "--realizations", "4", "--seed", "3", "--out", &out_flag(d.path())]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["run.csv", "mean.csv", "ensemble.csv"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    assert_eq!(manifest(a.path())["content_digest"], manifest(b.path())["content_digest"]);
}
