use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_summing-lab")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn basis_norms() {
    let out = run(&["norm", "--p", "2", "--d", "4", "--assert", "weak<=strong", "--assert", "weak-exact"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["results"]["weak"]["lower"]["value"], 1.0);
    assert_eq!(r["results"]["strong"]["value"], 2.0);
    assert_eq!(r["passed"], true);
    assert_eq!(r["assertions"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["norm", "--p", "1.2x"][..],
        &["norm", "--p", "1/2"],
        &["counterexample", "case1", "--p", "2", "--r", "1.2"],
        &["counterexample", "case2", "--p", "2"],
        &["check", "certificate", "--count", "0"],
        &["norm", "--assert", "no-such-check"],
        &["summing", "--budget", "0x10"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn failed_assertion_exits_1() {
    // a negative tolerance cannot be met
    let out = run(&["counterexample", "case1", "--p", "2", "--r", "2", "--nmax", "64", "--tol=-1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["passed"], false);
    let slope = r["assertions"].as_array().unwrap().iter().find(|a| a["name"] == "slope").unwrap();
    assert_eq!(slope["pass"], false);
}

#[test]
fn same_seed_same_report() {
    let args = ["summing", "--p", "3/2", "--gen", "random", "--d", "3", "--domain", "3", "--codomain", "1", "--budget", "4x100", "--skip-lt", "--seed", "9"];
    let strip = |o: Output| {
        let mut v = json(&o);
        v["wall_time_ms"] = Value::Null;
        v
    };
    assert_eq!(strip(run(&args)), strip(run(&args)));
}

#[test]
fn csv_series() {
    let out = run(&["counterexample", "case1", "--p", "2", "--r", "2", "--nmax", "16", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,value,log N,log value");
    assert_eq!(lines.len(), 6);
    let last: Vec<f64> = lines[5].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(last[0], 16.0);
    assert!((last[1] - 4.0).abs() < 1e-12);
}

#[test]
fn csv_with_out_file_keeps_json_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.csv");
    let out = run(&["counterexample", "holder", "--p", "2", "--s", "3/2", "--nmax", "100", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["command"], "counterexample");
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("N,weak_s,bound\n"));
}

#[test]
fn replay_rejects_reports_without_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"schema\": \"1\"}").unwrap();
    assert_eq!(run(&["replay", path.to_str().unwrap()]).status.code(), Some(2));
}
