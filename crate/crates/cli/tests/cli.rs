use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn linefree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linefree")).args(args).env("LINEFREE_THREADS", "2").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const UNIT13: &str = "1 0 0\n0 1 0\n0 0 1\n1 1 0\n1 -1 0\n1 0 1\n1 0 -1\n0 1 1\n0 1 -1\n1 1 1\n1 1 -1\n1 -1 1\n1 -1 -1\n";

#[test]
fn analyze_json_has_schema_and_verdict() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "unit.txt", UNIT13);
    let o = linefree(&["analyze", f.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "linefree.report.v1");
    assert_eq!(v["d"], 13);
    assert_eq!(v["algebraic"]["verdict"], "Free");
}

#[test]
fn analyze_lattice_only() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "pencil.txt", "d=5\n0 1 2 3 4\n");
    let o = linefree(&["analyze", f.to_str().unwrap(), "--text"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("algebraic: requires realization"), "{out}");
    assert!(out.contains("chi: t^2 - 4t"), "{out}");
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.txt", "1 0 0\n0 1 zz\n");
    let o = linefree(&["analyze", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let spec = write(&dir, "spec.json", "{\"vars\": [\"x\"], \"eqs\": [");
    assert_eq!(linefree(&["systems", "solve-file", spec.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn certify_and_wrong_size() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "unit.txt", UNIT13);
    let o = linefree(&["certify", "terao13", f.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["branches"][0]["branch"], "ExponentBound");
    let o = linefree(&["certify", "reduce14", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn systems_commands() {
    let o = linefree(&["systems", "list"]);
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with(' ')).count(), 8);
    let o = linefree(&["systems", "solve", "sys11", "--json"]);
    assert_eq!(serde_json::from_str::<Value>(&stdout(&o)).unwrap(), Value::Array(vec![]));
    let o = linefree(&["systems", "solve", "sys14", "--strict-transcription"]);
    assert!(stdout(&o).contains("-5c+2d+2e+f+g=0"));
    assert!(stdout(&o).contains("0 solutions"));
    assert_eq!(linefree(&["systems", "solve", "nope"]).status.code(), Some(1));

    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "s.json", r#"{"vars": ["x", "y"], "eqs": [{"coeffs": {"x": 1, "y": 2}, "rhs": 4}]}"#);
    let o = linefree(&["systems", "solve-file", spec.to_str().unwrap(), "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn restrict_and_iso() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", "d=4\n0 1 2\n");
    let b = write(&dir, "b.txt", "1 0 0\n0 1 0\n1 1 0\n0 0 1\n");
    let o = linefree(&["restrict", a.to_str().unwrap(), "--line", "3"]);
    assert!(stdout(&o).contains("multiplicities: [1, 1, 1]"), "{}", stdout(&o));
    let o = linefree(&["iso", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("isomorphic"));
    let o = linefree(&["restrict", a.to_str().unwrap(), "--line", "9"]);
    assert_eq!(o.status.code(), Some(1));
}
