use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use xfan::io::{ConeReport, FanReport, ThetaReport};

const A3: &str = r#"{"B": [[0, 1, 0], [-1, 0, -1], [0, 1, 0]]}"#;
const KRONECKER: &str = r#"{"B": [[0, -2], [2, 0]]}"#;

fn xfan(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_xfan"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], stdin: &str) -> Value {
    let out = xfan(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn validate_reports_symmetrizer() {
    let v = ok_json(&["validate", "--B", "-"], r#"{"B": [[0, 1], [-2, 0]]}"#);
    assert_eq!(v["d"], serde_json::json!([2, 1]));
}

#[test]
fn cone_of_the_bipartite_seed() {
    let out = xfan(&["cone", "--B", "-", "--seq", "1,3"], A3);
    let report: ConeReport = serde_json::from_slice(&out.stdout).unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["cone"]["rows"], serde_json::json!([[0, -1, 0], [-1, 2, -1], [0, -1, 0]]));
    assert_eq!(v["cone"]["dim"], 3);
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again.as_bytes(), out.stdout.as_slice());
}

#[test]
fn theta_output() {
    let out = xfan(&["theta", "--B", "-", "--beta", "[-1,-1,-1]"], A3);
    assert_eq!(out.status.code(), Some(0));
    let report: ThetaReport = serde_json::from_slice(&out.stdout).unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"].as_array().unwrap().len(), 4);
    assert_eq!(serde_json::to_value(&report).unwrap(), v);
}

#[test]
fn fan_round_trips_and_is_deterministic() {
    let first = xfan(&["fan", "--B", "-", "--exhaustive", "--emit-rays"], A3);
    let second = xfan(&["fan", "--B", "-", "--exhaustive", "--emit-rays"], A3);
    assert_eq!(first.stdout, second.stdout);
    let report: FanReport = serde_json::from_slice(&first.stdout).unwrap();
    assert!(report.complete);
    assert_eq!(report.seeds, 84);
    assert_eq!(report.seeds_up_to_relabelling, 14);
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again.as_bytes(), first.stdout.as_slice());
}

#[test]
fn exit_codes() {
    let code = |args: &[&str], stdin: &str| xfan(args, stdin).status.code();
    assert_eq!(code(&["validate", "--B", "-"], r#"{"B": [[0, 1], [1]]}"#), Some(1));
    assert_eq!(code(&["validate", "--B", "-"], "not json"), Some(1));
    assert_eq!(code(&["validate", "--B", "/nonexistent/b.json"], ""), Some(1));
    assert_eq!(code(&["mutate", "--B", "-", "--seq", "4"], A3), Some(1));
    assert_eq!(code(&["mutate", "--B", "-", "--seq", "1,x"], A3), Some(1));
    assert_eq!(code(&["frobnicate"], ""), Some(1));
    assert_eq!(code(&["theta", "--B", "-", "--beta", "-1,-1,-1"], A3), Some(1));
    assert_eq!(code(&["theta", "--B", "-", "--beta", "[1,2]"], A3), Some(1));
    assert_eq!(code(&["validate", "--B", "-"], r#"{"B": [[0, 1], [1, 0]]}"#), Some(2));
    assert_eq!(code(&["ar", "--B", "-"], r#"{"B": [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]}"#), Some(2));
    assert_eq!(code(&["theta", "--B", "-", "--beta", "[-1,-1]", "--depth", "6"], KRONECKER), Some(2));
    assert_eq!(code(&["fan", "--B", "-", "--exhaustive"], KRONECKER), Some(3));
    assert_eq!(code(&["fan", "--B", "-", "--depth", "4"], KRONECKER), Some(0));
}

#[test]
fn errors_go_to_stderr() {
    let out = xfan(&["mutate", "--B", "-", "--seq", "9"], A3);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}
