use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grograde")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).expect("json report"))
}

#[test]
fn missing_and_malformed_inputs_exit_2() {
    let out = run(&["groupoid", "validate", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonexistent"));
    let dir = std::env::temp_dir().join(format!("grograde-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["lpa", "report", bad.to_str().unwrap(), "-p", "2"]).status.code(), Some(2));
    assert_eq!(run(&["lpa", "report", &data("lpa_example.json"), "-p", "4"]).status.code(), Some(2));
}

#[test]
fn lpa_report_reproduces_the_example() {
    let (code, v) = json(&["lpa", "report", &data("lpa_example.json"), "-p", "2"]);
    assert_eq!(code, 0);
    let rep = &v["result"]["report"];
    assert_eq!(rep["epsilon_strong"], true);
    assert_eq!(rep["strongly_graded"], false);
    assert_eq!(rep["strong_witness"]["g"], "(v1,v3)");
    assert_eq!(rep["strong_witness"]["h"], "(v3,v1)");
    assert_eq!(v["verdict"], true);
}

#[test]
fn strong_check_fails_with_exit_1() {
    let (code, v) = json(&["alg", "strong", &data("morita/algebra.json"), "--groupoid", &data("morita/groupoid.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["strongly_graded"], false);
    let (code, _) = json(&["alg", "strong", &data("z3_z2/algebra.json"), "--groupoid", &data("z2.groupoid.json")]);
    assert_eq!(code, 0);
}

#[test]
fn backends_agree_through_the_cli() {
    for module in ["z2_trivial_z3.module.json", "partial_z2/module.json", "swap/module.json"] {
        let (_, a) = json(&["coh", "compute", &data(module), "-n", "2", "--backend", "enumerate"]);
        let (_, b) = json(&["coh", "compute", &data(module), "-n", "2", "--backend", "snf"]);
        assert_eq!(a["result"]["order"], b["result"]["order"], "{module}");
        assert_eq!(a["result"]["factors"], b["result"]["factors"], "{module}");
    }
    let (_, v) = json(&["coh", "compute", &data("z2_trivial_z3.module.json"), "-n", "2"]);
    assert_eq!(v["result"]["order"], 2);
}

fn leaves(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => m.values().for_each(|x| leaves(x, out)),
        Value::Array(a) => a.iter().for_each(|x| leaves(x, out)),
        Value::String(s) => out.push(s.clone()),
        other => out.push(other.to_string()),
    }
}

#[test]
fn text_and_json_carry_the_same_values() {
    let args = ["skew", "check", &data("partial_z2/action.json")];
    let (_, v) = json(&args);
    let text = String::from_utf8(run(&args).stdout).unwrap();
    let mut vals = Vec::new();
    leaves(&v, &mut vals);
    for x in vals {
        assert!(text.contains(&x), "{x} missing from text report");
    }
}

#[test]
fn thread_count_does_not_change_the_report() {
    let path = data("z3_z2/algebra.json");
    let grp = data("z2.groupoid.json");
    let a = run(&["--json", "--threads", "1", "classify", &path, "--groupoid", &grp]);
    let b = run(&["--json", "--threads", "3", "classify", &path, "--groupoid", &grp]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["h2_order"], 2);
    assert_eq!(v["result"]["classes"], 2);
}

#[test]
fn constructed_groupoids_validate() {
    let dir = std::env::temp_dir().join(format!("grograde-construct-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("m.json");
    let code = run(&["groupoid", "construct", "matrix", "--order", "3", "--objects", "a,b", "--out", out.to_str().unwrap()]).status.code();
    assert_eq!(code, Some(0));
    let (code, v) = json(&["groupoid", "validate", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["groupoid"]["morphisms"], 12);
}
