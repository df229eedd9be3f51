use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycleparity"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    fs::read_to_string(path).unwrap()
}

#[test]
fn verify_theorem1_single() {
    let out = run(&["verify", "--theorem1", "--n", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = &v[0];
    assert_eq!(r["check"], "theorem1");
    assert_eq!(r["counts"]["even_cycles"], 26);
    assert_eq!(r["counts"]["odd_cycles"], 24);
    assert_eq!(r["actual"], "2");
    assert_eq!(r["passed"], true);
    assert_eq!(r["witness"], Value::Null);
}

#[test]
fn verify_small_suite() {
    let out = run(&["verify", "--all", "--max-n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("check"));
    assert!(text.ends_with(" checks, 0 failed\n"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--eq4", "--n", "3", "--k", "5"][..],
        &["verify", "--max-n", "9"],
        &["verify", "--psi", "--n", "8"],
        &["verify", "--k", "2"],
        &["verify", "--format", "dot"],
        &["verify", "--bogus"],
        &["table", "--stirling", "--max-n", "0"],
        &["trace", "(1,2)(3) | C=(1,2) | f: 3->1"],
        &["trace", "(1,2)(3) | C=(1,3)"],
        &["trace", "(1,2,3) | C=(1,2,3)", "--n", "4"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn trace_figure_one() {
    let element = fixture("figure1.txt");
    let out = run(&["trace", element.trim(), "--k", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("chain (2,3,5), pivot 2 (not free)"), "{text}");
    assert!(text.contains(&format!("x1: {}", fixture("figure2.txt").trim())), "{text}");
    assert!(text.contains("orbit length 2"));
}

#[test]
fn trace_json_and_fixed_point() {
    let out = run(&["trace", "(1)(2,3) | C=(2,3) | f: 1->1", "--k", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["orbit"].as_array().unwrap().len(), 1);
    assert_eq!(v["orbit"][0]["step"], "fixed point");

    let element = fixture("figure2.txt");
    let out = run(&["trace", element.trim(), "--k", "8", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["orbit"][0]["chain"], serde_json::json!([1, 2, 3, 5]));
    assert_eq!(v["orbit"][0]["pivot"], 2);
    assert_eq!(v["orbit"][0]["pivot_free"], true);
    assert_eq!(v["closed"], true);
}

#[test]
fn trace_phi() {
    let out = run(&["trace", "(1,2,3) | C=(1,2,3)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("x1: (1,3)(2) | C=(1,3)  sign -1"), "{text}");
}

#[test]
fn dot_matches_golden() {
    let element = fixture("figure1.txt");
    let dir = std::env::temp_dir().join(format!("cycleparity-dot-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("figure1.dot");
    let out = run(&["trace", element.trim(), "--k", "8", "--format", "dot", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text, fixture("figure1.dot"));
    assert_eq!(fs::read_to_string(&path).unwrap(), text);
    assert_eq!(text.matches(" -> ").count(), 11);
    assert_eq!(text.matches("penwidth").count(), 5);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn tables() {
    let out = run(&["table", "--stirling", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "c(n,i), i = 1..n\nn=1: 1\nn=2: 1 1\nn=3: 2 3 1\nn=4: 6 11 6 1\nn=5: 24 50 35 10 1\n"
    );
    let out = run(&["table", "--eq4", "--n", "3", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["eq4"]["3"], serde_json::json!(["-1", "2"]));
}
