//! CLI regression tests against golden outputs in `tests/golden/`.
//! Set `UPDATE_GOLDEN=1` to rewrite the golden files.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use morifan_census::declared::DEFAULT_CONFIG;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn morifan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morifan"))
        .current_dir(root())
        .args(args)
        .output()
        .expect("failed to spawn morifan")
}

fn assert_golden(name: &str, args: &[&str]) {
    let output = morifan(args);
    assert!(
        output.status.success(),
        "morifan {args:?} failed: {:?}\nstderr:\n{}",
        output.status,
        String::from_utf8_lossy(&output.stderr)
    );
    let path = root().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &output.stdout).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("failed to read golden file {}", path.display()));
    assert_eq!(
        String::from_utf8_lossy(&output.stdout),
        expected,
        "stdout of {args:?} does not match {name}"
    );
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn census_table() {
    assert_golden("census.txt", &["census"]);
}

#[test]
fn census_json() {
    assert_golden("census.json", &["census", "--format", "json"]);
}

#[test]
fn verify_table() {
    assert_golden("verify.txt", &["verify"]);
}

#[test]
fn verify_csv() {
    assert_golden("verify.csv", &["verify", "--format", "csv"]);
}

#[test]
fn orbits() {
    assert_golden("orbits_m6_0_3.txt", &["orbits", "-6", "0", "3"]);
    assert_golden("orbits_1_1_1.json", &["orbits", "1", "1", "1", "--format", "json"]);
    assert_golden("orbits_0_m1_1.csv", &["--format", "csv", "orbits", "0", "-1", "1"]);
}

#[test]
fn closure_on_triple_graph() {
    assert_golden(
        "closure_m6_0_3.txt",
        &["closure", "--graph", "data/graphs/triple_m6_0_3.graph", "--moves", "triple-group"],
    );
    assert_golden(
        "closure_0_0_0.json",
        &["closure", "--graph", "data/graphs/triple_0_0_0.graph", "--moves", "triple-group", "--format", "json"],
    );
}

#[test]
fn closure_parallel_matches() {
    let serial = morifan(&["closure", "--graph", "data/graphs/triple_m6_0_3.graph", "--moves", "shift"]);
    let parallel = morifan(&[
        "closure", "--graph", "data/graphs/triple_m6_0_3.graph", "--moves", "shift", "--parallel",
    ]);
    assert!(serial.status.success());
    assert_eq!(serial.stdout, parallel.stdout);
    assert!(String::from_utf8_lossy(&serial.stdout).contains("class count       3"));
}

#[test]
fn audit_default_claims() {
    assert_golden("audit.csv", &["audit", "--format", "csv"]);
}

#[test]
fn verify_fails_on_changed_symmetric_count() {
    let config = scratch(
        "t_symmetric_10.cfg",
        &DEFAULT_CONFIG.replace("t_symmetric: count=11", "t_symmetric: count=10"),
    );
    let out = morifan(&["verify", "--config", config.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["census"]["t_cones"], 744);
    assert_eq!(report["exit_status"], 1);
}

#[test]
fn empty_claims_file() {
    let claims = scratch("empty.claims", "");
    let out = morifan(&["verify", "--claims", claims.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["claims"]["verdicts"].as_array().unwrap().len(), 0);

    let out = morifan(&["audit", "--claims", claims.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn audit_exits_one_on_unexpected_verdict() {
    let claims = scratch("wrong.claims", "claim t: 118*6+11*3 == 747 expect=holds\n");
    let out = morifan(&["audit", "--claims", claims.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn input_errors_exit_two() {
    let bad_claims = scratch("bad.claims", "claim empty: ==\n");
    let bad_config = scratch("bad.cfg", "entry x: count=10 breakdown=5+4\n");
    let bad_graph = scratch("bad.graph", "node a\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["audit", "--claims", bad_claims.to_str().unwrap()],
        vec!["verify", "--claims", bad_claims.to_str().unwrap()],
        vec!["verify", "--config", bad_config.to_str().unwrap()],
        vec!["census", "--config", bad_config.to_str().unwrap()],
        vec!["closure", "--graph", bad_graph.to_str().unwrap(), "--moves", "none"],
        vec!["closure", "--graph", "data/graphs/triple_0_0_0.graph", "--moves", "flops"],
        vec!["verify", "--claims", "/nonexistent/claims.txt"],
        vec!["orbits", "2000000", "0", "0"],
        vec!["orbits", "1", "2"],
        vec!["no-such-command"],
    ];
    for args in cases {
        let out = morifan(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = morifan(&["audit", "--claims", bad_claims.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1, column 14"));
}

#[test]
fn closure_size_limit_is_a_failure() {
    let mut text = String::new();
    for i in 0..13 {
        text.push_str(&format!("node n{i} label=0\n"));
    }
    let graph = scratch("big.graph", &text);
    let out = morifan(&["closure", "--graph", graph.to_str().unwrap(), "--moves", "none"]);
    assert_eq!(out.status.code(), Some(1));
    let out = morifan(&["closure", "--graph", graph.to_str().unwrap(), "--moves", "none", "--max-nodes", "13"]);
    assert_eq!(out.status.code(), Some(0));
}
