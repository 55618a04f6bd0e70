use std::process::{Command, Output};

use serde_json::Value;

fn qca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qca")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_prints_canonical_form() {
    let o = qca(&["eval", "--dim", "2", "--B", "[[1,0],[0,1]]", "e2 &c e1we2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-e1");
    let o = qca(&["eval", "--dim", "3", "meet(e1we2, e2we3)"]);
    assert_eq!(stdout(&o).trim(), "-e2");
}

#[test]
fn eval_json_round_trips() {
    let o = qca(&["eval", "--dim", "3", "--json", "gco(e1we2)"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["terms"].as_array().unwrap().len(), 4);
    let back = qca::expr::Value::from_json(&v).unwrap();
    assert_eq!(back.to_string(), "&t(Id,e1we2) + &t(e1,e2) - &t(e2,e1) + &t(e1we2,Id)");
}

#[test]
fn antipode_uses_both_forms() {
    // N = 1 - tr(BC) + det(BC) = -2 here, so S(e1) = -e1 / N
    let o = qca(&["eval", "--dim", "2", "--B", "[[1,2],[0,1]]", "--C", "[[0,1],[1,0]]", "antipode(e1)"]);
    assert_eq!(stdout(&o).trim(), "1/2*e1");
}

#[test]
fn table_of_clifford_product() {
    let dir = std::env::temp_dir().join(format!("qca-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let b = dir.join("B.json");
    std::fs::write(&b, r#"[["3/2", "-5"], [7, 0]]"#).unwrap();
    let o = qca(&["table", "--product", "cmul", "--dim", "2", "--B", b.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["table"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 4));
    let cell = qca::config::multivector_from_json(&rows[1][2]).unwrap();
    assert_eq!(cell.to_string(), "-5*Id + e1we2");
    let text = stdout(&qca(&["table", "--product", "wedge", "--dim", "2"]));
    assert_eq!(text.lines().count(), 16);
    assert!(text.contains("e1 ^ e2 = e1we2"));
}

#[test]
fn config_file_and_overrides() {
    let dir = std::env::temp_dir().join(format!("qca-cli-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, r#"{"dim": 2, "B": [[1, 0], [0, 1]]}"#).unwrap();
    let path = cfg.to_str().unwrap();
    assert_eq!(stdout(&qca(&["eval", "--config", path, "e1 &c e1"])).trim(), "Id");
    assert_eq!(stdout(&qca(&["eval", "--config", path, "--B", "[[2,0],[0,1]]", "e1 &c e1"])).trim(), "2*Id");
    assert_eq!(qca(&["eval", "--config", path, "--dim", "3", "e1"]).status.code(), Some(2));
}

#[test]
fn errors_exit_with_two() {
    for args in [
        &["eval", "--dim", "2", "e1 +"][..],
        &["eval", "--dim", "2", "e1 &c e2"],
        &["eval", "--dim", "2", "e3"],
        &["eval", "e1"],
        &["eval", "--dim", "2", "--F", "[[1,0],[0,1]]", "e1 . e2"],
        &["eval", "--dim", "2", "--config", "/nonexistent/qca.json", "e1"],
        &["table", "--dim", "2", "--product", "cmul"],
        &["check", "--suite", "nonsense"],
    ] {
        let o = qca(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn check_suites_pass() {
    for suite in ["appendix", "invariants", "antipode", "integrals", "u2"] {
        let o = qca(&["check", "--suite", suite]);
        let out = stdout(&o);
        assert_eq!(o.status.code(), Some(0), "{suite}:\n{out}");
        assert!(out.lines().last().unwrap().ends_with("0 failed"), "{suite}");
    }
    let o = qca(&["check", "--suite", "appendix", "--dim", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn failing_check_exits_with_one() {
    // B C = 1 leaves the configured algebra without an antipode
    let o = qca(&["check", "--suite", "antipode", "--B", "[[1,0],[0,1]]", "--C", "[[1,0],[0,1]]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL configured (B, C)"));
    let o = qca(&["check", "--suite", "antipode", "--B", "[[1,2],[0,1]]", "--C", "[[0,1],[1,0]]"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn malformed_seed_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_qca"))
        .args(["check", "--suite", "invariants", "--dim", "2"])
        .env("QCA_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seed_makes_runs_reproducible() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_qca"))
            .args(["check", "--suite", "antipode", "--json"])
            .env("QCA_SEED", seed)
            .output()
            .unwrap()
    };
    let (a, b) = (run("17"), run("17"));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["passed"], 30);
}
