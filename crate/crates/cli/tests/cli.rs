use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn leibniz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leibniz"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs with JSON output and returns (exit code, parsed report or stderr).
fn run_json(args: &[&str]) -> (i32, Result<Value, String>) {
    let mut all = args.to_vec();
    all.extend(["--report", "json", "--no-timing"]);
    let out = leibniz(&all);
    let code = out.status.code().expect("exit code");
    let parsed = if code == 0 {
        Ok(serde_json::from_slice(&out.stdout).expect("json report"))
    } else {
        Err(String::from_utf8_lossy(&out.stderr).into_owned())
    };
    (code, parsed)
}

fn result(args: &[&str]) -> Value {
    match run_json(args) {
        (0, Ok(v)) => v["result"].clone(),
        (code, other) => panic!("{args:?} exited {code}: {other:?}"),
    }
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("leibniz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn check_reports_the_l5_obstruction() {
    let r = result(&["check", "l5"]);
    assert_eq!(r["lie"], true);
    assert_eq!(r["metabelian"], false);
    assert_eq!(r["metabelian_witness"], "[[e1,e2],[e1,e3]] = e4");
    assert_eq!(r["derived_dims"], serde_json::json!([4, 3, 1, 0]));
    assert_eq!(r["partial_skew"]["holds"], true);
}

#[test]
fn check_ex3dim_is_metabelian_non_lie() {
    let r = result(&["check", "ex3dim"]);
    assert_eq!(r["lie"], false);
    assert_eq!(r["metabelian"], true);
    assert_eq!(r["abelian_by_abelian"], true);
}

#[test]
fn check_reports_non_leibniz_tables_with_a_witness() {
    let path = write_temp(
        "bad.json",
        r#"{"field": "Q", "dim": 2, "brackets": [[1, 1, 2, "1"], [2, 1, 1, "1"]]}"#,
    );
    let r = result(&["check", path.to_str().unwrap()]);
    assert_eq!(r["leibniz"], false);
    assert!(r["leibniz_witness"].as_str().unwrap().starts_with("[e"));
}

#[test]
fn malformed_coefficient_is_a_positional_input_error() {
    let path = write_temp(
        "zero-den.json",
        "{\"field\": \"Q\", \"dim\": 2,\n \"brackets\": [[1, 1, 2, \"1/0\"]]}",
    );
    let (code, err) = run_json(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    let err = err.unwrap_err();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn reduction_warns_when_constants_vanish() {
    let out = leibniz(&["check", "l5", "--field", "GF:2"]);
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("warning: l5: coefficient of e4 in [e1, e4] vanishes over GF(2)"),
        "{stderr}"
    );
}

#[test]
fn ito_examples() {
    let r = result(&["ito", "ex5dim", "--field", "GF:2", "--exhaustive"]);
    assert_eq!(r["max_abelian_sum_dim"], 4);
    assert_eq!(r["spanning_pairs"], 0);
    let r = result(&["ito", "ex3dim", "--field", "GF:3", "--exhaustive"]);
    assert_eq!(r["spanning_pairs"], 0);
    let r = result(&["ito", "heisenberg", "--field", "GF:2", "--exhaustive"]);
    assert!(r["spanning_pairs"].as_u64().unwrap() >= 1);
    assert_eq!(r["metabelian"], true);
}

#[test]
fn ito_max_dim_pairs_lists_the_maximal_pairs() {
    let r = result(&[
        "ito",
        "ex5dim",
        "--field",
        "GF:2",
        "--exhaustive",
        "--max-dim-pairs",
    ]);
    let pairs = r["maximal_pairs"].as_array().unwrap();
    assert!(!pairs.is_empty());
    assert!(pairs.iter().all(|p| p["sum_dim"] == 4));
}

#[test]
fn ito_refuses_exhaustive_search_over_q() {
    let (code, err) = run_json(&["ito", "l5", "--exhaustive"]);
    assert_eq!(code, 2);
    assert!(err.unwrap_err().contains("finite field"));
}

#[test]
fn ito_verifies_a_supplied_decomposition_over_q() {
    let w = write_temp(
        "heis-w.json",
        r#"{"A": [[1, 0, 0], [0, 0, 1]], "B": [[0, 1, 0], [0, 0, "1/2"]]}"#,
    );
    let r = result(&["ito", "heisenberg", "--witness", w.to_str().unwrap()]);
    assert_eq!(r["mode"], "SuppliedWitness");
    assert_eq!(r["metabelian"], true);
    assert_eq!(r["ito_violations"], serde_json::json!([]));

    let bad = write_temp(
        "l5-w.json",
        r#"{"A": [[1, 0, 0, 0], [0, 1, 0, 0]], "B": [[0, 0, 1, 0], [0, 0, 0, 1]]}"#,
    );
    let (code, err) = run_json(&["ito", "l5", "--witness", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.unwrap_err().contains("A is not abelian"));
}

#[test]
fn census_matches_pinned_counts() {
    let r = result(&["census", "--field", "GF:2", "--dim", "2"]);
    assert_eq!(r["tables_total"], 256);
    assert_eq!(r["leibniz_tables"], 13);
    assert_eq!(r["decomposable_tables"], 10);
    assert_eq!(r["ito_violations"], 0);
    let r = result(&["census", "--field", "GF:3", "--dim", "2", "--ideal-form"]);
    assert_eq!(r["leibniz_tables"], 41);
    assert_eq!(r["ideal_violations"], 0);
}

#[test]
fn census_over_budget_exits_3() {
    let (code, err) = run_json(&["census", "--field", "GF:2", "--dim", "3"]);
    assert_eq!(code, 3);
    assert!(err.unwrap_err().contains("budget"));
    let (code, _) = run_json(&["census", "--field", "GF:3", "--dim", "2", "--budget", "100"]);
    assert_eq!(code, 3);
}

#[test]
fn classify_examples() {
    assert_eq!(result(&["classify", "ex3dim"])["family"], "P_f");
    let d2 = write_temp(
        "d2.json",
        r#"{"field": "Q", "dim": 2, "brackets": [[1, 2, 1, "1"]]}"#,
    );
    assert_eq!(
        result(&["classify", d2.to_str().unwrap()])["family"],
        "P_lambda"
    );
    assert_eq!(result(&["classify", "b2"])["family"], "P_Lie");
    let (code, err) = run_json(&["classify", "l5"]);
    assert_eq!(code, 2);
    assert!(err.unwrap_err().contains("dim g' = 3"));
}

#[test]
fn iso_search_and_witness_verification() {
    let a = write_temp(
        "wa.json",
        r#"{"field": "Q", "dim": 2, "brackets": [[1, 2, 1, "1"]]}"#,
    );
    let b = write_temp(
        "wb.json",
        r#"{"field": "Q", "dim": 2, "brackets": [[1, 2, 1, "2"]]}"#,
    );
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());

    let r = result(&["iso", a, b, "--field", "GF:5"]);
    assert_eq!(r["isomorphic"], true);
    assert!(r["algebra_map"].is_array());

    let w = write_temp("w.json", r#"{"v": ["0"], "u": "1", "psi": [["1/2"]]}"#);
    let r = result(&["iso", a, b, "--verify-witness", w.to_str().unwrap()]);
    assert_eq!(r["witness_verified"], true);
    assert_eq!(r["isomorphic"], true);

    let wrong = write_temp("w-wrong.json", r#"{"v": ["0"], "u": "1", "psi": [["1"]]}"#);
    let (code, _) = run_json(&["iso", a, b, "--verify-witness", wrong.to_str().unwrap()]);
    assert_eq!(code, 2);

    let r = result(&["iso", "ex3dim", "b2", "--field", "GF:3"]);
    assert_eq!(r["isomorphic"], false);
}

#[test]
fn aut_reports_order_and_cross_checks() {
    let t = write_temp(
        "t.json",
        r#"{"field": {"GF": 2}, "p_dim": 2, "lambda": ["1", "0"], "Lambda": ["0", "0"], "f": [["0", "0"], ["0", "0"]]}"#,
    );
    let r = result(&["aut", t.to_str().unwrap()]);
    assert_eq!(r["order"], 2);
    assert_eq!(r["brute_force_order"], 2);
    assert!(r["checks"].as_object().unwrap().values().all(|v| v == true));
    let r = result(&["aut", "ex3dim", "--field", "GF:3", "--elements"]);
    assert_eq!(
        r["elements"].as_array().unwrap().len(),
        r["order"].as_u64().unwrap() as usize
    );
}

#[test]
fn reports_are_deterministic_and_text_mode_works() {
    let a = leibniz(&[
        "check",
        "ex5dim",
        "--report",
        "json",
        "--no-timing",
        "--seed",
        "5",
    ]);
    let b = leibniz(&[
        "check",
        "ex5dim",
        "--report",
        "json",
        "--no-timing",
        "--seed",
        "5",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["command"], "check");
    assert!(v["tool_version"].is_string());
    let text = leibniz(&["check", "ex5dim"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.starts_with("command: check\n"));
    assert!(text.contains("timing_ms: "));
}
