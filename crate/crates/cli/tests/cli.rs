use std::process::Command;

use klein168_cli::checks::CHECKS;
use klein168_cli::config::Config;
use klein168_cli::context::Context;
use klein168_cli::report::{run_report, select};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_klein168"))
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = bin().arg("--json").args(args).output().expect("spawn");
    let code = out.status.code().expect("exit code");
    let v = if out.stdout.is_empty() { Value::Null } else { serde_json::from_slice(&out.stdout).expect("json") };
    (code, v)
}

#[test]
fn unknown_check_is_usage_error() {
    let out = bin().args(["report", "--check", "no-such-check"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown check id"));
}

#[test]
fn bad_flag_is_usage_error() {
    let out = bin().args(["invariants", "--space", "p5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_input_file_is_input_error() {
    let out = bin().args(["catalecticant", "--quartic", "/nonexistent/q.txt"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn orthogonality_check_passes() {
    let (code, v) = run_json(&["report", "--check", "appendix-b-orthogonality"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], 1);
    assert_eq!(v["checks"][0]["id"], "appendix-b-orthogonality");
    assert_eq!(v["checks"][0]["status"], "pass");
    assert_eq!(v["checks"][0]["payload"]["sum_of_squares"], 168);
}

#[test]
fn failing_check_exits_one() {
    let (code, v) = run_json(&["report", "--check", "lemma-sigma28-orbit-sums"]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"][0]["status"], "fail");
}

#[test]
fn list_matches_registry() {
    let (code, v) = run_json(&["report", "--list"]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    let expected: Vec<&str> = CHECKS.iter().map(|(k, _)| *k).collect();
    assert_eq!(ids, expected);
}

#[test]
fn group_info_orders() {
    let (code, v) = run_json(&["group-info", "--group", "sl27"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 336);
    assert_eq!(v["classes"].as_array().unwrap().len(), 11);
    let (_, v) = run_json(&["group-info", "--group", "psl27-p2"]);
    assert_eq!(v["order"], 168);
    assert_eq!(v["classes"].as_array().unwrap().len(), 6);
}

#[test]
fn decompose_sym4_u4() {
    let (code, v) = run_json(&["decompose", "sym(U4,4)"]);
    assert_eq!(code, 0);
    assert_eq!(v["decomposition"], "I + 2*W6 + 2*W7 + W8");
}

#[test]
fn hexagon_cases_are_inconsistent() {
    for case in ["z4", "final"] {
        let (code, v) = run_json(&["hexagon", "--case", case]);
        assert_eq!(code, 0);
        assert_eq!(v["status"], "inconsistent");
        assert_eq!(v["rank"], 6);
        assert_eq!(v["augmented_rank"], 7);
    }
}

#[test]
fn quartic_from_file() {
    let dir = std::env::temp_dir().join(format!("klein168-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fermat.txt");
    std::fs::write(&path, "# Fermat quartic\nx^4 + y^4 + z^4\n").unwrap();
    let (code, v) = run_json(&["catalecticant", "--quartic", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], 3);
    assert_eq!(v["degenerate"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_file_is_read() {
    let dir = std::env::temp_dir().join(format!("klein168-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.toml");
    std::fs::write(&good, "rh_gmax = 10\n").unwrap();
    let (code, v) = run_json(&["--config", good.to_str().unwrap(), "rh"]);
    assert_eq!(code, 0);
    assert_eq!(v.as_array().unwrap().len(), 3);
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "no_such_key = 1\n").unwrap();
    let out = bin().args(["--config", bad.to_str().unwrap(), "rh"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn report_is_deterministic_modulo_timing() {
    let ids = select(&[
        "appendix-b-psl-table".to_string(),
        "group-class-sizes".to_string(),
        "lemma-sporadic-genera-table".to_string(),
        "property-spot-checks".to_string(),
    ])
    .unwrap();
    let a = run_report(&Context::new(Config::default()), &ids).without_timing();
    let b = run_report(&Context::new(Config::default()), &ids).without_timing();
    assert_eq!(a, b);
    assert_eq!(a["failed"], 0);
}
