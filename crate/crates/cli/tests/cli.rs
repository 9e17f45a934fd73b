use std::process::{Command, Output};

use serde_json::{json, Value};

fn mw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mw-opinion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = mw(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("mw-opinion-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn classical_gm3_lists_agree_agree() {
    let doc = json_of(&["classical", "--model", "GM3", "--a", "1", "--b", "1", "--c", "1", "--d", "0.4"]);
    let ne = doc["pure_nash_equilibria"].as_array().unwrap();
    assert!(ne.iter().any(|e| e["profile"] == json!(["Agree", "Agree"]) && e["joint"] == json!(10.0)));
}

#[test]
fn classical_gm1_is_zero_sum() {
    let doc = json_of(&["classical", "--model", "GM1", "--a", "1", "--b", "1"]);
    assert_eq!(doc["zero_sum"], json!(true));
    assert_eq!(doc["pure_nash_equilibria"].as_array().unwrap().len(), 1);
}

#[test]
fn classical_gm2_reports_d_ignored() {
    let out = mw(&["classical", "--model", "GM2", "--d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ignored parameters: d"));
}

#[test]
fn payoff_examples() {
    let doc = json_of(&[
        "payoff", "--model", "GM3", "--state", "entangled-11-33", "--d", "2", "--pa", "0", "--pa1", "1", "--qb",
        "0", "--qb1", "1",
    ]);
    assert_eq!(doc["pipeline"]["payoff_a"], json!(0.5));
    assert_eq!(doc["pipeline"]["payoff_b"], json!(0.5));

    let doc = json_of(&["payoff", "--model", "GM1", "--state", "basis-11", "--pa", "1", "--qb", "1"]);
    assert_eq!(doc["pipeline"]["payoff_a"], json!(0.0));

    let doc = json_of(&[
        "payoff", "--model", "GM2", "--state", "random", "--seed", "3", "--pa", "0.3", "--pa1", "0.2", "--qb", "0.5",
        "--qb1", "0.5",
    ]);
    assert!(doc["pipeline"]["joint"].as_f64().unwrap().abs() <= 1e-12);
}

#[test]
fn find_ne_examples() {
    let doc = json_of(&["find-ne", "--model", "GM3", "--state", "entangled-11-33", "--d", "0.5"]);
    let eqs = doc["equilibria"].as_array().unwrap();
    assert!(eqs.iter().any(|e| e["profile"] == json!(["D", "D"]) && e["payoffs"] == json!([2.0, 2.0])));

    let doc = json_of(&["find-ne", "--model", "GM1", "--state", "basis-11"]);
    assert_eq!(doc["equilibria"][0]["profile"], json!(["C", "C"]));
}

#[test]
fn max_joint_examples() {
    let doc = json_of(&["max-joint", "--model", "GM3", "--d", "1"]);
    assert_eq!(doc["analytic"]["max_value"], json!(4.0));
    assert!(doc["grid"]["max_value"].as_f64().unwrap() <= 4.0);
    let doc = json_of(&["max-joint", "--model", "GM3", "--d", "4", "--grid", "1/5"]);
    assert_eq!(doc["analytic"]["max_value"], json!(1.0));
    assert!(doc["grid"]["max_value"].as_f64().unwrap() <= 1.0 + 1e-12);
}

#[test]
fn config_file_with_flag_override() {
    let cfg = temp_file(
        "cfg.toml",
        "model = \"GM3\"\n[params]\nd = 0.25\n[state]\npreset = \"entangled-11-33\"\n[strategies]\npa = 0.0\npa1 = 1.0\nqb = 0.0\nqb1 = 1.0\n",
    );
    let path = cfg.to_str().unwrap();
    let doc = json_of(&["payoff", "--config", path]);
    assert_eq!(doc["pipeline"]["payoff_a"], json!(4.0));
    let doc = json_of(&["payoff", "--config", path, "--d", "2"]);
    assert_eq!(doc["pipeline"]["payoff_a"], json!(0.5));
    std::fs::remove_file(cfg).ok();
}

#[test]
fn state_file_needs_normalize_flag() {
    let state = temp_file("state.toml", "amplitudes = [[1, 0], [0, 0], [0, 0], [1, 0]]\n");
    let path = state.to_str().unwrap();
    let args = ["find-ne", "--model", "GM1", "--state", path];
    assert_eq!(mw(&args).status.code(), Some(2));
    let mut with_flag = args.to_vec();
    with_flag.push("--normalize");
    let doc = json_of(&with_flag);
    assert_eq!(doc["equilibria"].as_array().unwrap().len(), 4);
    std::fs::remove_file(state).ok();
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(mw(&["classical", "--model", "GM1", "--a", "-1"]).status.code(), Some(2));
    assert_eq!(mw(&["classical"]).status.code(), Some(2));
    assert_eq!(mw(&["max-joint", "--model", "GM1"]).status.code(), Some(2));
    assert_eq!(mw(&["payoff", "--model", "GM3", "--state", "uniform"]).status.code(), Some(2));
    assert_eq!(mw(&["payoff", "--model", "GM1", "--state", "basis-11", "--pa", "2", "--qb", "0"]).status.code(), Some(2));
    assert_eq!(mw(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mw(&["classical", "--config", "/nonexistent/cfg.toml", "--model", "GM1"]).status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["find-ne", "--model", "GM3", "--state", "random", "--seed", "8", "--json"];
    assert_eq!(mw(&args).stdout, mw(&args).stdout);
}
