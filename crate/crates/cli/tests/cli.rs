use std::process::{Command, Output};

use minmod::report::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minmod")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let rep: Report = serde_json::from_slice(&out.stdout).expect("valid report");
    (rep, out.status.code().unwrap())
}

#[test]
fn model_info_values() {
    let (rep, code) = json(&["model", "info", "5", "2"]);
    assert_eq!(code, 0);
    assert_eq!(rep.data["c"], "-22/5");
    assert_eq!(rep.data["c_eff"], "2/5");
    assert_eq!(rep.data["modules"], 2);
}

#[test]
fn e6_row_report() {
    let (rep, code) = json(&["invariant", "verify", "--row", "e6_q12", "12", "11"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = rep.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["M1", "M2", "M3_T", "M3_S"]);
    assert!(rep.pass());
}

#[test]
fn check_failure_exit_code() {
    let (rep, code) = json(&["invariant", "verify", "--row", "E7_q18", "18", "5", "--literal"]);
    assert_eq!(code, 2);
    let m3 = rep.checks.iter().find(|c| c.name == "M3_S").expect("M3_S present");
    assert!(!m3.pass);
}

#[test]
fn json_round_trip_and_determinism() {
    let args = ["smatrix", "5", "3", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let rep: Report = serde_json::from_slice(&a.stdout).unwrap();
    let again = serde_json::to_string_pretty(&rep).unwrap();
    assert_eq!(serde_json::from_str::<Report>(&again).unwrap(), rep);
    assert!(rep.pass());
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["banana"]).status.code(), Some(1));
    assert_eq!(run(&["model", "info", "4", "6"]).status.code(), Some(1));
    assert_eq!(run(&["invariant", "verify", "--row", "E9", "5", "4"]).status.code(), Some(1));
    assert_eq!(run(&["invariant", "verify", "--row", "E6_q12", "5", "4"]).status.code(), Some(1));
    assert_eq!(run(&["extension", "check", "--family", "e6q", "--param", "13"]).status.code(), Some(1));
    assert_eq!(run(&["char", "5", "2", "7", "1"]).status.code(), Some(1));
}

#[test]
fn truncation_exit_three() {
    let (rep, code) = json(&["invariant", "classify", "12", "7", "--limit", "10"]);
    assert_eq!(code, 3);
    assert_eq!(rep.data["truncated"], true);
}

#[test]
fn classify_ising() {
    let (rep, code) = json(&["invariant", "classify", "4", "3", "--cap", "4"]);
    assert_eq!(code, 0);
    assert_eq!(rep.data["invariants"].as_array().unwrap().len(), 1);
    assert_eq!(rep.parameters["cap"], "4");
}

#[test]
fn fusion_targets() {
    // σ × σ = 1 + ε, ε × ε = 1 in the Ising model.
    let (rep, code) = json(&["fusion", "4", "3", "1", "2", "1", "2"]);
    assert_eq!(code, 0);
    assert_eq!(rep.data, serde_json::json!(["(1,1)", "(1,3)"]));
    let (rep, _) = json(&["fusion", "4", "3", "2", "1", "2", "1"]);
    assert_eq!(rep.data, serde_json::json!(["(1,1)"]));
}

#[test]
fn character_order_flag() {
    let (rep, code) = json(&["char", "4", "3", "1", "1", "--order", "6"]);
    assert_eq!(code, 0);
    assert_eq!(rep.data["coefficients"], serde_json::json!(["1", "0", "1", "1", "2", "2", "3"]));
}

#[test]
fn branching_and_extension() {
    let (rep, code) = json(&["branching", "verify", "3", "2", "--order", "10"]);
    assert_eq!(code, 0);
    assert!(rep.checks.iter().any(|c| c.name == "chi_u_shape"));
    let (rep, code) = json(&["extension", "check", "--family", "e6q", "--param", "11", "--order", "10"]);
    assert_eq!(code, 0);
    assert_eq!(rep.data["descriptor"]["weights"], serde_json::json!(["0", "8"]));
}

#[test]
fn config_file_and_override() {
    let dir = std::env::temp_dir().join(format!("minmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(&path, "# defaults for this run\norder = 5\ncap = 2\n").unwrap();
    let p = path.to_str().unwrap();
    let (rep, _) = json(&["char", "4", "3", "1", "1", "--config", p]);
    assert_eq!(rep.parameters["order"], "5");
    assert_eq!(rep.data["order"], 5);
    let (rep2, _) = json(&["char", "4", "3", "1", "1", "--config", p, "--order", "7"]);
    assert_eq!(rep2.parameters["order"], "7");
    assert_ne!(rep.versions.config_hash, rep2.versions.config_hash);
    std::fs::write(&path, "colour = red\n").unwrap();
    assert_eq!(run(&["model", "info", "5", "2", "--config", p]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}
