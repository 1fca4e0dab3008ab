//! End-to-end tests of the binary: exit codes, JSON schema, determinism,
//! and the seed environment override.

use hyperlie::families::{FamilyElement, FamilyId};
use hyperlie::geometry::{classify, ClassificationReport};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperlie"))
        .args(args)
        .env_remove("HYPERLIE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn exp_identity_on_zero_generator() {
    let out = run(&["exp", "--family", "hc1", "--params", "0,0,0,0"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["command"], "exp");
    assert_eq!(v["results"]["branch"], "Degenerate");
    assert_eq!(v["results"]["max_abs_diff"], 0.0);
    for (i, row) in v["results"]["closed_form"].as_array().unwrap().iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(x.as_f64().unwrap(), if i == j { 1.0 } else { 0.0 });
        }
    }
}

#[test]
fn exp_reports_known_coefficients() {
    let out = run(&["exp", "--family", "hc4.1", "--params", "1,1,0,0"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!((v["results"]["t"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["results"]["u"].as_f64().unwrap() - (-1.0f64).exp()).abs() < 1e-12);
    assert!(v["results"]["max_abs_diff"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn exp_text_format_prints_matrices() {
    let out = run(&["exp", "--family", "hc2", "--params", "0,1,1,1", "--format", "text"]);
    assert!(out.status.success());
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("generator A"));
    assert!(s.contains("closed form"));
    assert!(s.contains("max-abs difference"));
}

#[test]
fn classify_json_round_trips() {
    let out = run(&["classify", "--family", "hc3.2", "--params", "1,1,1,1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["results"]["verdict"], "W0");
    let parsed: ClassificationReport = serde_json::from_value(v["results"].clone()).unwrap();
    let local = classify(
        &FamilyElement::new(FamilyId::Hc3_2, [1.0, 1.0, 1.0, 1.0]),
        1e-10,
    )
    .unwrap();
    assert_eq!(parsed, local);
}

#[test]
fn classify_degenerate_warns_but_succeeds() {
    let out = run(&["classify", "--family", "hc2", "--params", "0,0,0,0"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["results"]["verdict"], "K");
    assert_eq!(v["results"]["degenerate"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}

#[test]
fn classify_defaults_params_to_zero() {
    let out = run(&["classify", "--family", "hc1"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["results"]["verdict"], "K");
}

#[test]
fn unknown_family_is_usage_error() {
    let out = run(&["exp", "--family", "hc9", "--params", "0,0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_params_are_usage_errors() {
    for bad in ["1,2,3", "1,2,3,x", "1,2,3,inf"] {
        let out = run(&["exp", "--family", "hc2", "--params", bad]);
        assert_eq!(out.status.code(), Some(2), "params '{bad}'");
    }
}

#[test]
fn table1_all_families_match() {
    let out = run(&["table1", "--trials", "20"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["verdicts"]["families_matching"], 8);
    assert_eq!(v["verdicts"]["all_pass"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 8);
}

#[test]
fn table1_is_deterministic_for_a_seed() {
    let a = run(&["table1", "--trials", "10", "--seed", "7"]);
    let b = run(&["table1", "--trials", "10", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn env_seed_overrides_flag() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_hyperlie"))
        .args(["table1", "--trials", "10", "--seed", "42"])
        .env("HYPERLIE_SEED", "7")
        .output()
        .unwrap();
    let with_flag = run(&["table1", "--trials", "10", "--seed", "7"]);
    assert_eq!(with_env.stdout, with_flag.stdout);
    let v = stdout_json(&with_env);
    assert_eq!(v["config"]["seed"], 7);
}

#[test]
fn verify_passes_and_seed_does_not_change_verdicts() {
    let a = run(&["verify", "--trials", "20"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = run(&["verify", "--trials", "20", "--seed", "7"]);
    assert!(b.status.success());
    let pa: Vec<bool> = stdout_json(&a)["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["passed"].as_bool().unwrap())
        .collect();
    let pb: Vec<bool> = stdout_json(&b)["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["passed"].as_bool().unwrap())
        .collect();
    assert_eq!(pa, pb);
    assert!(pa.iter().all(|p| *p));
}

#[test]
fn verify_text_format_lists_suites() {
    let out = run(&["verify", "--trials", "10", "--format", "text"]);
    assert!(out.status.success());
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("quaternion-identities"));
    assert!(s.contains("PASS"));
}
