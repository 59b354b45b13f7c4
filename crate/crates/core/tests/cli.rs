use std::process::Command;

use mfhess::verifier::{run_suite, Status, SuiteConfig};

fn mfhess() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mfhess"));
    c.env_remove("MFHESS_CACHE");
    c
}

#[test]
fn verify_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let run = mfhess()
        .args(["verify", "--type", "A2", "--seed", "42", "--format", "json", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(run.status.success());
    assert!(String::from_utf8(run.stderr).unwrap().contains("17 passed"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema"], "report_v1");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_exit_code_reflects_failures() {
    let out = mfhess().args(["verify", "--type", "E8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"));
}

#[test]
fn section_round_trips() {
    let out = mfhess()
        .args(["section", "--type", "A2", "--seed", "42", "--values", "1/2,0,3,1,-2/5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 8);
    assert!(String::from_utf8(out.stderr).unwrap().contains("true"));
}

#[test]
fn section_rejects_wrong_arity_and_garbage() {
    let short = mfhess().args(["section", "--type", "A2", "--values", "1,2"]).output().unwrap();
    assert_eq!(short.status.code(), Some(2));
    let bad = mfhess().args(["section", "--type", "A2", "--values", "1,x,3,4,5"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn invariants_cache_flag_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let first = mfhess().args(["invariants", "--type", "B2", "--cache-dir"]).arg(dir.path()).output().unwrap();
    assert!(first.status.success());
    assert!(String::from_utf8(first.stderr).unwrap().contains("cached in"));
    let second = mfhess()
        .args(["invariants", "--type", "B2"])
        .env("MFHESS_CACHE", dir.path())
        .output()
        .unwrap();
    assert!(second.status.success());
    assert!(String::from_utf8(second.stderr).unwrap().contains("loaded from"));
    assert_eq!(first.stdout, second.stdout);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
}

#[test]
fn g2_needs_flag() {
    let out = mfhess().args(["invariants", "--type", "G2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_carry_schema_and_hash() {
    let r = run_suite(&SuiteConfig::new("A2", 42));
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["schema"], "report_v1");
    assert_eq!(v["type"], "A2");
    assert_eq!(v["checks"].as_array().unwrap().len(), 17);
    assert!(v["convention_hash"].as_str().is_some_and(|h| h.len() == 64));
}

#[test]
fn different_seeds_agree_on_verdicts() {
    let a = run_suite(&SuiteConfig::new("B2", 1));
    let b = run_suite(&SuiteConfig::new("B2", 2));
    let sa: Vec<Status> = a.checks.iter().map(|c| c.status).collect();
    let sb: Vec<Status> = b.checks.iter().map(|c| c.status).collect();
    assert_eq!(sa, sb);
    assert!(a.passed());
}
