use std::collections::BTreeMap;
use std::thread;

use mfhess::verifier::{run_suite, Status, SuiteConfig, VerificationReport, CHECKS};

const TYPES: [&str; 7] = ["A1", "A2", "A1xA1", "B2", "C2", "A3", "G2"];
const SEED: u64 = 42;

fn suite(label: &str, seed: u64) -> VerificationReport {
    let mut cfg = SuiteConfig::new(label, seed);
    cfg.allow_g2 = true;
    run_suite(&cfg)
}

struct Run {
    label: &'static str,
    report: VerificationReport,
    repeat_identical: bool,
}

fn run_all(labels: &[&'static str]) -> Vec<Run> {
    thread::scope(|s| {
        let handles: Vec<_> = labels
            .iter()
            .map(|&label| {
                s.spawn(move || {
                    let report = suite(label, SEED);
                    let again = suite(label, SEED);
                    Run {
                        label,
                        repeat_identical: report.to_json() == again.to_json() && report.to_text() == again.to_text(),
                        report,
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}

fn criterion_failures(runs: &[Run], id: u32) -> Vec<String> {
    let mut bad = Vec::new();
    for r in runs {
        match r.report.check(id) {
            Some(c) if c.status == Status::Pass => {}
            Some(c) => bad.push(format!("{}: {:?} {}", r.label, c.status, c.detail)),
            None => bad.push(format!("{}: missing", r.label)),
        }
        if id == 17 && !r.repeat_identical {
            bad.push(format!("{}: reports differ between runs", r.label));
        }
    }
    bad
}

fn print_and_collect(runs: &[Run]) -> BTreeMap<u32, Vec<String>> {
    let types: Vec<&str> = runs.iter().map(|r| r.label).collect();
    let mut out = BTreeMap::new();
    for (id, name, _) in CHECKS {
        let bad = criterion_failures(runs, id);
        let verdict = if bad.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {name:<24} {verdict}  [{}]", types.join(", "));
        for b in &bad {
            println!("    {b}");
        }
        out.insert(id, bad);
    }
    out
}

fn failed_ids(results: &BTreeMap<u32, Vec<String>>) -> Vec<u32> {
    results.iter().filter(|(_, b)| !b.is_empty()).map(|(id, _)| *id).collect()
}

fn main() {
    let runs = run_all(&TYPES);
    let failed = failed_ids(&print_and_collect(&runs));
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", CHECKS.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
