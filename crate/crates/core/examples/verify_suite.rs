//! Runs the full check suite and prints the text report; `--json` prints `report_v1` JSON.

use mfhess::verifier::{run_suite, OutputFormat, SuiteConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let json = args.iter().any(|a| a == "--json");
    let label = args.iter().find(|a| !a.starts_with("--")).cloned().unwrap_or_else(|| "A2".into());
    let mut cfg = SuiteConfig::new(&label, 42);
    cfg.format = if json { OutputFormat::Json } else { OutputFormat::Text };
    let report = run_suite(&cfg);
    print!("{}", report.render(cfg.format));
    std::process::exit(if report.passed() { 0 } else { 1 });
}
