use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mfhess::hessenberg::hess_section;
use mfhess::invariants::{cached_invariant_generators, invariant_generators};
use mfhess::linalg::{parse_q, q_to_string};
use mfhess::mftranslate::phi;
use mfhess::verifier::{run_suite, Model, ModelOptions, OutputFormat, SuiteConfig};

#[derive(Parser)]
#[command(name = "mfhess", version, about = "Exact checks for shift-of-argument algebras and Hessenberg sections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite and write a report.
    Verify {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "MFHESS_CACHE")]
        cache_dir: Option<PathBuf>,
        /// Allow G2 (slow invariant solve).
        #[arg(long)]
        g2: bool,
        /// Use a floating-point prefilter in sampled rank searches.
        #[arg(long)]
        float_shadow: bool,
        /// Record per-check wall-clock times (reports are then no longer byte-identical).
        #[arg(long)]
        timings: bool,
    },
    /// Print the Hess point with prescribed values of q_1..q_b.
    Section {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated rationals, e.g. "1/2,0,3".
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long, env = "MFHESS_CACHE")]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        g2: bool,
    },
    /// Compute the invariant generators, caching them on disk.
    Invariants {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long, env = "MFHESS_CACHE")]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        g2: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> mfhess::error::Result<ExitCode> {
    match cli.command {
        Command::Verify {
            type_label,
            seed,
            format,
            out,
            cache_dir,
            g2,
            float_shadow,
            timings,
        } => {
            let mut cfg = SuiteConfig::new(&type_label, seed);
            cfg.format = match format {
                Format::Text => OutputFormat::Text,
                Format::Json => OutputFormat::Json,
            };
            cfg.cache_dir = cache_dir;
            cfg.allow_g2 = g2;
            cfg.float_shadow = float_shadow;
            cfg.timings = timings;
            let report = run_suite(&cfg);
            let rendered = report.render(cfg.format);
            match out {
                Some(path) => {
                    std::fs::write(&path, &rendered)?;
                    eprint!("{}", report.to_text());
                }
                None => print!("{rendered}"),
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Section {
            type_label,
            seed,
            values,
            cache_dir,
            g2,
        } => {
            let model = Model::build(&type_label, seed, &ModelOptions { allow_g2: g2, cache_dir })?;
            let c = values
                .split(',')
                .map(|s| {
                    parse_q(s.trim()).ok_or_else(|| mfhess::error::Error::Parse {
                        input: s.to_string(),
                        reason: "expected an integer or num/den".into(),
                    })
                })
                .collect::<mfhess::error::Result<Vec<_>>>()?;
            let v = hess_section(&model.chart, &c)?;
            for (a, x) in v.iter().enumerate() {
                println!("{:<12} {}", model.alg.basis_label(a), q_to_string(x));
            }
            let check = phi(&model.family, &v) == c;
            eprintln!("Phi(v) == values: {check}");
            Ok(if check { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Invariants { type_label, cache_dir, g2 } => {
            let label: mfhess::rootdata::TypeLabel = type_label.parse()?;
            if !label.is_supported(g2) {
                return Err(mfhess::error::Error::UnsupportedType(label.to_string()));
            }
            let rs = mfhess::rootdata::build_root_system(&label.cartan()?)?;
            let alg = mfhess::liealgebra::chevalley_algebra(&rs)?;
            let ctx = mfhess::polyring::GradientContext::new(&alg)?;
            let (family, hit) = match &cache_dir {
                Some(dir) => cached_invariant_generators(&alg, &ctx, &label, dir)?,
                None => (invariant_generators(&alg, &ctx)?, false),
            };
            if let Some(dir) = &cache_dir {
                eprintln!("{} {}", if hit { "loaded from" } else { "cached in" }, dir.display());
            }
            for (p, d) in family.generators.iter().zip(&family.degrees) {
                println!("degree {d}: {} terms", p.num_terms());
                println!("  {p}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
