//! Inverting `Φ` on `Hess = e1 + b_-` by ascending substitution.
//!
//! `cargo run --example hess_section -- A2 1/2 0 3 1 -2/5`

use mfhess::hessenberg::hess_section;
use mfhess::linalg::{parse_q, q_to_string};
use mfhess::mftranslate::phi;
use mfhess::verifier::{Model, ModelOptions};

fn main() -> mfhess::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let label = args.next().unwrap_or_else(|| "A2".into());
    let m = Model::build(&label, 42, &ModelOptions::default())?;
    let mut c: Vec<_> = args.filter_map(|s| parse_q(&s)).collect();
    if c.is_empty() {
        c = (0..m.family.len()).map(|i| mfhess::linalg::qf(i as i64 - 1, 2)).collect();
    }

    println!("chart degrees {:?}, unitriangular: {}", m.chart.degrees, m.chart.is_unitriangular());
    for (beta, p) in m.chart.restricted.iter().enumerate() {
        println!("  q_{} on Hess: {p}", beta + 1);
    }

    let v = hess_section(&m.chart, &c)?;
    for (a, x) in v.iter().enumerate() {
        println!("{:<10} {}", m.alg.basis_label(a), q_to_string(x));
    }
    let back = phi(&m.family, &v);
    println!("Phi(v) == c: {}", back == c);
    let s = m.chart.coords(&m.alg, &v).expect("section lies on Hess");
    println!("chart coordinates [{}]", s.iter().map(q_to_string).collect::<Vec<_>>().join(", "));
    Ok(())
}
