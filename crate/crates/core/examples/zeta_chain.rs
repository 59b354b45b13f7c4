//! The chain `v_0, ..., v_{d-1}` read from `dI(e + t y)` and its recursion through `ζ`.

use mfhess::liealgebra::LieAlgebra;
use mfhess::linalg::{q_to_string, Q};
use mfhess::mftranslate::zeta_chain;
use mfhess::verifier::{Model, ModelOptions};

fn show(alg: &LieAlgebra, v: &[Q]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != Q::from_integer(0.into()))
        .map(|(a, c)| format!("{} {}", q_to_string(c), alg.basis_label(a)))
        .collect();
    if terms.is_empty() { "0".into() } else { terms.join(" + ") }
}

fn main() -> mfhess::error::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "B2".into());
    let m = Model::build(&label, 11, &ModelOptions::default())?;
    for (j, inv) in m.invariants.generators.iter().enumerate() {
        let chain = zeta_chain(&m.alg, &m.ctx, &m.triple, &m.y, inv)?;
        println!("I_{} (degree {}):", j + 1, chain.degree);
        for (i, v) in chain.v.iter().take(chain.degree).enumerate() {
            println!("  v_{i} = {}", show(&m.alg, v));
        }
        let fails = chain.verify(&m.alg, &m.triple.e, &m.y)?;
        println!("  relations: {}", if fails.is_empty() { "all hold".to_string() } else { format!("{fails:?}") });
    }
    Ok(())
}
