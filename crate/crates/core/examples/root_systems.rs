//! Positive roots, degrees and layer dimensions for a few Cartan types.
//!
//! `cargo run --example root_systems -- B3`

use mfhess::rootdata::{build_root_system, classify, dual_partition, height, CartanMatrix, TypeLabel};

fn main() -> mfhess::error::Result<()> {
    let labels: Vec<String> = std::env::args().skip(1).collect();
    let labels = if labels.is_empty() {
        vec!["A2".into(), "B2".into(), "G2".into(), "A1xA1".into()]
    } else {
        labels
    };
    for label in labels {
        let t: TypeLabel = label.parse()?;
        let rs = build_root_system(&t.cartan()?)?;
        println!("{t}: rank {}, dim g = {}, h = {}", rs.rank, rs.algebra_dim(), rs.coxeter_number);
        for r in &rs.positive_roots {
            println!("  {:?} height {}", r, height(r));
        }
        println!("  degrees {:?}  layers r_m {:?}", rs.degrees, rs.layer_dims);
        println!("  dual partition of degrees {:?}", dual_partition(&rs.degrees));
    }

    let cm = CartanMatrix::new(vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]])?;
    println!("classified {:?} as {}", cm.entries(), classify(&cm)?);
    Ok(())
}
