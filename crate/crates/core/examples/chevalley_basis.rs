//! Chevalley basis, structure constants and the principal triple.

use mfhess::liealgebra::{chevalley_algebra, principal_decomposition, principal_triple};
use mfhess::linalg::q_to_string;
use mfhess::rootdata::{build_root_system, TypeLabel};

fn show(alg: &mfhess::liealgebra::LieAlgebra, v: &[mfhess::linalg::Q]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| *c != &mfhess::linalg::q(0))
        .map(|(a, c)| format!("{} {}", q_to_string(c), alg.basis_label(a)))
        .collect();
    if terms.is_empty() { "0".into() } else { terms.join(" + ") }
}

fn main() -> mfhess::error::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "B2".into());
    let t: TypeLabel = label.parse()?;
    let alg = chevalley_algebra(&build_root_system(&t.cartan()?)?)?;
    println!("{t}: dim {}, basis {:?}", alg.dim(), (0..alg.dim()).map(|a| alg.basis_label(a)).collect::<Vec<_>>());

    let n = alg.num_positive();
    for i in 0..n {
        for j in i + 1..n {
            let br = alg.bracket(&alg.basis_vector(alg.pos(i)), &alg.basis_vector(alg.pos(j)))?;
            println!("[{}, {}] = {}", alg.basis_label(alg.pos(i)), alg.basis_label(alg.pos(j)), show(&alg, &br));
        }
    }
    println!("Killing Gram: {:?}", alg.killing_gram_i64());
    println!("Jacobi violation: {:?}", alg.jacobi_violation());

    let tr = principal_triple(&alg)?;
    println!("w  = {}", show(&alg, &tr.w));
    println!("e  = {}", show(&alg, &tr.e));
    println!("f  = {}", show(&alg, &tr.f));
    println!("e1 = {}", show(&alg, &tr.e1));
    let dec = principal_decomposition(&alg, &tr)?;
    println!("principal modules: {:?}", dec.modules.iter().map(|m| m.basis.len()).collect::<Vec<_>>());
    Ok(())
}
