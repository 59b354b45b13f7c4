//! The shift-of-argument family for a regular semisimple `y`: commutativity,
//! graded dimensions and the span of its differentials.

use mfhess::linalg::{q, q_to_string};
use mfhess::mftranslate::{choose_regular_y, gradient_span, is_strongly_regular, mv_membership, pairwise_commute, shift_family, shift_space};
use mfhess::verifier::{Model, ModelOptions};

fn main() -> mfhess::error::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "A2".into());
    let m = Model::build(&label, 7, &ModelOptions::default())?;
    let y = choose_regular_y(&m.alg, 7)?;
    println!("y = [{}]", y.iter().map(q_to_string).collect::<Vec<_>>().join(", "));

    let fam = shift_family(&m.invariants, &y)?;
    for mem in &fam.members {
        println!("I(j={}, k={})  degree {}  m = {}", mem.j, mem.k, mem.poly.degree().unwrap_or(0), mem.m);
    }
    println!("index set {:?}, moving set {:?}", fam.index_set, fam.moving_set);
    println!("graded dims {:?} vs layers {:?}", fam.graded_dims(), m.roots.layer_dims);
    match pairwise_commute(&m.ctx, &fam) {
        Ok(n) => println!("all {n} brackets vanish"),
        Err((a, b, p)) => println!("{{q_{a}, q_{b}}} = {p}"),
    }

    let e_span = gradient_span(&m.ctx, &fam.polys(), &m.triple.e);
    let e1_span = gradient_span(&m.ctx, &fam.polys(), &m.triple.e1);
    println!("dim g(V_y, e) = {}, dim g(V_y, e1) = {}", e_span.dim(), e1_span.dim());
    println!("e1 strongly regular: {}", is_strongly_regular(&m.ctx, &fam, &m.triple.e1));

    let vf = shift_space(&m.invariants, &m.triple.f);
    println!("dim V_f = {}, dim g(V_f, w) = {}", vf.len(), gradient_span(&m.ctx, &vf, &m.triple.w).dim());

    let mem = mv_membership(&m.ctx, &m.invariants, &y, 10, 1, false);
    println!("sampled witness for m(V_y) = b: {} (best rank {})", mem.certified, mem.best_rank);
    let zero = vec![q(0); m.alg.dim()];
    println!("0 strongly regular: {}", is_strongly_regular(&m.ctx, &fam, &zero));
    Ok(())
}
