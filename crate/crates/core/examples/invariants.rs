//! Basic invariants from the kernel solver, checked against trace invariants in type A,
//! with an on-disk cache keyed by the sign convention.

use mfhess::invariants::{
    cached_invariant_generators, convention_hash, invariant_generators, same_invariant_algebra, trace_oracle_type_a,
};
use mfhess::liealgebra::chevalley_algebra;
use mfhess::polyring::GradientContext;
use mfhess::rootdata::{build_root_system, TypeLabel};

fn main() -> mfhess::error::Result<()> {
    for label in ["A2", "B2"] {
        let t: TypeLabel = label.parse()?;
        let alg = chevalley_algebra(&build_root_system(&t.cartan()?)?)?;
        let ctx = GradientContext::new(&alg)?;
        let inv = invariant_generators(&alg, &ctx)?;
        println!("{t}: degrees {:?}, convention {}", inv.degrees, &convention_hash(&alg)[..16]);
        for p in &inv.generators {
            println!("  {} terms, deg {:?}", p.num_terms(), p.degree());
        }
        match trace_oracle_type_a(&alg) {
            Ok(traces) => println!("  same algebra as tr(X^k): {}", same_invariant_algebra(&alg, &inv, &traces)),
            Err(e) => println!("  no trace oracle: {e}"),
        }
        // Commutes with everything: {I, x_a} = 0 for every coordinate.
        let all_central = inv
            .generators
            .iter()
            .all(|p| (0..alg.dim()).all(|a| ctx.poisson_bracket(p, &mfhess::polyring::Polynomial::var(alg.dim(), a)).is_zero()));
        println!("  Poisson-central: {all_central}");

        let dir = std::env::temp_dir().join("mfhess-example-cache");
        let (_, hit) = cached_invariant_generators(&alg, &ctx, &t, &dir)?;
        println!("  cache at {} ({})", dir.display(), if hit { "hit" } else { "written" });
    }
    Ok(())
}
