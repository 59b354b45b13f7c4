//! Both product forms of the Poincare series of the shift family, to order `2h`.

use mfhess::hessenberg::poincare_series;
use mfhess::rootdata::{build_root_system, TypeLabel};

fn main() -> mfhess::error::Result<()> {
    for label in ["A1", "A2", "B2", "G2", "A3", "B3", "D4", "E6"] {
        let t: TypeLabel = label.parse()?;
        let rs = build_root_system(&t.cartan()?)?;
        let ps = poincare_series(&rs, 2 * rs.coxeter_number);
        println!("{label:<3} agree {}  {}", ps.agree(), ps.over_degrees.join(" "));
    }
    Ok(())
}
