//! Pointwise Lagrangian and transversality checks on the regular orbit through a Hess point.

use mfhess::linalg::qf;
use mfhess::symplectic::{hess_lagrangian_check, polarization_report, transversality_check, zx_lagrangian_check};
use mfhess::verifier::{Model, ModelOptions};

fn main() -> mfhess::error::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "A2".into());
    let m = Model::build(&label, 5, &ModelOptions::default())?;
    let points: Vec<_> = (0..4)
        .map(|k| {
            let s: Vec<_> = (0..m.chart.len()).map(|i| qf((k * 5 + i as i64 * 3) % 7 - 3, 1 + i as i64 % 2)).collect();
            m.chart.point(&s)
        })
        .collect();

    let x = &points[0];
    println!("Z_x: {:?}", zx_lagrangian_check(&m.ctx, &m.family, x)?);
    println!("[n_-, x]: {:?}", hess_lagrangian_check(&m.alg, x));
    let t = transversality_check(&m.ctx, &m.family, &m.chart, x)?;
    println!("transversality: holds {}, det {}", t.holds(), t.pairing_determinant);

    let rep = polarization_report(&m.ctx, &m.family, &m.chart, &points);
    println!("{} points: {rep:?}", points.len());
    Ok(())
}
