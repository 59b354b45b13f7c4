//! The orbit symplectic form and pointwise Lagrangian and transversality checks.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hessenberg::HessChart;
use crate::liealgebra::{Element, LieAlgebra};
use crate::linalg::{rank_of, scale_vec, q, Matrix, Subspace, Q};
use crate::mftranslate::ShiftFamily;
use crate::polyring::GradientContext;

/// `ω_x(-[z1, x], -[z2, x]) = (x, [z2, z1])`.
pub fn omega(alg: &LieAlgebra, x: &[Q], z1: &[Q], z2: &[Q]) -> Q {
    alg.killing(x, &alg.bracket_unchecked(z2, z1))
}

/// Orbit tangent vectors at `x`, each carried with a bracket preimage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentFrame {
    pub point: Element,
    pub preimages: Vec<Element>,
    pub tangents: Vec<Element>,
    pub dim: usize,
}

impl TangentFrame {
    pub fn from_preimages(alg: &LieAlgebra, x: &[Q], preimages: Vec<Element>) -> Self {
        let tangents: Vec<Element> = preimages
            .iter()
            .map(|z| scale_vec(&q(-1), &alg.bracket_unchecked(z, x)))
            .collect();
        let dim = rank_of(&tangents);
        TangentFrame {
            point: x.to_vec(),
            preimages,
            tangents,
            dim,
        }
    }

    /// The full tangent space `T_x(O) = [g, x]`.
    pub fn orbit(alg: &LieAlgebra, x: &[Q]) -> Self {
        Self::from_preimages(alg, x, (0..alg.dim()).map(|a| alg.basis_vector(a)).collect())
    }

    pub fn span(&self) -> Subspace {
        Subspace::span(self.point.len(), &self.tangents)
    }

    /// Gram matrix of `ω_x` on the preimages.
    pub fn omega_matrix(&self, alg: &LieAlgebra) -> Matrix {
        let n = self.preimages.len();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = omega(alg, &self.point, &self.preimages[i], &self.preimages[j]);
            }
        }
        m
    }

    /// First pair on which `ω_x` does not vanish.
    pub fn isotropy_defect(&self, alg: &LieAlgebra) -> Option<(usize, usize)> {
        let n = self.preimages.len();
        for i in 0..n {
            for j in i + 1..n {
                if !omega(alg, &self.point, &self.preimages[i], &self.preimages[j]).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// `Z_x`, spanned by `-[dq_i(x), x]` for the non-invariant members.
pub fn zx_frame(ctx: &GradientContext, fam: &ShiftFamily, x: &[Q]) -> Result<TangentFrame> {
    let alg = ctx.algebra();
    let grads: Vec<Element> = fam.members.iter().map(|m| ctx.gradient(&m.poly, x)).collect();
    let r = rank_of(&grads);
    if r != fam.len() {
        return Err(Error::NotStronglyRegular { rank: r, expected: fam.len() });
    }
    let pre: Vec<Element> = fam.moving_set.iter().map(|&i| grads[i].clone()).collect();
    Ok(TangentFrame::from_preimages(alg, x, pre))
}

/// `[n_-, v]` with the negative root vectors as preimages.
pub fn hess_tangent_frame(alg: &LieAlgebra, v: &[Q]) -> TangentFrame {
    TangentFrame::from_preimages(alg, v, alg.n_minus_indices().iter().map(|&a| alg.basis_vector(a)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagrangianVerdict {
    pub dim: usize,
    pub expected: usize,
    pub isotropic: bool,
    pub defect: Option<(usize, usize)>,
}

impl LagrangianVerdict {
    pub fn holds(&self) -> bool {
        self.dim == self.expected && self.isotropic
    }

    fn of(alg: &LieAlgebra, frame: &TangentFrame) -> Self {
        let defect = frame.isotropy_defect(alg);
        LagrangianVerdict {
            dim: frame.dim,
            expected: alg.num_positive(),
            isotropic: defect.is_none(),
            defect,
        }
    }
}

pub fn zx_lagrangian_check(ctx: &GradientContext, fam: &ShiftFamily, x: &[Q]) -> Result<LagrangianVerdict> {
    Ok(LagrangianVerdict::of(ctx.algebra(), &zx_frame(ctx, fam, x)?))
}

pub fn hess_lagrangian_check(alg: &LieAlgebra, v: &[Q]) -> LagrangianVerdict {
    LagrangianVerdict::of(alg, &hess_tangent_frame(alg, v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalityVerdict {
    pub intersection_dim: usize,
    pub sum_dim: usize,
    pub orbit_dim: usize,
    #[serde(with = "crate::linalg::qstr")]
    pub pairing_determinant: Q,
    /// Rank of the `Φ`-differential on `[n_-, x]`.
    pub phi_rank: usize,
    pub expected: usize,
}

impl TransversalityVerdict {
    pub fn holds(&self) -> bool {
        let n = self.expected;
        self.intersection_dim == 0
            && self.sum_dim == 2 * n
            && self.orbit_dim == 2 * n
            && !self.pairing_determinant.is_zero()
            && self.phi_rank == n
    }
}

pub fn transversality_check(ctx: &GradientContext, fam: &ShiftFamily, _chart: &HessChart, x: &[Q]) -> Result<TransversalityVerdict> {
    let alg = ctx.algebra();
    let n = alg.num_positive();
    let zx = zx_frame(ctx, fam, x)?;
    let hx = hess_tangent_frame(alg, x);
    let orbit = TangentFrame::orbit(alg, x);
    let (zs, hs) = (zx.span(), hx.span());
    let mut pairing = Matrix::zeros(zx.preimages.len(), hx.preimages.len());
    for (i, a) in zx.preimages.iter().enumerate() {
        for (j, b) in hx.preimages.iter().enumerate() {
            pairing[(i, j)] = omega(alg, x, a, b);
        }
    }
    let pairing_determinant = if pairing.nrows() == pairing.ncols() {
        pairing.determinant()
    } else {
        Q::zero()
    };
    let grads: Vec<Element> = fam.members.iter().map(|m| ctx.gradient(&m.poly, x)).collect();
    let jac: Vec<Vec<Q>> = grads
        .iter()
        .map(|g| hx.tangents.iter().map(|t| alg.killing(g, t)).collect())
        .collect();
    Ok(TransversalityVerdict {
        intersection_dim: zs.intersection_dim(&hs),
        sum_dim: zs.sum(&hs).dim(),
        orbit_dim: orbit.dim,
        pairing_determinant,
        phi_rank: Matrix::from_rows(&jac).rank(),
        expected: n,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationReport {
    pub points: usize,
    pub strongly_regular: usize,
    pub zx_lagrangian: usize,
    pub hess_lagrangian: usize,
    pub transversal: usize,
    pub full_orbit_dim: usize,
    /// Indices of sampled points failing some check.
    pub failures: Vec<usize>,
}

impl PolarizationReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty() && self.points > 0
    }
}

/// Aggregates the pointwise checks over sampled points of one slice.
pub fn polarization_report(ctx: &GradientContext, fam: &ShiftFamily, chart: &HessChart, points: &[Element]) -> PolarizationReport {
    let alg = ctx.algebra();
    let mut rep = PolarizationReport {
        points: points.len(),
        ..Default::default()
    };
    for (i, x) in points.iter().enumerate() {
        let mut ok = true;
        match zx_lagrangian_check(ctx, fam, x) {
            Ok(v) => {
                rep.strongly_regular += 1;
                if v.holds() {
                    rep.zx_lagrangian += 1;
                } else {
                    ok = false;
                }
            }
            Err(_) => ok = false,
        }
        if hess_lagrangian_check(alg, x).holds() {
            rep.hess_lagrangian += 1;
        } else {
            ok = false;
        }
        match transversality_check(ctx, fam, chart, x) {
            Ok(t) if t.holds() => rep.transversal += 1,
            _ => ok = false,
        }
        if TangentFrame::orbit(alg, x).dim == 2 * alg.num_positive() {
            rep.full_orbit_dim += 1;
        } else {
            ok = false;
        }
        if !ok {
            rep.failures.push(i);
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hessenberg::build_chart;
    use crate::invariants::invariant_generators;
    use crate::liealgebra::{chevalley_algebra, principal_triple, PrincipalTriple};
    use crate::linalg::{add_vec, qf};
    use crate::mftranslate::{choose_regular_y, shift_family};
    use crate::rootdata::{build_root_system, TypeLabel};

    struct Setup {
        alg: LieAlgebra,
        ctx: GradientContext,
        fam: ShiftFamily,
        chart: HessChart,
        triple: PrincipalTriple,
    }

    fn setup(label: &str) -> Setup {
        let t: TypeLabel = label.parse().unwrap();
        let alg = chevalley_algebra(&build_root_system(&t.cartan().unwrap()).unwrap()).unwrap();
        let ctx = GradientContext::new(&alg).unwrap();
        let inv = invariant_generators(&alg, &ctx).unwrap();
        let triple = principal_triple(&alg).unwrap();
        let y = choose_regular_y(&alg, 3).unwrap();
        let fam = shift_family(&inv, &y).unwrap();
        let chart = build_chart(&alg, &ctx, &triple, &fam).unwrap();
        Setup { alg, ctx, fam, chart, triple }
    }

    fn hess_points(chart: &HessChart, count: usize) -> Vec<Element> {
        (0..count)
            .map(|k| {
                let s: Vec<Q> = (0..chart.len()).map(|i| qf(((k * 7 + i * 3) % 9) as i64 - 4, (i % 3 + 1) as i64)).collect();
                chart.point(&s)
            })
            .collect()
    }

    #[test]
    fn omega_is_antisymmetric_and_well_defined() {
        let s = setup("A2");
        let x = hess_points(&s.chart, 1).remove(0);
        let z1: Element = (0..s.alg.dim()).map(|i| q(i as i64 - 2)).collect();
        let z2: Element = (0..s.alg.dim()).map(|i| q((i * i) as i64 % 5)).collect();
        assert!(omega(&s.alg, &x, &z1, &z1).is_zero());
        assert_eq!(omega(&s.alg, &x, &z1, &z2), -omega(&s.alg, &x, &z2, &z1));
        for k in s.alg.centralizer(&x) {
            assert_eq!(omega(&s.alg, &x, &add_vec(&z1, &k), &z2), omega(&s.alg, &x, &z1, &z2));
        }
    }

    #[test]
    fn invariant_members_have_zero_hamiltonian() {
        let s = setup("B2");
        let x = hess_points(&s.chart, 1).remove(0);
        for &b in &s.fam.index_set {
            let xi = s.ctx.hamiltonian_at(&s.fam.members[b].poly, &x);
            assert!(crate::linalg::is_zero_vec(&xi));
        }
    }

    #[test]
    fn pointwise_polarization_on_hess() {
        for label in ["A1", "A2", "B2"] {
            let s = setup(label);
            let pts = hess_points(&s.chart, 4);
            let rep = polarization_report(&s.ctx, &s.fam, &s.chart, &pts);
            assert!(rep.all_pass(), "{label}: {rep:?}");
        }
    }

    #[test]
    fn a2_transversal_dimensions() {
        let s = setup("A2");
        let x = hess_points(&s.chart, 2).remove(1);
        let t = transversality_check(&s.ctx, &s.fam, &s.chart, &x).unwrap();
        assert_eq!(t.sum_dim, 6);
        assert_eq!(t.intersection_dim, 0);
        assert!(!t.pairing_determinant.is_zero());
    }

    #[test]
    fn non_regular_points_are_rejected() {
        let s = setup("A2");
        let zero = s.alg.zero();
        assert!(matches!(zx_frame(&s.ctx, &s.fam, &zero), Err(Error::NotStronglyRegular { .. })));
        assert!(TangentFrame::orbit(&s.alg, &zero).dim < 2 * s.alg.num_positive());
        assert_eq!(TangentFrame::orbit(&s.alg, &s.triple.e1).dim, 2 * s.alg.num_positive());
        // minimal nilpotent
        let emin = s.alg.basis_vector(s.alg.pos(2));
        assert!(TangentFrame::orbit(&s.alg, &emin).dim < 2 * s.alg.num_positive());
    }
}
