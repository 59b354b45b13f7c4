//! The affine plane `Hess = e1 + b_-`, its triangular chart and the inverse section of `Φ`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::InvariantFamily;
use crate::liealgebra::{Element, LieAlgebra, PrincipalTriple};
use crate::linalg::{axpy, sub_vec, Matrix, Q};
use crate::mftranslate::ShiftFamily;
use crate::polyring::{GradientContext, Polynomial};
use crate::rootdata::RootSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HessChart {
    #[serde(with = "crate::linalg::qvec")]
    pub e1: Element,
    /// `z_β = dq_β(e1)`, a basis of `b`.
    #[serde(with = "crate::linalg::qvecs")]
    pub z: Vec<Element>,
    /// Basis of `b_-` Killing-dual to `z`.
    #[serde(with = "crate::linalg::qvecs")]
    pub duals: Vec<Element>,
    /// `σ(q_β)` as polynomials in the chart coordinates `s`.
    pub restricted: Vec<Polynomial>,
    /// Degrees `m(β)`.
    pub degrees: Vec<usize>,
}

/// `p` restricted to `Hess`, in the coordinates `x = e1 + Σ s_γ u_γ`.
pub fn restrict_to_hess(chart: &HessChart, p: &Polynomial) -> Polynomial {
    p.compose_affine(&chart.e1, &chart.duals)
}

/// First entry of the `s`-Jacobian breaking unitriangularity.
fn triangularity_defect(restricted: &[Polynomial]) -> Option<(usize, usize)> {
    let b = restricted.len();
    for (beta, p) in restricted.iter().enumerate() {
        for gamma in beta..b {
            let d = p.partial(gamma);
            let ok = if gamma == beta {
                d == Polynomial::constant(b, Q::one())
            } else {
                d.is_zero()
            };
            if !ok {
                return Some((beta, gamma));
            }
        }
    }
    None
}

pub fn build_chart(alg: &LieAlgebra, ctx: &GradientContext, triple: &PrincipalTriple, fam: &ShiftFamily) -> Result<HessChart> {
    let b = fam.len();
    let z: Vec<Element> = fam.members.iter().map(|m| ctx.gradient(&m.poly, &triple.e1)).collect();
    let bminus = alg.borel_minus_indices();
    if let Some(beta) = z.iter().position(|v| (0..alg.num_positive()).any(|a| !v[alg.neg(a)].is_zero())) {
        return Err(Error::NotTriangular(format!("dq_{beta}(e1) leaves b")));
    }
    // G[β][c] = (z_β, basis vector c of b_-)
    let rows: Vec<Vec<Q>> = z
        .iter()
        .map(|zb| bminus.iter().map(|&c| alg.killing(zb, &alg.basis_vector(c))).collect())
        .collect();
    let inv = Matrix::from_rows(&rows)
        .inverse()
        .ok_or_else(|| Error::NotTriangular("dq_β(e1) do not form a basis of b".into()))?;
    let duals: Vec<Element> = (0..b)
        .map(|gamma| {
            let mut u = alg.zero();
            for (row, &c) in bminus.iter().enumerate() {
                u[c] = inv[(row, gamma)].clone();
            }
            u
        })
        .collect();
    let mut chart = HessChart {
        e1: triple.e1.clone(),
        z,
        duals,
        restricted: Vec::new(),
        degrees: fam.members.iter().map(|m| m.m).collect(),
    };
    chart.restricted = fam.members.iter().map(|m| restrict_to_hess(&chart, &m.poly)).collect();
    if let Some((beta, gamma)) = triangularity_defect(&chart.restricted) {
        return Err(Error::NotTriangular(format!("entry ({beta},{gamma}) of the s-Jacobian")));
    }
    Ok(chart)
}

impl HessChart {
    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// `e1 + Σ s_γ u_γ`.
    pub fn point(&self, s: &[Q]) -> Element {
        let mut v = self.e1.clone();
        for (c, u) in s.iter().zip(&self.duals) {
            axpy(&mut v, c, u);
        }
        v
    }

    /// `s_β(v) = (z_β, v - e1)`, or `None` if `v ∉ Hess`.
    pub fn coords(&self, alg: &LieAlgebra, v: &[Q]) -> Option<Vec<Q>> {
        let d = sub_vec(v, &self.e1);
        if (0..alg.num_positive()).any(|a| !d[alg.pos(a)].is_zero()) {
            return None;
        }
        Some(self.z.iter().map(|z| alg.killing(z, &d)).collect())
    }

    pub fn contains(&self, alg: &LieAlgebra, v: &[Q]) -> bool {
        self.coords(alg, v).is_some()
    }

    /// Whether the stored restrictions are unitriangular in `s`.
    pub fn is_unitriangular(&self) -> bool {
        triangularity_defect(&self.restricted).is_none()
    }
}

/// The point `v ∈ Hess` with `Φ(v) = c`, by ascending substitution.
pub fn hess_section(chart: &HessChart, c: &[Q]) -> Result<Element> {
    let b = chart.len();
    if c.len() != b {
        return Err(Error::DimensionMismatch { expected: b, got: c.len() });
    }
    let mut s = vec![Q::zero(); b];
    for beta in 0..b {
        // σ(q_β) = s_β + (terms in s_γ, γ < β)
        let rest = chart.restricted[beta].eval(&s);
        s[beta] = &c[beta] - rest;
    }
    Ok(chart.point(&s))
}

/// A level set of the invariants inside `Hess`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSlice {
    #[serde(with = "crate::linalg::qvec")]
    pub values: Vec<Q>,
}

pub fn orbit_slice(inv: &InvariantFamily, v0: &[Q]) -> OrbitSlice {
    OrbitSlice { values: inv.values_at(v0) }
}

impl OrbitSlice {
    pub fn contains(&self, alg: &LieAlgebra, chart: &HessChart, inv: &InvariantFamily, v: &[Q]) -> bool {
        chart.contains(alg, v) && inv.values_at(v) == self.values
    }
}

/// Dimension of `{ n ∈ n_- | [n, v] = 0 }`.
pub fn centralizer_in_n_minus(alg: &LieAlgebra, v: &[Q]) -> usize {
    let cols: Vec<Element> = alg
        .n_minus_indices()
        .iter()
        .map(|&a| alg.bracket_unchecked(&alg.basis_vector(a), v))
        .collect();
    cols.len() - Matrix::from_cols(&cols, alg.dim()).rank()
}

/// Dimension of `[n_-, v]`.
pub fn n_minus_orbit_tangent_dim(alg: &LieAlgebra, v: &[Q]) -> usize {
    alg.num_positive() - centralizer_in_n_minus(alg, v)
}

/// Both product forms of the Poincaré series of `V_y`, truncated at `t^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareSeries {
    pub order: usize,
    /// `Π_j Π_{i=1}^{d_j} (1 - t^i)^{-1}`.
    pub over_degrees: Vec<String>,
    /// `Π_m (1 - t^m)^{-r_m}`.
    pub over_layers: Vec<String>,
}

impl PoincareSeries {
    pub fn agree(&self) -> bool {
        self.over_degrees == self.over_layers
    }
}

fn divide_by_one_minus_power(series: &mut [BigInt], i: usize) {
    for k in i..series.len() {
        let prev = series[k - i].clone();
        series[k] += prev;
    }
}

pub fn poincare_series(rs: &RootSystem, order: usize) -> PoincareSeries {
    let unit = || {
        let mut s = vec![BigInt::zero(); order + 1];
        s[0] = BigInt::one();
        s
    };
    let mut a = unit();
    for &d in &rs.degrees {
        for i in 1..=d {
            divide_by_one_minus_power(&mut a, i);
        }
    }
    let mut b = unit();
    for (m, &r) in rs.layer_dims.iter().enumerate() {
        for _ in 0..r {
            divide_by_one_minus_power(&mut b, m + 1);
        }
    }
    PoincareSeries {
        order,
        over_degrees: a.iter().map(|x| x.to_string()).collect(),
        over_layers: b.iter().map(|x| x.to_string()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::invariant_generators;
    use crate::liealgebra::{chevalley_algebra, principal_triple};
    use crate::linalg::{q, Subspace};
    use crate::mftranslate::{choose_regular_y, phi, shift_family};
    use crate::rootdata::{build_root_system, TypeLabel};
    use proptest::prelude::*;

    struct Setup {
        alg: LieAlgebra,
        inv: InvariantFamily,
        fam: ShiftFamily,
        chart: HessChart,
        ctx: GradientContext,
    }

    fn setup(label: &str) -> Setup {
        let t: TypeLabel = label.parse().unwrap();
        let alg = chevalley_algebra(&build_root_system(&t.cartan().unwrap()).unwrap()).unwrap();
        let ctx = GradientContext::new(&alg).unwrap();
        let inv = invariant_generators(&alg, &ctx).unwrap();
        let triple = principal_triple(&alg).unwrap();
        let y = choose_regular_y(&alg, 9).unwrap();
        let fam = shift_family(&inv, &y).unwrap();
        let chart = build_chart(&alg, &ctx, &triple, &fam).unwrap();
        Setup { alg, inv, fam, chart, ctx }
    }

    #[test]
    fn chart_basis_lies_in_graded_pieces_of_b() {
        for label in ["A1", "A2", "B2", "C2", "A1xA1", "A3"] {
            let s = setup(label);
            let b = s.alg.roots.borel_dim();
            assert_eq!(s.chart.len(), b);
            let span = Subspace::span(s.alg.dim(), &s.chart.z);
            assert_eq!(span, s.alg.span_of_indices(&s.alg.borel_indices()));
            for (z, &m) in s.chart.z.iter().zip(&s.chart.degrees) {
                for a in 0..s.alg.dim() {
                    if !z[a].is_zero() {
                        assert_eq!(s.alg.grade(a), m as i64 - 1, "{label}");
                    }
                }
            }
            assert!(s.chart.is_unitriangular());
        }
    }

    #[test]
    fn linear_generators_restrict_linearly() {
        let s = setup("A2");
        for (p, &m) in s.chart.restricted.iter().zip(&s.chart.degrees) {
            if m == 1 {
                assert_eq!(p.degree(), Some(1));
                assert!(p.is_homogeneous());
            }
        }
    }

    #[test]
    fn restriction_of_f_pairing_is_one() {
        let s = setup("B2");
        let triple = principal_triple(&s.alg).unwrap();
        let p = s.ctx.pairing(&triple.f);
        assert_eq!(restrict_to_hess(&s.chart, &p), Polynomial::constant(s.chart.len(), q(1)));
        let c = Polynomial::constant(s.alg.dim(), q(7));
        assert_eq!(restrict_to_hess(&s.chart, &c), Polynomial::constant(s.chart.len(), q(7)));
    }

    #[test]
    fn e1_is_the_section_of_zero() {
        let s = setup("A2");
        assert!(phi(&s.fam, &s.chart.e1).iter().all(Zero::is_zero));
        let v = hess_section(&s.chart, &vec![Q::zero(); s.chart.len()]).unwrap();
        assert_eq!(v, s.chart.e1);
    }

    #[test]
    fn section_rejects_wrong_length() {
        let s = setup("A1");
        assert!(matches!(hess_section(&s.chart, &[q(1)]), Err(Error::DimensionMismatch { .. })));
    }

    fn small_q() -> impl Strategy<Value = Q> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Q::new(n.into(), d.into()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn section_round_trips(c in prop::collection::vec(small_q(), 5), s in prop::collection::vec(small_q(), 5)) {
            let st = setup("A2");
            let v = hess_section(&st.chart, &c).unwrap();
            prop_assert!(st.chart.contains(&st.alg, &v));
            prop_assert_eq!(phi(&st.fam, &v), c);
            let p = st.chart.point(&s);
            prop_assert_eq!(st.chart.coords(&st.alg, &p).unwrap(), s.clone());
            prop_assert_eq!(hess_section(&st.chart, &phi(&st.fam, &p)).unwrap(), p);
        }

        #[test]
        fn n_minus_action_preserves_slices(s in prop::collection::vec(small_q(), 5), n in prop::collection::vec(small_q(), 3)) {
            let st = setup("A2");
            let v = st.chart.point(&s);
            let slice = orbit_slice(&st.inv, &v);
            prop_assert!(slice.contains(&st.alg, &st.chart, &st.inv, &v));
            let mut nm = st.alg.zero();
            for (c, a) in n.iter().zip(st.alg.n_minus_indices()) {
                nm[a] = c.clone();
            }
            let moved = st.alg.exp_ad(&nm, &v).unwrap();
            prop_assert!(slice.contains(&st.alg, &st.chart, &st.inv, &moved));
            prop_assert_eq!(centralizer_in_n_minus(&st.alg, &v), 0);
        }
    }

    #[test]
    fn poincare_forms_agree() {
        for label in ["A1", "A2", "B2", "G2", "A3", "A1xA1"] {
            let t: TypeLabel = label.parse().unwrap();
            let rs = build_root_system(&t.cartan().unwrap()).unwrap();
            let p = poincare_series(&rs, 2 * rs.coxeter_number);
            assert!(p.agree(), "{label}");
            assert_eq!(p.over_degrees[0], "1");
            assert_eq!(p.over_degrees[1], rs.rank.to_string());
        }
    }
}
