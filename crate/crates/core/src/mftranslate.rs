//! Shift-of-argument families `I_{j,y,k} = (1/k!) (∂_y)^k I_j`, the map `Φ`,
//! strong regularity, gradient spans and the ζ-chain.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::InvariantFamily;
use crate::liealgebra::{Element, LieAlgebra, PrincipalTriple};
use crate::linalg::{float_rank, is_zero_vec, q, q_to_f64, rank_of, scale_vec, Matrix, Subspace, Q};
use crate::polyring::{GradientContext, Polynomial};

const MAX_Y_DRAWS: usize = 1000;

/// Draws `y ∈ h` with small integer coroot coordinates until no root vanishes on it.
pub fn choose_regular_y(alg: &LieAlgebra, seed: u64) -> Result<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_Y_DRAWS {
        let coords: Vec<Q> = (0..alg.rank()).map(|_| q(rng.random_range(-3i64..=3))).collect();
        let y = alg.cartan_element(&coords);
        if alg.is_regular_in_cartan(&y) {
            return Ok(y);
        }
    }
    Err(Error::NoRegularElement(MAX_Y_DRAWS))
}

/// The element `y ∈ h` with prescribed simple-root values `α_i(y)`.
pub fn y_from_root_values(alg: &LieAlgebra, values: &[Q]) -> Result<Element> {
    let l = alg.rank();
    if values.len() != l {
        return Err(Error::DimensionMismatch { expected: l, got: values.len() });
    }
    // α_j(y) = Σ_i c_i a_ij
    let rows: Vec<Vec<Q>> = (0..l).map(|j| (0..l).map(|i| q(alg.roots.cartan.entry(i, j))).collect()).collect();
    let c = Matrix::from_rows(&rows)
        .solve(values)
        .ok_or_else(|| Error::SingularSystem("Cartan matrix is singular".into()))?;
    Ok(alg.cartan_element(&c))
}

/// One member `I_{j,y,k}` of the family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftMember {
    /// Index of the originating invariant (0-based).
    pub j: usize,
    pub k: usize,
    /// Degree `m = d_j - k`.
    pub m: usize,
    /// Position among members of degree `m`.
    pub i: usize,
    pub poly: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftFamily {
    #[serde(with = "crate::linalg::qvec")]
    pub y: Element,
    /// `q_1..q_b`, ordered by degree and then by `j`.
    pub members: Vec<ShiftMember>,
    /// Positions `β` with `q_β = I_j`.
    pub index_set: Vec<usize>,
    /// The remaining positions.
    pub moving_set: Vec<usize>,
}

impl ShiftFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.members.iter().map(|m| m.poly.clone()).collect()
    }

    pub fn degree_of(&self, beta: usize) -> usize {
        self.members[beta].m
    }

    /// Number of members of each degree `m = 1..=max`.
    pub fn graded_dims(&self) -> Vec<usize> {
        let max = self.members.iter().map(|m| m.m).max().unwrap_or(0);
        (1..=max).map(|d| self.members.iter().filter(|m| m.m == d).count()).collect()
    }

    /// Rank of the members of each degree, from their coefficient vectors.
    pub fn graded_ranks(&self) -> Vec<usize> {
        let max = self.members.iter().map(|m| m.m).max().unwrap_or(0);
        (1..=max)
            .map(|d| {
                let ps: Vec<&Polynomial> = self.members.iter().filter(|m| m.m == d).map(|m| &m.poly).collect();
                poly_rank(&ps)
            })
            .collect()
    }
}

/// Rank of a list of polynomials as vectors of coefficients.
pub fn poly_rank(ps: &[&Polynomial]) -> usize {
    let mut monos: Vec<_> = ps.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let index = monos.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let vecs: Vec<Vec<Q>> = ps.iter().map(|p| p.coords_in(&index).expect("all monomials indexed")).collect();
    rank_of(&vecs)
}

pub fn shift_family(inv: &InvariantFamily, y: &[Q]) -> Result<ShiftFamily> {
    let mut raw = Vec::new();
    for (j, (p, &d)) in inv.generators.iter().zip(&inv.degrees).enumerate() {
        let mut cur = p.clone();
        let mut fact = Q::one();
        for k in 0..d {
            if k > 0 {
                cur = cur.directional_derivative(y);
                fact *= q(k as i64);
            }
            raw.push((d - k, j, k, cur.scale(&fact.recip())));
        }
    }
    raw.sort_by_key(|(m, j, _, _)| (*m, *j));
    let mut members = Vec::with_capacity(raw.len());
    let mut last_m = 0;
    let mut i = 0;
    for (m, j, k, poly) in raw {
        if m != last_m {
            last_m = m;
            i = 0;
        }
        members.push(ShiftMember { j, k, m, i, poly });
        i += 1;
    }
    let index_set: Vec<usize> = (0..members.len()).filter(|&b| members[b].k == 0).collect();
    let moving_set: Vec<usize> = (0..members.len()).filter(|&b| members[b].k != 0).collect();
    let fam = ShiftFamily {
        y: y.to_vec(),
        members,
        index_set,
        moving_set,
    };
    let rank: usize = fam.graded_ranks().iter().sum();
    if rank != fam.len() {
        return Err(Error::DependentFamily { rank, expected: fam.len() });
    }
    Ok(fam)
}

/// First pair `(β, γ)` whose Poisson bracket is nonzero, with the bracket.
pub fn pairwise_commute(ctx: &GradientContext, fam: &ShiftFamily) -> std::result::Result<usize, (usize, usize, Polynomial)> {
    let mut checked = 0;
    for a in 0..fam.len() {
        for b in a + 1..fam.len() {
            let br = ctx.poisson_bracket(&fam.members[a].poly, &fam.members[b].poly);
            if !br.is_zero() {
                return Err((a, b, br));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// `Φ(x) = (q_1(x), …, q_b(x))`.
pub fn phi(fam: &ShiftFamily, x: &[Q]) -> Vec<Q> {
    fam.members.iter().map(|m| m.poly.eval(x)).collect()
}

/// `dq_β(x)` for every member.
pub fn gradients(ctx: &GradientContext, polys: &[Polynomial], x: &[Q]) -> Vec<Element> {
    polys.iter().map(|p| ctx.gradient(p, x)).collect()
}

/// `g(V, x) = { dp(x) | p ∈ V }` for `V` spanned by `polys`.
pub fn gradient_span(ctx: &GradientContext, polys: &[Polynomial], x: &[Q]) -> Subspace {
    Subspace::span(ctx.algebra().dim(), &gradients(ctx, polys, x))
}

pub fn is_strongly_regular(ctx: &GradientContext, fam: &ShiftFamily, x: &[Q]) -> bool {
    rank_of(&gradients(ctx, &fam.polys(), x)) == fam.len()
}

/// Basis of `V_u`: the nonconstant coefficients of `t ↦ I_j(x + t u)`.
pub fn shift_space(inv: &InvariantFamily, u: &[Q]) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for (p, &d) in inv.generators.iter().zip(&inv.degrees) {
        let mut cur = p.clone();
        let mut fact = Q::one();
        for k in 0..d {
            if k > 0 {
                cur = cur.directional_derivative(u);
                fact *= q(k as i64);
            }
            let scaled = cur.scale(&fact.recip());
            if !scaled.is_zero() {
                out.push(scaled);
            }
        }
    }
    out
}

/// Coordinates of `ζ(v) = -(ad y)⁻¹ [e, v]` for `v ∈ b`.
pub fn zeta(alg: &LieAlgebra, e: &[Q], y: &[Q], v: &[Q]) -> Result<Element> {
    let br = alg.bracket(e, v)?;
    let mut out = alg.zero();
    for a in 0..alg.dim() {
        if br[a].is_zero() {
            continue;
        }
        let root = alg.weight(a);
        let val = alg.root_value(root, y);
        if alg.grade(a) <= 0 || val.is_zero() {
            return Err(Error::NotInvertible { root: root.clone() });
        }
        out[a] = -&br[a] / val;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaChain {
    pub degree: usize,
    /// `v_i` for `i = 0..h`; zero for `i ≥ degree`.
    #[serde(with = "crate::linalg::qvecs")]
    pub v: Vec<Element>,
}

/// A violated chain relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZetaFailure {
    V0NotInCartan,
    TopNotCentralizingE,
    StepMismatch(usize),
    WrongGrade(usize),
}

impl ZetaChain {
    /// Checks `[y, v_0] = 0`, `[e, v_{d-1}] = 0`, `ζ(v_i) = v_{i+1}` and `v_i ∈ b_i`.
    pub fn verify(&self, alg: &LieAlgebra, e: &[Q], y: &[Q]) -> Result<Vec<ZetaFailure>> {
        let mut fails = Vec::new();
        if !is_zero_vec(&alg.bracket(y, &self.v[0])?) {
            fails.push(ZetaFailure::V0NotInCartan);
        }
        if !is_zero_vec(&alg.bracket(e, &self.v[self.degree - 1])?) {
            fails.push(ZetaFailure::TopNotCentralizingE);
        }
        for (i, v) in self.v.iter().enumerate() {
            if (0..alg.dim()).any(|a| !v[a].is_zero() && alg.grade(a) != i as i64) {
                fails.push(ZetaFailure::WrongGrade(i));
            }
            if i + 1 < self.v.len() && zeta(alg, e, y, v)? != self.v[i + 1] {
                fails.push(ZetaFailure::StepMismatch(i));
            }
        }
        Ok(fails)
    }
}

/// `v_i` read off from `dI(e + t y)`: `v_i` is the coefficient of `t^{d-1-i}`.
pub fn zeta_chain(
    alg: &LieAlgebra,
    ctx: &GradientContext,
    triple: &PrincipalTriple,
    y: &[Q],
    invariant: &Polynomial,
) -> Result<ZetaChain> {
    if let Some(r) = alg.roots.positive_roots.iter().find(|r| alg.root_value(r, y).is_zero()) {
        return Err(Error::NotInvertible { root: r.clone() });
    }
    let d = invariant.degree().unwrap_or(0) as usize;
    let h = alg.roots.coxeter_number;
    let dim = alg.dim();
    // gradient coordinates are K⁻¹ applied to the partials
    let mut coeffs: Vec<Element> = vec![alg.zero(); d.max(1)];
    for b in 0..dim {
        let line = invariant.partial(b).restrict_to_line(&triple.e, y);
        for (k, c) in line.into_iter().enumerate() {
            if !c.is_zero() && k < coeffs.len() {
                coeffs[k][b] = c;
            }
        }
    }
    let coeffs: Vec<Element> = coeffs.iter().map(|c| ctx.gram_inverse().mul_vec(c)).collect();
    let mut v = vec![alg.zero(); h.max(d)];
    for i in 0..d {
        v[i] = coeffs[d - 1 - i].clone();
    }
    Ok(ZetaChain { degree: d, v })
}

/// Outcome of a sampled search for `x` with `dim g(V_u, x) = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub certified: bool,
    pub witness: Option<Element>,
    pub best_rank: usize,
    pub samples: usize,
}

/// Random search certifying `m(V_u) = b`. A negative answer is inconclusive.
pub fn mv_membership(
    ctx: &GradientContext,
    inv: &InvariantFamily,
    u: &[Q],
    sample_count: usize,
    seed: u64,
    float_shadow: bool,
) -> Membership {
    let alg = ctx.algebra();
    let b = alg.roots.borel_dim();
    let v = shift_space(inv, u);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for s in 0..sample_count {
        let x: Element = (0..alg.dim()).map(|_| q(rng.random_range(-4i64..=4))).collect();
        let grads = gradients(ctx, &v, &x);
        if float_shadow {
            let approx: Vec<Vec<f64>> = grads.iter().map(|g| g.iter().map(q_to_f64).collect()).collect();
            if float_rank(&approx, 1e-9) < b {
                continue;
            }
        }
        let r = rank_of(&grads);
        best = best.max(r);
        if r == b {
            return Membership {
                certified: true,
                witness: Some(x),
                best_rank: r,
                samples: s + 1,
            };
        }
    }
    Membership {
        certified: false,
        witness: None,
        best_rank: best,
        samples: sample_count,
    }
}

/// `λ u` for checking that membership is scale invariant.
pub fn scaled(u: &[Q], lambda: &Q) -> Element {
    scale_vec(lambda, u)
}
