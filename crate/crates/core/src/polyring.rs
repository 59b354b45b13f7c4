//! Sparse multivariate polynomials with exact rational coefficients, viewed as
//! functions on `g` in Chevalley coordinates.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::liealgebra::{Element, LieAlgebra};
use crate::linalg::{parse_q, q, q_to_string, zero_vec, Matrix, Q};

/// Exponent vector. Ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Monomial with the exponent of variable `i` lowered by one.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Monomial {
            degree: self.degree - 1,
            exps,
        })
    }

    pub fn eval(&self, powers: &[Vec<Q>]) -> Q {
        let mut v = Q::one();
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                v *= &powers[i][e as usize];
            }
        }
        v
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", q_to_string(c))?;
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// Powers `x_i^k` for `k = 0..=max`.
fn power_table(x: &[Q], max: usize) -> Vec<Vec<Q>> {
    x.iter()
        .map(|xi| {
            let mut p = Vec::with_capacity(max + 1);
            p.push(Q::one());
            for k in 1..=max {
                let next = &p[k - 1] * xi;
                p.push(next);
            }
            p
        })
        .collect()
}

fn poly_mul_univariate(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = zero_vec(a.len() + b.len() - 1);
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Q::one());
        p
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.exps.len(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(m) => it.all(|o| o.degree == m.degree),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.nvars, Q::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        let max = self.degree().unwrap_or(0) as usize;
        let powers = power_table(x, max);
        self.terms.iter().map(|(m, c)| c * m.eval(&powers)).sum()
    }

    /// `∂p/∂x_i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some(low) = m.lower(i) {
                out.add_term(low, c * q(m.exps[i] as i64));
            }
        }
        out
    }

    /// All first partials evaluated at `x`.
    pub fn partials_at(&self, x: &[Q]) -> Vec<Q> {
        let max = self.degree().unwrap_or(0) as usize;
        let powers = power_table(x, max);
        let mut out = zero_vec(self.nvars);
        for (m, c) in &self.terms {
            for i in 0..self.nvars {
                if let Some(low) = m.lower(i) {
                    out[i] += c * q(m.exps[i] as i64) * low.eval(&powers);
                }
            }
        }
        out
    }

    /// Directional derivative `∂_y p`.
    pub fn directional_derivative(&self, y: &[Q]) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            for (i, yi) in y.iter().enumerate() {
                if yi.is_zero() {
                    continue;
                }
                if let Some(low) = m.lower(i) {
                    out.add_term(low, c * yi * q(m.exps[i] as i64));
                }
            }
        }
        out
    }

    /// Coefficients of `t ↦ p(x + t y)`, lowest degree first.
    pub fn restrict_to_line(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let max = self.degree().unwrap_or(0) as usize;
        // (x_i + t y_i)^k as univariate coefficient lists
        let powers: Vec<Vec<Vec<Q>>> = x
            .iter()
            .zip(y)
            .map(|(xi, yi)| {
                let lin = vec![xi.clone(), yi.clone()];
                let mut p = vec![vec![Q::one()]];
                for k in 1..=max {
                    let next = poly_mul_univariate(&p[k - 1], &lin);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = zero_vec(max + 1);
        for (m, c) in &self.terms {
            let mut acc = vec![c.clone()];
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    acc = poly_mul_univariate(&acc, &powers[i][e as usize]);
                }
            }
            for (k, a) in acc.into_iter().enumerate() {
                out[k] += a;
            }
        }
        out
    }

    /// Substitutes `x = base + Σ_k s_k dirs[k]`, giving a polynomial in `s`.
    pub fn compose_affine(&self, base: &[Q], dirs: &[Element]) -> Polynomial {
        let k = dirs.len();
        let max = self.degree().unwrap_or(0) as usize;
        let mut powers: Vec<Option<Vec<Polynomial>>> = vec![None; self.nvars];
        let mut out = Polynomial::zero(k);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(k, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = powers[i].get_or_insert_with(|| {
                    let mut lin = Polynomial::constant(k, base[i].clone());
                    for (j, d) in dirs.iter().enumerate() {
                        lin.add_term(Monomial::var(k, j), d[i].clone());
                    }
                    let mut t = vec![Polynomial::constant(k, Q::one())];
                    for p in 1..=max {
                        let next = t[p - 1].mul(&lin);
                        t.push(next);
                    }
                    t
                });
                acc = acc.mul(&table[e as usize]);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Coefficient vector against a fixed list of monomials; `None` if some term is missing from the list.
    pub fn coords_in(&self, index: &BTreeMap<Monomial, usize>) -> Option<Vec<Q>> {
        let mut v = zero_vec(index.len());
        for (m, c) in &self.terms {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }

    /// Scales so that the leading coefficient (highest monomial) is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.values().next_back() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SerialPolynomial {
    nvars: usize,
    terms: Vec<(Vec<u32>, String)>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SerialPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.exps.clone(), q_to_string(c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SerialPolynomial::deserialize(d)?;
        let mut p = Polynomial::zero(raw.nvars);
        for (exps, c) in raw.terms {
            if exps.len() != raw.nvars {
                return Err(D::Error::custom("exponent vector length mismatch"));
            }
            let c = parse_q(&c).ok_or_else(|| D::Error::custom(format!("bad coefficient `{c}`")))?;
            p.add_term(Monomial::new(exps), c);
        }
        Ok(p)
    }
}

/// Killing-form data needed for gradients and the Lie–Poisson bracket.
#[derive(Clone, Debug)]
pub struct GradientContext {
    gram: Matrix,
    gram_inv: Matrix,
    /// `pi[a][b]` is the linear form `x ↦ (x, [u_a, u_b])` with `u_a = K⁻¹ e_a`.
    pi: Vec<Vec<Vec<(usize, Q)>>>,
    /// Dual basis `u_a`.
    duals: Vec<Element>,
    alg: LieAlgebra,
}

impl GradientContext {
    pub fn new(alg: &LieAlgebra) -> Result<Self> {
        let gram = alg.killing_gram();
        let gram_inv = gram
            .inverse()
            .ok_or_else(|| Error::SingularSystem("Killing form is degenerate".into()))?;
        let d = alg.dim();
        let duals: Vec<Element> = (0..d).map(|a| gram_inv.col(a)).collect();
        let mut pi = vec![vec![Vec::new(); d]; d];
        for a in 0..d {
            for b in 0..d {
                let br = alg.bracket_unchecked(&duals[a], &duals[b]);
                let form = gram.mul_vec(&br);
                pi[a][b] = form.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            }
        }
        Ok(GradientContext {
            gram,
            gram_inv,
            pi,
            duals,
            alg: alg.clone(),
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Matrix {
        &self.gram_inv
    }

    /// The linear function `x ↦ (x, z)`.
    pub fn pairing(&self, z: &[Q]) -> Polynomial {
        Polynomial::linear(&self.gram.mul_vec(z))
    }

    /// `dp(x)`, the element with `(dp(x), z) = d/dt p(x + t z)` at `t = 0`.
    pub fn gradient(&self, p: &Polynomial, x: &[Q]) -> Element {
        self.gram_inv.mul_vec(&p.partials_at(x))
    }

    /// Lie–Poisson bracket `[p, q](x) = (x, [dp(x), dq(x)])`.
    pub fn poisson_bracket(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let d = self.alg.dim();
        let n = p.nvars();
        let dp: Vec<Polynomial> = (0..d).map(|a| p.partial(a)).collect();
        let dq: Vec<Polynomial> = (0..d).map(|b| q.partial(b)).collect();
        let mut out = Polynomial::zero(n);
        for a in 0..d {
            if dp[a].is_zero() {
                continue;
            }
            // R_a = Σ_b Π^{ab} ∂_b q
            let mut ra = Polynomial::zero(n);
            for b in 0..d {
                if dq[b].is_zero() || self.pi[a][b].is_empty() {
                    continue;
                }
                let form = Polynomial::from_terms(n, self.pi[a][b].iter().map(|(c, v)| (Monomial::var(n, *c), v.clone())));
                ra = ra.add(&form.mul(&dq[b]));
            }
            if !ra.is_zero() {
                out = out.add(&dp[a].mul(&ra));
            }
        }
        out
    }

    /// `[(·, z), p]`, the coadjoint action of `z` on `p`.
    pub fn linear_bracket(&self, z: &[Q], p: &Polynomial) -> Polynomial {
        let n = p.nvars();
        let mut out = Polynomial::zero(n);
        for b in 0..self.alg.dim() {
            let db = p.partial(b);
            if db.is_zero() {
                continue;
            }
            let br = self.alg.bracket_unchecked(z, &self.duals[b]);
            let form = Polynomial::linear(&self.gram.mul_vec(&br));
            out = out.add(&form.mul(&db));
        }
        out
    }

    /// Hamiltonian vector `-[dp(x), x]`.
    pub fn hamiltonian_at(&self, p: &Polynomial, x: &[Q]) -> Element {
        let g = self.gradient(p, x);
        crate::linalg::scale_vec(&q(-1), &self.alg.bracket_unchecked(&g, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{axpy, dot, is_zero_vec, Subspace};
    use crate::rootdata::{build_root_system, TypeLabel};
    use proptest::prelude::*;

    fn algebra(label: &str) -> LieAlgebra {
        let t: TypeLabel = label.parse().unwrap();
        crate::liealgebra::chevalley_algebra(&build_root_system(&t.cartan().unwrap()).unwrap()).unwrap()
    }

    fn small_q() -> impl Strategy<Value = Q> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Q::new(n.into(), d.into()))
    }

    fn poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..=max_deg, nvars), small_q()), 0..6).prop_map(
            move |terms| {
                Polynomial::from_terms(
                    nvars,
                    terms.into_iter().filter_map(|(mut e, c)| {
                        // cap total degree
                        while e.iter().sum::<u32>() > max_deg {
                            let i = e.iter().position(|&x| x > 0)?;
                            e[i] -= 1;
                        }
                        Some((Monomial::new(e), c))
                    }),
                )
            },
        )
    }

    fn point(n: usize) -> impl Strategy<Value = Vec<Q>> {
        prop::collection::vec(small_q(), n)
    }

    #[test]
    fn basic_arithmetic() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = x.add(&y).pow(2);
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.eval(&[q(2), q(3)]), q(25));
        assert_eq!(p.sub(&p), Polynomial::zero(2));
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_homogeneous());
        assert_eq!(Polynomial::constant(2, q(5)).directional_derivative(&[q(1), q(1)]), Polynomial::zero(2));
    }

    #[test]
    fn serialization_round_trip() {
        let p = Polynomial::var(3, 0).mul(&Polynomial::var(3, 2)).scale(&Q::new(3.into(), 7.into()));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"nvars":3,"terms":[[[1,0,1],"3/7"]]}"#);
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn linear_gradient_is_constant() {
        let alg = algebra("A2");
        let ctx = GradientContext::new(&alg).unwrap();
        let z: Element = (0..alg.dim()).map(|i| q(i as i64 - 3)).collect();
        let p = ctx.pairing(&z);
        let x: Element = (0..alg.dim()).map(|i| q((i * i) as i64)).collect();
        assert_eq!(ctx.gradient(&p, &x), z);
        assert_eq!(ctx.hamiltonian_at(&p, &x), scale(&q(-1), &alg.bracket(&z, &x).unwrap()));
        assert!(is_zero_vec(&ctx.hamiltonian_at(&p, &alg.zero())));
    }

    fn scale(c: &Q, v: &[Q]) -> Vec<Q> {
        crate::linalg::scale_vec(c, v)
    }

    #[test]
    fn linear_bracket_matches_lie_bracket() {
        let alg = algebra("B2");
        let ctx = GradientContext::new(&alg).unwrap();
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let (u, v) = (alg.basis_vector(a), alg.basis_vector(b));
                let br = ctx.poisson_bracket(&ctx.pairing(&u), &ctx.pairing(&v));
                assert_eq!(br, ctx.pairing(&alg.bracket(&u, &v).unwrap()));
                assert_eq!(ctx.linear_bracket(&u, &ctx.pairing(&v)), br);
            }
        }
    }

    #[test]
    fn gram_inverse_is_exact() {
        let alg = algebra("A3");
        let ctx = GradientContext::new(&alg).unwrap();
        assert_eq!(ctx.gram().mul(ctx.gram_inverse()), Matrix::identity(alg.dim()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn line_expansion_matches_iterated_derivatives(p in poly(3, 3), x in point(3), y in point(3)) {
            let coeffs = p.restrict_to_line(&x, &y);
            let mut d = p.clone();
            let mut fact = Q::one();
            for (k, c) in coeffs.iter().enumerate() {
                if k > 0 {
                    fact *= q(k as i64);
                    d = d.directional_derivative(&y);
                }
                prop_assert_eq!(c.clone(), d.eval(&x) / &fact);
            }
        }

        #[test]
        fn gradient_is_the_first_order_term(p in poly(8, 3), x in point(8), z in point(8)) {
            let alg = algebra("A2");
            let ctx = GradientContext::new(&alg).unwrap();
            let coeffs = p.restrict_to_line(&x, &z);
            let first = coeffs.get(1).cloned().unwrap_or_else(Q::zero);
            prop_assert_eq!(alg.killing(&ctx.gradient(&p, &x), &z), first);
        }

        #[test]
        fn poisson_axioms(p in poly(3, 2), r in poly(3, 2), s in poly(3, 2), x in point(3)) {
            let alg = algebra("A1");
            let ctx = GradientContext::new(&alg).unwrap();
            let pr = ctx.poisson_bracket(&p, &r);
            prop_assert_eq!(pr.add(&ctx.poisson_bracket(&r, &p)), Polynomial::zero(3));
            prop_assert!(ctx.poisson_bracket(&p, &p).is_zero());
            // Leibniz
            let lhs = ctx.poisson_bracket(&p, &r.mul(&s));
            let rhs = pr.mul(&s).add(&r.mul(&ctx.poisson_bracket(&p, &s)));
            prop_assert_eq!(lhs, rhs);
            // Jacobi
            let j = ctx.poisson_bracket(&p, &ctx.poisson_bracket(&r, &s))
                .add(&ctx.poisson_bracket(&r, &ctx.poisson_bracket(&s, &p)))
                .add(&ctx.poisson_bracket(&s, &pr));
            prop_assert!(j.is_zero());
            // pointwise formula
            let gp = ctx.gradient(&p, &x);
            let gr = ctx.gradient(&r, &x);
            prop_assert_eq!(pr.eval(&x), alg.killing(&x, &alg.bracket(&gp, &gr).unwrap()));
        }

        #[test]
        fn hamiltonian_is_tangent_to_the_orbit(p in poly(8, 3), x in point(8)) {
            let alg = algebra("A2");
            let ctx = GradientContext::new(&alg).unwrap();
            let xi = ctx.hamiltonian_at(&p, &x);
            let image = Subspace::span(alg.dim(), &alg.ad_matrix(&x).transpose().rows_vec());
            prop_assert!(image.contains(&xi));
        }

        #[test]
        fn affine_composition_agrees_with_evaluation(p in poly(3, 3), base in point(3), d1 in point(3), d2 in point(3), s in point(2)) {
            let comp = p.compose_affine(&base, &[d1.clone(), d2.clone()]);
            let mut x = base.clone();
            axpy(&mut x, &s[0], &d1);
            axpy(&mut x, &s[1], &d2);
            prop_assert_eq!(comp.eval(&s), p.eval(&x));
            prop_assert_eq!(dot(&p.partials_at(&x), &d1), comp.partial(0).eval(&s));
        }
    }
}
