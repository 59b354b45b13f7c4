//! Semisimple Lie algebras in a Chevalley basis.
//!
//! Basis order: the positive root vectors `e_φ` (in root-system order), then the
//! simple coroots `h_i`, then the negative root vectors `e_{-φ}` (same order).
//!
//! Structure-constant signs follow the extraspecial-pair method: with positive roots
//! ordered by height and then lexicographically, every non-simple positive root
//! `ξ` has a unique extraspecial pair `(α, ξ - α)` where `α` is the first root with
//! `ξ - α` positive. Those constants are taken positive, `N = p + 1`, and every
//! other `N_{α,β}` follows from the Chevalley relations. The result is checked
//! against the Jacobi identity before it is handed out.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, q, rank_of, scale_vec, unit_vec, zero_vec, Matrix, Subspace, Q};
use crate::polyring::{GradientContext, Polynomial};
use crate::rootdata::{height, Root, RootSystem};

/// Human-readable statement of the sign convention, embedded in reports.
pub const SIGN_CONVENTION: &str =
    "chevalley/extraspecial-positive; roots ordered by height then lexicographic simple-root coordinates; \
     [e_a,e_-a]=h_a; N(-a,-b)=-N(a,b)";

/// A Lie algebra element as coordinates in the Chevalley basis.
pub type Element = Vec<Q>;

/// Which part of the triangular decomposition a basis vector belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisKind {
    Positive(usize),
    Cartan(usize),
    Negative(usize),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LieAlgebra {
    pub roots: RootSystem,
    dim: usize,
    /// `table[i][j]` is `[b_i, b_j]` as sparse integer coordinates.
    table: Vec<Vec<Vec<(usize, i64)>>>,
    /// Integer Killing form Gram matrix (trace form of ad).
    killing: Vec<Vec<i64>>,
    /// Weight of each basis vector in simple-root coordinates (zero on the Cartan).
    weights: Vec<Root>,
}

/// Signed root index: `r < n` is the positive root `r`, `r >= n` is its negative.
struct RootIndex<'a> {
    rs: &'a RootSystem,
    lookup: HashMap<Root, usize>,
    n: usize,
}

impl<'a> RootIndex<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        let n = rs.num_positive;
        let mut lookup = HashMap::new();
        for (i, r) in rs.positive_roots.iter().enumerate() {
            lookup.insert(r.clone(), i);
            lookup.insert(r.iter().map(|c| -c).collect(), i + n);
        }
        RootIndex { rs, lookup, n }
    }

    fn root(&self, idx: usize) -> Root {
        if idx < self.n {
            self.rs.positive_roots[idx].clone()
        } else {
            self.rs.positive_roots[idx - self.n].iter().map(|c| -c).collect()
        }
    }

    fn neg(&self, idx: usize) -> usize {
        if idx < self.n {
            idx + self.n
        } else {
            idx - self.n
        }
    }

    fn is_pos(&self, idx: usize) -> bool {
        idx < self.n
    }

    fn find(&self, r: &[i64]) -> Option<usize> {
        self.lookup.get(r).copied()
    }

    fn add(&self, a: usize, b: usize) -> Option<usize> {
        let s: Root = self.root(a).iter().zip(self.root(b)).map(|(x, y)| x + y).collect();
        self.find(&s)
    }

    fn sub(&self, a: usize, b: usize) -> Option<usize> {
        self.add(a, self.neg(b))
    }

    fn norm(&self, idx: usize) -> i64 {
        let r = self.root(idx);
        self.rs.inner(&r, &r)
    }

    /// Largest `p` with `b - p a` a root.
    fn string_below(&self, a: usize, b: usize) -> i64 {
        let (ra, rb) = (self.root(a), self.root(b));
        let mut p = 0;
        loop {
            let next: Root = rb.iter().zip(&ra).map(|(y, x)| y - (p + 1) * x).collect();
            if self.find(&next).is_none() {
                return p;
            }
            p += 1;
        }
    }
}

struct StructureConstants<'a> {
    idx: RootIndex<'a>,
    extraspecial: HashMap<usize, (usize, usize)>,
    memo: HashMap<(usize, usize), i64>,
}

impl<'a> StructureConstants<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        let idx = RootIndex::new(rs);
        let mut extraspecial = HashMap::new();
        for xi in 0..idx.n {
            if height(&rs.positive_roots[xi]) == 1 {
                continue;
            }
            for a in 0..idx.n {
                if let Some(b) = idx.sub(xi, a) {
                    if idx.is_pos(b) {
                        extraspecial.insert(xi, (a, b));
                        break;
                    }
                }
            }
        }
        StructureConstants {
            idx,
            extraspecial,
            memo: HashMap::new(),
        }
    }

    fn divide(num: i64, den: i64, what: &str) -> Result<i64> {
        if den == 0 || num % den != 0 {
            return Err(Error::ConstructionFailure(format!("non-integral {what}: {num}/{den}")));
        }
        Ok(num / den)
    }

    /// `N_{a,b}` for roots `a`, `b` with `a + b` a root.
    fn n(&mut self, a: usize, b: usize) -> Result<i64> {
        if let Some(&v) = self.memo.get(&(a, b)) {
            return Ok(v);
        }
        let idx = &self.idx;
        let sum = idx
            .add(a, b)
            .ok_or_else(|| Error::ConstructionFailure("N requested for a non-root sum".into()))?;
        let value = match (idx.is_pos(a), idx.is_pos(b)) {
            (true, true) => {
                let (a1, b1) = self.extraspecial[&sum];
                let p1 = self.idx.string_below(a1, b1);
                if (a, b) == (a1, b1) {
                    p1 + 1
                } else if (b, a) == (a1, b1) {
                    -(p1 + 1)
                } else {
                    // four roots a + b - a1 - b1 = 0 with no opposite pair
                    let (na1, nb1) = (self.idx.neg(a1), self.idx.neg(b1));
                    let xi_norm = self.idx.norm(sum);
                    let mut num = 0i64;
                    let mut den = 1i64;
                    let mut terms: Vec<(i64, i64)> = Vec::new();
                    if let Some(s) = self.idx.add(b, na1) {
                        let t = self.n(b, na1)? * self.n(a, nb1)?;
                        terms.push((t, self.idx.norm(s)));
                    }
                    if let Some(s) = self.idx.add(na1, a) {
                        let t = self.n(na1, a)? * self.n(b, nb1)?;
                        terms.push((t, self.idx.norm(s)));
                    }
                    for &(_, l) in &terms {
                        den *= l;
                    }
                    for &(t, l) in &terms {
                        num += t * den / l;
                    }
                    Self::divide(xi_norm * num, den * (p1 + 1), "four-root relation")?
                }
            }
            (false, false) => -self.n(self.idx.neg(a), self.idx.neg(b))?,
            (false, true) => -self.n(b, a)?,
            (true, false) => {
                let gamma = sum;
                if self.idx.is_pos(gamma) {
                    let inner = self.n(self.idx.neg(b), gamma)?;
                    Self::divide(-self.idx.norm(gamma) * inner, self.idx.norm(a), "three-root relation")?
                } else {
                    let inner = self.n(self.idx.neg(gamma), a)?;
                    Self::divide(self.idx.norm(gamma) * inner, self.idx.norm(b), "three-root relation")?
                }
            }
        };
        let expected = self.idx.string_below(a, b) + 1;
        if value.abs() != expected {
            return Err(Error::ConstructionFailure(format!(
                "|N| = {} but string length gives {expected}",
                value.abs()
            )));
        }
        self.memo.insert((a, b), value);
        Ok(value)
    }
}

impl LieAlgebra {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.roots.rank
    }

    pub fn num_positive(&self) -> usize {
        self.roots.num_positive
    }

    /// Index of `e_φ` for the `i`-th positive root.
    pub fn pos(&self, i: usize) -> usize {
        i
    }

    /// Index of the `i`-th simple coroot.
    pub fn cartan(&self, i: usize) -> usize {
        self.num_positive() + i
    }

    /// Index of `e_{-φ}` for the `i`-th positive root.
    pub fn neg(&self, i: usize) -> usize {
        self.num_positive() + self.rank() + i
    }

    pub fn kind(&self, a: usize) -> BasisKind {
        let (n, l) = (self.num_positive(), self.rank());
        if a < n {
            BasisKind::Positive(a)
        } else if a < n + l {
            BasisKind::Cartan(a - n)
        } else {
            BasisKind::Negative(a - n - l)
        }
    }

    /// Simple-root coordinates of the weight of basis vector `a`.
    pub fn weight(&self, a: usize) -> &Root {
        &self.weights[a]
    }

    /// Signed height of basis vector `a` (0 on the Cartan).
    pub fn grade(&self, a: usize) -> i64 {
        height(&self.weights[a])
    }

    /// Short label: `e(…)` for positive root vectors, `h1…` for coroots, `f(…)` for negative root vectors.
    pub fn basis_label(&self, a: usize) -> String {
        let fmt_root = |i: usize| {
            let r = &self.roots.positive_roots[i];
            r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        };
        match self.kind(a) {
            BasisKind::Positive(i) => format!("e({})", fmt_root(i)),
            BasisKind::Cartan(i) => format!("h{}", i + 1),
            BasisKind::Negative(i) => format!("f({})", fmt_root(i)),
        }
    }

    pub fn basis_vector(&self, a: usize) -> Element {
        unit_vec(self.dim, a)
    }

    pub fn zero(&self) -> Element {
        zero_vec(self.dim)
    }

    pub fn structure_constants(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a][b]
    }

    /// Indices spanning `b_-` (Cartan then negative root vectors).
    pub fn borel_minus_indices(&self) -> Vec<usize> {
        (self.num_positive()..self.dim).collect()
    }

    /// Indices spanning `b` (positive root vectors then Cartan).
    pub fn borel_indices(&self) -> Vec<usize> {
        (0..self.num_positive() + self.rank()).collect()
    }

    pub fn n_minus_indices(&self) -> Vec<usize> {
        (0..self.num_positive()).map(|i| self.neg(i)).collect()
    }

    pub fn n_plus_indices(&self) -> Vec<usize> {
        (0..self.num_positive()).collect()
    }

    pub fn cartan_indices(&self) -> Vec<usize> {
        (0..self.rank()).map(|i| self.cartan(i)).collect()
    }

    pub fn span_of_indices(&self, idx: &[usize]) -> Subspace {
        let vs: Vec<Element> = idx.iter().map(|&a| self.basis_vector(a)).collect();
        Subspace::span(self.dim, &vs)
    }

    fn check_dim(&self, v: &[Q]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Lie bracket `[x, y]`.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Result<Element> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Q], y: &[Q]) -> Element {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for &(k, s) in &self.table[i][j] {
                    out[k] += &c * q(s);
                }
            }
        }
        out
    }

    /// Matrix of `ad x` acting on coordinate columns.
    pub fn ad_matrix(&self, x: &[Q]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for &(k, s) in &self.table[i][j] {
                    m[(k, j)] += xi * q(s);
                }
            }
        }
        m
    }

    pub fn killing_gram(&self) -> Matrix {
        Matrix::from_i64(&self.killing)
    }

    pub fn killing_gram_i64(&self) -> &[Vec<i64>] {
        &self.killing
    }

    /// Killing form `(x, y)`.
    pub fn killing(&self, x: &[Q], y: &[Q]) -> Q {
        let mut s = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let k = self.killing[i][j];
                if k != 0 && !yj.is_zero() {
                    s += xi * yj * q(k);
                }
            }
        }
        s
    }

    /// Basis of the centralizer `g^x`.
    pub fn centralizer(&self, x: &[Q]) -> Vec<Element> {
        self.ad_matrix(x).kernel()
    }

    /// Whether `dim g^x` equals the rank.
    pub fn is_regular(&self, x: &[Q]) -> bool {
        self.dim - self.ad_matrix(x).rank() == self.rank()
    }

    /// `exp(ad n) x` for `ad n` nilpotent; the series is summed until it vanishes.
    /// Returns `None` if `ad n` is not nilpotent within `dim` steps.
    pub fn exp_ad(&self, n: &[Q], x: &[Q]) -> Option<Element> {
        let mut term = x.to_vec();
        let mut out = x.to_vec();
        for k in 1..=self.dim + 1 {
            term = scale_vec(&Q::new(One::one(), k.into()), &self.bracket_unchecked(n, &term));
            if is_zero_vec(&term) {
                return Some(out);
            }
            for (o, t) in out.iter_mut().zip(&term) {
                *o += t;
            }
        }
        None
    }

    /// Element of `h` with the given simple-coroot coordinates.
    pub fn cartan_element(&self, coords: &[Q]) -> Element {
        let mut v = self.zero();
        for (i, c) in coords.iter().enumerate() {
            v[self.cartan(i)] = c.clone();
        }
        v
    }

    /// Value `α(x)` for a root given in simple-root coordinates and `x ∈ h`.
    /// Components of `x` outside `h` are ignored.
    pub fn root_value(&self, root: &[i64], x: &[Q]) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rank() {
            let c = &x[self.cartan(i)];
            if !c.is_zero() {
                s += c * q(self.roots.pair_with_coroot(root, i));
            }
        }
        s
    }

    /// Whether `x ∈ h` lies off every root hyperplane.
    pub fn is_regular_in_cartan(&self, x: &[Q]) -> bool {
        let in_h = (0..self.dim).all(|a| matches!(self.kind(a), BasisKind::Cartan(_)) || x[a].is_zero());
        in_h && self
            .roots
            .positive_roots
            .iter()
            .all(|r| !self.root_value(r, x).is_zero())
    }

    /// Exhaustive Jacobi check on basis triples; returns the first failing triple.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let (x, y, z) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let t1 = self.bracket_unchecked(&x, &self.bracket_unchecked(&y, &z));
                    let t2 = self.bracket_unchecked(&y, &self.bracket_unchecked(&z, &x));
                    let t3 = self.bracket_unchecked(&z, &self.bracket_unchecked(&x, &y));
                    if (0..d).any(|a| !(&t1[a] + &t2[a] + &t3[a]).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Exhaustive check of `([x,y],z) + (y,[x,z]) = 0` on basis triples.
    pub fn killing_invariance_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let xy = self.bracket_unchecked(&self.basis_vector(i), &self.basis_vector(j));
                for k in 0..d {
                    let xz = self.bracket_unchecked(&self.basis_vector(i), &self.basis_vector(k));
                    let s = self.killing(&xy, &self.basis_vector(k)) + self.killing(&self.basis_vector(j), &xz);
                    if !s.is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Antisymmetry of the structure table.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut a = self.table[i][j].clone();
                let mut b: Vec<(usize, i64)> = self.table[j][i].iter().map(|&(k, s)| (k, -s)).collect();
                a.sort_unstable();
                b.sort_unstable();
                if a != b {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Builds `g` in a Chevalley basis from its root system.
pub fn chevalley_algebra(rs: &RootSystem) -> Result<LieAlgebra> {
    let n = rs.num_positive;
    let l = rs.rank;
    let dim = l + 2 * n;
    let mut sc = StructureConstants::new(rs);
    let idx_of_root = |r: usize| if r < n { r } else { n + l + (r - n) };

    let mut weights: Vec<Root> = Vec::with_capacity(dim);
    weights.extend(rs.positive_roots.iter().cloned());
    weights.extend((0..l).map(|_| vec![0; l]));
    weights.extend(rs.positive_roots.iter().map(|r| r.iter().map(|c| -c).collect::<Root>()));

    let mut table: Vec<Vec<Vec<(usize, i64)>>> = vec![vec![Vec::new(); dim]; dim];
    for a in 0..2 * n {
        for b in 0..2 * n {
            let ba = idx_of_root(a);
            let bb = idx_of_root(b);
            if b == sc.idx.neg(a) {
                // [e_α, e_{-α}] = h_α
                let (root, sign) = if sc.idx.is_pos(a) {
                    (sc.idx.root(a), 1)
                } else {
                    (sc.idx.root(b), -1)
                };
                let co = rs.coroot_coords(&root);
                table[ba][bb] = co
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (n + i, sign * c))
                    .collect();
            } else if let Some(s) = sc.idx.add(a, b) {
                let v = sc.n(a, b)?;
                table[ba][bb] = vec![(idx_of_root(s), v)];
            }
        }
        let ra = sc.idx.root(a);
        for i in 0..l {
            let c = rs.pair_with_coroot(&ra, i);
            if c != 0 {
                let ba = idx_of_root(a);
                table[n + i][ba] = vec![(ba, c)];
                table[ba][n + i] = vec![(ba, -c)];
            }
        }
    }

    // Killing form as trace of ad(b_i) ad(b_j)
    let mut killing = vec![vec![0i64; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut tr = 0i64;
            for k in 0..dim {
                // (ad b_i ad b_j)(b_k) component k
                for &(m, s) in &table[j][k] {
                    for &(o, t) in &table[i][m] {
                        if o == k {
                            tr += s * t;
                        }
                    }
                }
            }
            killing[i][j] = tr;
        }
    }

    let algebra = LieAlgebra {
        roots: rs.clone(),
        dim,
        table,
        killing,
        weights,
    };
    if let Some((i, j)) = algebra.antisymmetry_violation() {
        return Err(Error::ConstructionFailure(format!("antisymmetry fails on ({i},{j})")));
    }
    if dim <= 30 {
        if let Some(t) = algebra.jacobi_violation() {
            return Err(Error::ConstructionFailure(format!("Jacobi identity fails on basis triple {t:?}")));
        }
    }
    if algebra.killing_gram().determinant().is_zero() {
        return Err(Error::ConstructionFailure("Killing form is degenerate".into()));
    }
    Ok(algebra)
}

/// Principal sl2-triple `{w, e, f}` and the normalized nilpotent `e1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalTriple {
    #[serde(with = "crate::linalg::qvec")]
    pub w: Element,
    #[serde(with = "crate::linalg::qvec")]
    pub e: Element,
    #[serde(with = "crate::linalg::qvec")]
    pub f: Element,
    #[serde(with = "crate::linalg::qvec")]
    pub e1: Element,
}

pub fn principal_triple(alg: &LieAlgebra) -> Result<PrincipalTriple> {
    let l = alg.rank();
    let rs = &alg.roots;
    // α_j(w) = Σ_i c_i a_ij = 2
    let at = Matrix::from_rows(
        &(0..l)
            .map(|j| (0..l).map(|i| q(rs.cartan.entry(i, j))).collect())
            .collect::<Vec<_>>(),
    );
    let coeffs = at
        .solve(&vec![q(2); l])
        .ok_or_else(|| Error::SingularSystem("no w with α_i(w) = 2".into()))?;
    let w = alg.cartan_element(&coeffs);
    let mut f = alg.zero();
    for i in 0..l {
        let s = rs.positive_index(&rs.simple_root(i)).expect("simple root");
        f[alg.neg(s)] = Q::one();
    }
    // e = Σ c_i e_{α_i} with [e, f] = w
    let cols: Vec<Element> = (0..l)
        .map(|i| {
            let s = rs.positive_index(&rs.simple_root(i)).expect("simple root");
            alg.bracket_unchecked(&alg.basis_vector(alg.pos(s)), &f)
        })
        .collect();
    let sys = Matrix::from_cols(&cols, alg.dim());
    let c = sys
        .solve(&w)
        .ok_or_else(|| Error::SingularSystem("no e in span of simple root vectors with [e,f] = w".into()))?;
    if c.iter().any(Zero::is_zero) {
        return Err(Error::SingularSystem("principal e has a vanishing simple component".into()));
    }
    let mut e = alg.zero();
    for i in 0..l {
        let s = rs.positive_index(&rs.simple_root(i)).expect("simple root");
        e[alg.pos(s)] = c[i].clone();
    }
    let ef = alg.killing(&e, &f);
    let e1 = scale_vec(&ef.recip(), &e);
    Ok(PrincipalTriple { w, e, f, e1 })
}

/// One irreducible summand of `g` under the principal TDS.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalModule {
    pub exponent: usize,
    #[serde(with = "crate::linalg::qvec")]
    pub highest_weight_vector: Element,
    /// Basis `(ad f)^k v`, `k = 0..=2m`.
    #[serde(with = "crate::linalg::qvecs")]
    pub basis: Vec<Element>,
    /// `z_j`, the Cartan representative.
    #[serde(with = "crate::linalg::qvec")]
    pub cartan_rep: Element,
    /// `z_{jk} = (ad f/2)^k z_j` for `k = 0..=m`.
    #[serde(with = "crate::linalg::qvecs")]
    pub chain: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalDecomposition {
    /// Ordered by nondecreasing exponent.
    pub modules: Vec<PrincipalModule>,
}

impl PrincipalDecomposition {
    /// All `z_{jk}`.
    pub fn chain_elements(&self) -> Vec<Element> {
        self.modules.iter().flat_map(|m| m.chain.iter().cloned()).collect()
    }
}

pub fn principal_decomposition(alg: &LieAlgebra, triple: &PrincipalTriple) -> Result<PrincipalDecomposition> {
    let max_h = alg.roots.max_height();
    let half = Q::new(One::one(), 2.into());
    let mut modules = Vec::new();
    let ad_e = alg.ad_matrix(&triple.e);
    for m in 1..=max_h {
        // highest weight vectors of weight 2m live among root vectors of height m
        let idx: Vec<usize> = (0..alg.dim()).filter(|&a| alg.grade(a) == m).collect();
        if idx.is_empty() {
            continue;
        }
        let sub = Matrix::from_cols(&idx.iter().map(|&a| ad_e.col(a)).collect::<Vec<_>>(), alg.dim());
        for k in sub.kernel() {
            let mut v = alg.zero();
            for (c, &a) in k.iter().zip(&idx) {
                v[a] = c.clone();
            }
            let mut basis = vec![v.clone()];
            for _ in 0..2 * m {
                let next = alg.bracket_unchecked(&triple.f, basis.last().unwrap());
                basis.push(next);
            }
            let z = basis[m as usize].clone();
            let z = scale_vec(&half.pow(m as i32), &z);
            let in_h = (0..alg.dim()).all(|a| alg.grade(a) == 0 || z[a].is_zero());
            if !in_h || is_zero_vec(&z) {
                return Err(Error::DecompositionFailure(format!("Cartan representative for exponent {m} misplaced")));
            }
            let mut chain = vec![z.clone()];
            for _ in 0..m {
                let next = scale_vec(&half, &alg.bracket_unchecked(&triple.f, chain.last().unwrap()));
                chain.push(next);
            }
            modules.push(PrincipalModule {
                exponent: m as usize,
                highest_weight_vector: v,
                basis,
                cartan_rep: z,
                chain,
            });
        }
    }
    if modules.len() != alg.rank() {
        return Err(Error::DecompositionFailure(format!(
            "ker(ad e) has dimension {} instead of {}",
            modules.len(),
            alg.rank()
        )));
    }
    Ok(PrincipalDecomposition { modules })
}

/// `exp(t/2 ad f) x`.
pub fn u_t_action(alg: &LieAlgebra, triple: &PrincipalTriple, t: &Q, x: &[Q]) -> Element {
    let n = scale_vec(&(t * Q::new(One::one(), 2.into())), &triple.f);
    alg.exp_ad(&n, x).expect("ad f is nilpotent")
}

/// Span of the gradients `dI_j(w + t f)` over the given `t` values.
pub fn vandermonde_span(
    alg: &LieAlgebra,
    ctx: &GradientContext,
    invariants: &[Polynomial],
    triple: &PrincipalTriple,
    t_values: &[Q],
) -> Subspace {
    let mut span = Subspace::zero(alg.dim());
    for t in t_values {
        let x: Element = triple.w.iter().zip(&triple.f).map(|(a, b)| a + t * b).collect();
        for p in invariants {
            span.insert(&ctx.gradient(p, &x));
        }
    }
    span
}

/// Rank of a list of algebra elements.
pub fn element_rank(v: &[Element]) -> usize {
    rank_of(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, TypeLabel};

    pub(crate) fn algebra(label: &str) -> LieAlgebra {
        let t: TypeLabel = label.parse().unwrap();
        chevalley_algebra(&build_root_system(&t.cartan().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(algebra("A1").dim(), 3);
        assert_eq!(algebra("A2").dim(), 8);
        assert_eq!(algebra("B2").dim(), 10);
        assert_eq!(algebra("G2").dim(), 14);
        assert_eq!(algebra("A1xA1").dim(), 6);
    }

    #[test]
    fn jacobi_and_invariance_for_supported_types() {
        for label in ["A1", "A2", "A3", "B2", "C2", "G2", "A1xA1", "B3", "C3"] {
            let alg = algebra(label);
            assert_eq!(alg.jacobi_violation(), None, "{label}");
            assert_eq!(alg.killing_invariance_violation(), None, "{label}");
        }
    }

    #[test]
    fn structure_constants_have_chevalley_magnitudes() {
        // sl3: [e_1, e_2] = e_12, [e_-1, e_-2] = -e_-12
        let alg = algebra("A2");
        let e1 = alg.basis_vector(alg.pos(0));
        let e2 = alg.basis_vector(alg.pos(1));
        let br = alg.bracket(&e1, &e2).unwrap();
        assert_eq!(br, alg.basis_vector(alg.pos(2)));
        let f1 = alg.basis_vector(alg.neg(0));
        let f2 = alg.basis_vector(alg.neg(1));
        let br = alg.bracket(&f1, &f2).unwrap();
        assert_eq!(br, scale_vec(&q(-1), &alg.basis_vector(alg.neg(2))));
        // G2 has constants of magnitude up to 3
        let g2 = algebra("G2");
        let mut max = 0;
        for a in 0..g2.dim() {
            for b in 0..g2.dim() {
                for &(_, s) in g2.structure_constants(a, b) {
                    if g2.grade(a) != 0 && g2.grade(b) != 0 && g2.grade(a) + g2.grade(b) != 0 {
                        max = max.max(s.abs());
                    }
                }
            }
        }
        assert_eq!(max, 3);
    }

    #[test]
    fn bracket_rejects_wrong_length() {
        let alg = algebra("A1");
        let err = alg.bracket(&[q(1)], &alg.zero()).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 3, got: 1 });
        let x = alg.basis_vector(0);
        assert!(is_zero_vec(&alg.bracket(&x, &x).unwrap()));
    }

    #[test]
    fn killing_pairs_opposite_root_spaces() {
        let alg = algebra("B2");
        let k = alg.killing_gram_i64();
        for i in 0..alg.num_positive() {
            for a in 0..alg.dim() {
                let expected_nonzero = a == alg.neg(i);
                assert_eq!(k[alg.pos(i)][a] != 0, expected_nonzero);
            }
        }
    }

    #[test]
    fn principal_triple_relations() {
        for label in ["A1", "A2", "A3", "B2", "C2", "G2", "A1xA1"] {
            let alg = algebra(label);
            let t = principal_triple(&alg).unwrap();
            for i in 0..alg.rank() {
                let r = alg.roots.simple_root(i);
                assert_eq!(alg.root_value(&r, &t.w), q(2), "{label}");
            }
            assert_eq!(alg.bracket(&t.w, &t.f).unwrap(), scale_vec(&q(-2), &t.f));
            assert_eq!(alg.bracket(&t.w, &t.e).unwrap(), scale_vec(&q(2), &t.e));
            assert_eq!(alg.bracket(&t.e, &t.f).unwrap(), t.w);
            assert_eq!(alg.killing(&t.e1, &t.f), q(1));
        }
    }

    #[test]
    fn regularity_of_distinguished_elements() {
        let alg = algebra("A2");
        let t = principal_triple(&alg).unwrap();
        assert!(!alg.is_regular(&alg.zero()));
        assert!(alg.is_regular(&t.w));
        assert!(alg.is_regular(&t.e1));
        // highest root vector is a minimal nilpotent, not regular
        assert!(!alg.is_regular(&alg.basis_vector(alg.pos(2))));
    }

    #[test]
    fn principal_decomposition_dimensions() {
        for (label, dims) in [("A1", vec![3]), ("A2", vec![3, 5]), ("B2", vec![3, 7]), ("A3", vec![3, 5, 7])] {
            let alg = algebra(label);
            let t = principal_triple(&alg).unwrap();
            let dec = principal_decomposition(&alg, &t).unwrap();
            let got: Vec<usize> = dec.modules.iter().map(|m| m.basis.len()).collect();
            assert_eq!(got, dims, "{label}");
            let all: Vec<Element> = dec.modules.iter().flat_map(|m| m.basis.clone()).collect();
            assert_eq!(element_rank(&all), alg.dim());
            let chain = dec.chain_elements();
            assert_eq!(chain.len(), alg.roots.borel_dim());
            let bminus = alg.span_of_indices(&alg.borel_minus_indices());
            assert_eq!(Subspace::span(alg.dim(), &chain), bminus);
        }
    }

    #[test]
    fn non_principal_triple_is_rejected() {
        let alg = algebra("A2");
        let mut t = principal_triple(&alg).unwrap();
        // a root vector of the highest root has a larger kernel
        t.e = alg.basis_vector(alg.pos(2));
        assert!(matches!(
            principal_decomposition(&alg, &t),
            Err(Error::DecompositionFailure(_))
        ));
    }

    #[test]
    fn u_t_expansion_carries_factorials() {
        // exp(t/2 ad f) z_j = Σ_k t^k z_{jk} / k!, checked at h + 1 values of t
        let alg = algebra("A3");
        let t = principal_triple(&alg).unwrap();
        let dec = principal_decomposition(&alg, &t).unwrap();
        for m in &dec.modules {
            for tv in 0..=alg.roots.coxeter_number as i64 {
                let tq = q(tv);
                let lhs = u_t_action(&alg, &t, &tq, &m.cartan_rep);
                let mut rhs = alg.zero();
                let mut fact = Q::one();
                for (k, z) in m.chain.iter().enumerate() {
                    if k > 0 {
                        fact *= q(k as i64);
                    }
                    crate::linalg::axpy(&mut rhs, &(tq.pow(k as i32) / &fact), z);
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn u_t_moves_w_along_f() {
        let alg = algebra("B2");
        let t = principal_triple(&alg).unwrap();
        let x = u_t_action(&alg, &t, &q(3), &t.w);
        let expect: Element = t.w.iter().zip(&t.f).map(|(a, b)| a + q(3) * b).collect();
        assert_eq!(x, expect);
    }
}
