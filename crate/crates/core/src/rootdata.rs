//! Root systems from Cartan matrices.
//!
//! Convention: entry `(i, j)` of a [`CartanMatrix`] is `α_j(h_i)`, the value of the
//! `j`-th simple root on the `i`-th simple coroot. With this convention `B2` is
//! `[[2, -1], [-2, 2]]` (second root short) and `C2` is its transpose.
//!
//! Roots are integer coordinate vectors over the simple roots; a root's height is
//! its coordinate sum.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer coordinates of a root over the simple roots.
pub type Root = Vec<i64>;

pub fn height(root: &[i64]) -> i64 {
    root.iter().sum()
}

/// Square integer matrix satisfying the generalized Cartan axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for CartanMatrix {
    type Error = Error;
    fn try_from(entries: Vec<Vec<i64>>) -> Result<Self> {
        CartanMatrix::new(entries)
    }
}

impl From<CartanMatrix> for Vec<Vec<i64>> {
    fn from(c: CartanMatrix) -> Self {
        c.entries
    }
}

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let l = entries.len();
        if l == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != l {
                return Err(Error::InvalidCartan(format!("row {i} has length {}", row.len())));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry ({i},{i}) is {}", row[i])));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if a > 0 {
                    return Err(Error::InvalidCartan(format!("positive off-diagonal entry ({i},{j})")));
                }
                if (a == 0) != (entries[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entry ({i},{j}) and ({j},{i}) disagree on vanishing"
                    )));
                }
            }
        }
        Ok(CartanMatrix { entries })
    }

    /// Parses a JSON integer matrix such as `[[2,-1],[-1,2]]`.
    pub fn from_json(s: &str) -> Result<Self> {
        let entries: Vec<Vec<i64>> = serde_json::from_str(s).map_err(|e| Error::Parse {
            input: s.to_string(),
            reason: e.to_string(),
        })?;
        Self::new(entries)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &CartanMatrix) -> CartanMatrix {
        let (a, b) = (self.rank(), other.rank());
        let mut e = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            e[i][..a].copy_from_slice(&self.entries[i]);
        }
        for i in 0..b {
            e[a + i][a..].copy_from_slice(&other.entries[i]);
        }
        CartanMatrix { entries: e }
    }

    /// Connected components of the Dynkin diagram, each sorted ascending.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let l = self.rank();
        let mut seen = vec![false; l];
        let mut comps = Vec::new();
        for s in 0..l {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..l {
                    if !seen[j] && self.entries[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Half squared lengths `(α_i, α_i)/2` making `d_i a_ij` symmetric, scaled to
    /// coprime positive integers per component.
    pub fn symmetrizer(&self) -> Result<Vec<i64>> {
        use num_integer::Integer;
        let l = self.rank();
        // rational d_i as (num, den)
        let mut d: Vec<Option<(i64, i64)>> = vec![None; l];
        for comp in self.components() {
            d[comp[0]] = Some((1, 1));
            let mut queue: VecDeque<usize> = VecDeque::from([comp[0]]);
            while let Some(i) = queue.pop_front() {
                let (n, m) = d[i].unwrap();
                for &j in &comp {
                    if j == i || self.entries[i][j] == 0 {
                        continue;
                    }
                    // d_i a_ij = d_j a_ji
                    let (nj, mj) = (n * self.entries[i][j], m * self.entries[j][i]);
                    let g = nj.gcd(&mj);
                    let (nj, mj) = (nj / g, mj / g);
                    let (nj, mj) = if mj < 0 { (-nj, -mj) } else { (nj, mj) };
                    match d[j] {
                        None => {
                            d[j] = Some((nj, mj));
                            queue.push_back(j);
                        }
                        Some((a, b)) if a * mj != nj * b => {
                            return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                        }
                        _ => {}
                    }
                }
            }
            let lcm = comp.iter().fold(1i64, |acc, &i| acc.lcm(&d[i].unwrap().1));
            let vals: Vec<i64> = comp.iter().map(|&i| d[i].unwrap().0 * lcm / d[i].unwrap().1).collect();
            let g = vals.iter().fold(0i64, |acc, v| acc.gcd(v));
            for (&i, v) in comp.iter().zip(vals) {
                d[i] = Some((v / g, 1));
            }
        }
        Ok(d.into_iter().map(|x| x.unwrap().0).collect())
    }
}

/// A finite root system with its combinatorial skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystem {
    pub cartan: CartanMatrix,
    pub rank: usize,
    /// Positive roots ordered by height, then lexicographically in coordinates.
    pub positive_roots: Vec<Root>,
    pub num_positive: usize,
    pub coxeter_number: usize,
    /// Nondecreasing.
    pub exponents: Vec<usize>,
    pub degrees: Vec<usize>,
    /// `layer_dims[m - 1]` is `r_m` for `m = 1..=h`.
    pub layer_dims: Vec<usize>,
    /// Half squared lengths of the simple roots.
    pub symmetrizer: Vec<i64>,
}

impl RootSystem {
    /// Dimension of a Borel subalgebra.
    pub fn borel_dim(&self) -> usize {
        self.rank + self.num_positive
    }

    pub fn algebra_dim(&self) -> usize {
        self.rank + 2 * self.num_positive
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut r = vec![0; self.rank];
        r[i] = 1;
        r
    }

    /// Index of a positive root.
    pub fn positive_index(&self, root: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.as_slice() == root)
    }

    pub fn is_root(&self, root: &[i64]) -> bool {
        if root.iter().all(|&c| c >= 0) {
            self.positive_index(root).is_some()
        } else if root.iter().all(|&c| c <= 0) {
            let neg: Vec<i64> = root.iter().map(|c| -c).collect();
            self.positive_index(&neg).is_some()
        } else {
            false
        }
    }

    /// `α(h_i)` for a root `α` given in simple-root coordinates.
    pub fn pair_with_coroot(&self, root: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| root[j] * self.cartan.entry(i, j)).sum()
    }

    /// W-invariant form on the root lattice, normalized so `(α_i, α_i) = 2 d_i`.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 {
                    s += a[i] * b[j] * self.symmetrizer[i] * self.cartan.entry(i, j);
                }
            }
        }
        s
    }

    /// Coordinates of the coroot `α^∨` over the simple coroots.
    pub fn coroot_coords(&self, root: &[i64]) -> Vec<i64> {
        let half_len = self.inner(root, root) / 2;
        (0..self.rank)
            .map(|i| {
                let num = root[i] * self.symmetrizer[i];
                debug_assert_eq!(num % half_len, 0);
                num / half_len
            })
            .collect()
    }

    pub fn max_height(&self) -> i64 {
        self.positive_roots.iter().map(|r| height(r)).max().unwrap_or(0)
    }
}

/// Builds the root system by closing the simple roots under simple reflections.
///
/// The closure is abandoned with [`Error::NonFiniteType`] once a root of height
/// above `10 ℓ²` appears.
pub fn build_root_system(cm: &CartanMatrix) -> Result<RootSystem> {
    let l = cm.rank();
    let bound = 10 * l * l;
    let symmetrizer = cm.symmetrizer()?;
    let reflect = |r: &Root, i: usize| -> Root {
        let c: i64 = (0..l).map(|j| r[j] * cm.entry(i, j)).sum();
        let mut s = r.clone();
        s[i] -= c;
        s
    };
    let mut seen: HashSet<Root> = HashSet::new();
    let mut queue: VecDeque<Root> = VecDeque::new();
    for i in 0..l {
        let mut r = vec![0; l];
        r[i] = 1;
        seen.insert(r.clone());
        queue.push_back(r);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..l {
            let s = reflect(&r, i);
            let pos = s.iter().all(|&c| c >= 0);
            let neg = s.iter().all(|&c| c <= 0);
            if !pos && !neg {
                return Err(Error::NonFiniteType { bound });
            }
            if height(&s).unsigned_abs() as usize > bound {
                return Err(Error::NonFiniteType { bound });
            }
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut positive_roots: Vec<Root> = seen.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
    positive_roots.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
    let n = positive_roots.len();
    let max_h = positive_roots.iter().map(|r| height(r)).max().unwrap_or(0) as usize;
    let h = max_h + 1;
    let mut layer_dims = vec![0usize; h];
    layer_dims[0] = l;
    for r in &positive_roots {
        // a root of height m - 1 contributes to r_m
        layer_dims[height(r) as usize] += 1;
    }
    let (degrees, exponents) = degrees_from_layers(&layer_dims);
    Ok(RootSystem {
        cartan: cm.clone(),
        rank: l,
        positive_roots,
        num_positive: n,
        coxeter_number: h,
        exponents,
        degrees,
        layer_dims,
        symmetrizer,
    })
}

/// Dual partition: `out[k-1] = #{ i : parts[i] >= k }`.
pub fn dual_partition(parts: &[usize]) -> Vec<usize> {
    let max = parts.iter().copied().max().unwrap_or(0);
    (1..=max).map(|k| parts.iter().filter(|&&p| p >= k).count()).collect()
}

/// Degrees (nondecreasing) and exponents from the layer dimensions `r_m`.
pub fn degrees_from_layers(layers: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut degrees = dual_partition(layers);
    degrees.sort_unstable();
    let exponents = degrees.iter().map(|d| d - 1).collect();
    (degrees, exponents)
}

/// Returns `(degrees, exponents, layers)` of a root system.
pub fn degrees_and_layers(rs: &RootSystem) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    (rs.degrees.clone(), rs.exponents.clone(), rs.layer_dims.clone())
}

/// One simple factor of a semisimple type label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleType {
    pub series: char,
    pub rank: usize,
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

impl SimpleType {
    pub fn cartan(&self) -> Result<CartanMatrix> {
        let n = self.rank;
        let bad = || Error::UnsupportedType(self.to_string());
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let chain = |a: &mut Vec<Vec<i64>>, upto: usize| {
            for i in 0..upto.saturating_sub(1) {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        };
        match (self.series, n) {
            ('A', n) if n >= 1 => chain(&mut a, n),
            ('B', n) if n >= 2 => {
                chain(&mut a, n);
                a[n - 1][n - 2] = -2;
            }
            ('C', n) if n >= 2 => {
                chain(&mut a, n);
                a[n - 2][n - 1] = -2;
            }
            ('D', n) if n >= 4 => {
                chain(&mut a, n - 1);
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
            }
            ('G', 2) => {
                a[0][1] = -3;
                a[1][0] = -1;
            }
            ('F', 4) => {
                chain(&mut a, 4);
                a[2][1] = -2;
            }
            ('E', n) if (6..=8).contains(&n) => {
                // Bourbaki labeling: 1-3-4-5-6-(7-8), 2 attached to 4
                let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
                for &(i, j) in edges.iter().filter(|(i, j)| *i < n && *j < n) {
                    a[i][j] = -1;
                    a[j][i] = -1;
                }
            }
            _ => return Err(bad()),
        }
        CartanMatrix::new(a)
    }
}

/// A semisimple type as a list of simple factors, e.g. `A1xA1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeLabel(pub Vec<SimpleType>);

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl std::str::FromStr for TypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut parts = Vec::new();
        for piece in s.split(['x', 'X', '×']) {
            let piece = piece.trim();
            let mut chars = piece.chars();
            let series = chars
                .next()
                .ok_or_else(|| parse_err("empty factor"))?
                .to_ascii_uppercase();
            if !"ABCDEFG".contains(series) {
                return Err(parse_err("unknown series letter"));
            }
            let rank: usize = chars.as_str().parse().map_err(|_| parse_err("bad rank"))?;
            if rank == 0 {
                return Err(parse_err("rank must be positive"));
            }
            parts.push(SimpleType { series, rank });
        }
        Ok(TypeLabel(parts))
    }
}

impl TypeLabel {
    pub fn cartan(&self) -> Result<CartanMatrix> {
        let mut it = self.0.iter();
        let first = it.next().ok_or_else(|| Error::UnsupportedType(String::new()))?;
        let mut cm = first.cartan()?;
        for t in it {
            cm = cm.direct_sum(&t.cartan()?);
        }
        Ok(cm)
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|t| t.rank).sum()
    }

    /// Whether the full verification suite supports this type. `G2` needs the
    /// opt-in flag.
    pub fn is_supported(&self, allow_g2: bool) -> bool {
        let simple_ok = |t: &SimpleType| match (t.series, t.rank) {
            ('A', 1..=3) | ('B', 2) | ('C', 2) => true,
            ('G', 2) => allow_g2,
            _ => false,
        };
        let total_dim: usize = self
            .0
            .iter()
            .map(|t| match t.cartan().and_then(|c| build_root_system(&c)) {
                Ok(rs) => rs.algebra_dim(),
                Err(_) => usize::MAX / 4,
            })
            .sum();
        !self.0.is_empty() && self.0.iter().all(simple_ok) && total_dim <= 15
    }
}

/// Identifies the simple factors of a Cartan matrix, in block order. Used to map a
/// raw JSON matrix onto a label.
pub fn classify(cm: &CartanMatrix) -> Result<TypeLabel> {
    let mut factors = Vec::new();
    let mut by_key: HashMap<(usize, Vec<Vec<i64>>), SimpleType> = HashMap::new();
    for comp in cm.components() {
        let sub: Vec<Vec<i64>> = comp
            .iter()
            .map(|&i| comp.iter().map(|&j| cm.entry(i, j)).collect())
            .collect();
        let k = comp.len();
        let rs = build_root_system(&CartanMatrix::new(sub.clone())?)?;
        let key = (k, sub);
        if let Some(t) = by_key.get(&key) {
            factors.push(*t);
            continue;
        }
        let n = rs.num_positive;
        let long_short: HashSet<i64> = rs.symmetrizer.iter().copied().collect();
        let series = match (k, n, long_short.len()) {
            (2, 6, 2) => 'G',
            (4, 24, 2) => 'F',
            (k, n, 1) if n == k * (k + 1) / 2 => 'A',
            (k, n, 1) if k >= 4 && n == k * (k - 1) => 'D',
            (6, 36, 1) | (7, 63, 1) | (8, 120, 1) => 'E',
            (k, n, 2) if n == k * k => {
                // B has a unique short simple root, C a unique long one
                let short: Vec<usize> = (0..k).filter(|&i| rs.symmetrizer[i] == 1).collect();
                if short == [k - 1] {
                    'B'
                } else {
                    'C'
                }
            }
            _ => return Err(Error::UnsupportedType(format!("{:?}", key.1))),
        };
        let t = SimpleType { series, rank: k };
        by_key.insert(key, t);
        factors.push(t);
    }
    Ok(TypeLabel(factors))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        let t: TypeLabel = label.parse().unwrap();
        build_root_system(&t.cartan().unwrap()).unwrap()
    }

    /// Brute-force oracle: all nonnegative integer vectors up to a height bound
    /// that are W-images of a simple root, found by exhaustive reflection words.
    fn brute_force_positive(cm: &CartanMatrix, max_word: usize) -> HashSet<Root> {
        let l = cm.rank();
        let mut found = HashSet::new();
        let mut frontier: Vec<Root> = (0..l)
            .map(|i| {
                let mut r = vec![0; l];
                r[i] = 1;
                r
            })
            .collect();
        for _ in 0..max_word {
            let mut next = Vec::new();
            for r in &frontier {
                if r.iter().all(|&c| c >= 0) {
                    found.insert(r.clone());
                }
                for i in 0..l {
                    let c: i64 = (0..l).map(|j| r[j] * cm.entry(i, j)).sum();
                    let mut s = r.clone();
                    s[i] -= c;
                    next.push(s);
                }
            }
            next.sort();
            next.dedup();
            frontier = next;
        }
        found
    }

    #[test]
    fn a1_has_one_root() {
        let r = rs("A1");
        assert_eq!(r.num_positive, 1);
        assert_eq!(r.borel_dim(), 2);
        assert_eq!(r.layer_dims, vec![1, 1]);
        assert_eq!(r.degrees, vec![2]);
    }

    #[test]
    fn a2_and_b2_match_brute_force() {
        let a2 = rs("A2");
        let heights: Vec<i64> = a2.positive_roots.iter().map(|r| height(r)).collect();
        assert_eq!(heights, vec![1, 1, 2]);
        assert_eq!(a2.coxeter_number, 3);
        let oracle = brute_force_positive(&a2.cartan, 8);
        assert_eq!(oracle, a2.positive_roots.iter().cloned().collect());

        let b2 = rs("B2");
        let heights: Vec<i64> = b2.positive_roots.iter().map(|r| height(r)).collect();
        assert_eq!(heights, vec![1, 1, 2, 3]);
        assert_eq!(b2.coxeter_number, 4);
        let oracle = brute_force_positive(&b2.cartan, 12);
        assert_eq!(oracle, b2.positive_roots.iter().cloned().collect());
    }

    #[test]
    fn degrees_against_known_exponent_tables() {
        // classical exponent tables, independent of the layer computation
        let table: &[(&str, &[usize])] = &[
            ("A1", &[2]),
            ("A2", &[2, 3]),
            ("A3", &[2, 3, 4]),
            ("B2", &[2, 4]),
            ("C2", &[2, 4]),
            ("G2", &[2, 6]),
            ("B3", &[2, 4, 6]),
            ("D4", &[2, 4, 4, 6]),
            ("F4", &[2, 6, 8, 12]),
            ("E6", &[2, 5, 6, 8, 9, 12]),
            ("E8", &[2, 8, 12, 14, 18, 20, 24, 30]),
            ("A1xA1", &[2, 2]),
            ("A2xB2", &[2, 2, 3, 4]),
        ];
        for (label, degrees) in table {
            let r = rs(label);
            assert_eq!(r.degrees, degrees.to_vec(), "{label}");
            assert_eq!(r.degrees.iter().sum::<usize>(), r.borel_dim(), "{label}");
        }
        assert_eq!(rs("E8").num_positive, 120);
    }

    #[test]
    fn layers_are_dual_to_degrees() {
        for label in ["A2", "B2", "A3", "G2", "A1xA1", "D4"] {
            let r = rs(label);
            assert_eq!(r.layer_dims.iter().sum::<usize>(), r.borel_dim());
            assert!(r.layer_dims.windows(2).all(|w| w[0] >= w[1]));
            let mut back = dual_partition(&r.degrees);
            back.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(back, r.layer_dims, "{label}");
            assert_eq!(r.coxeter_number, *r.degrees.iter().max().unwrap());
            assert_eq!(r.coxeter_number as i64, r.max_height() + 1);
        }
        assert_eq!(rs("A2").layer_dims, vec![2, 2, 1]);
        assert_eq!(rs("B2").layer_dims, vec![2, 2, 1, 1]);
    }

    #[test]
    fn affine_matrix_is_rejected() {
        let affine = CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert!(matches!(build_root_system(&affine), Err(Error::NonFiniteType { .. })));
        let a2_affine = CartanMatrix::new(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]).unwrap();
        assert!(matches!(build_root_system(&a2_affine), Err(Error::NonFiniteType { .. })));
    }

    #[test]
    fn malformed_matrices_are_rejected() {
        assert!(CartanMatrix::new(vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(CartanMatrix::new(vec![vec![1]]).is_err());
        assert!(CartanMatrix::from_json("[[2,-1],[-1,2]]").is_ok());
        assert!(CartanMatrix::from_json("not json").is_err());
    }

    #[test]
    fn classification_round_trips_labels() {
        for label in ["A1", "A2", "A3", "B2", "C2", "G2", "B3", "C3", "D4", "A1xA1", "A2xG2"] {
            let t: TypeLabel = label.parse().unwrap();
            let back = classify(&t.cartan().unwrap()).unwrap();
            assert_eq!(back.to_string(), label);
        }
    }

    #[test]
    fn support_gating() {
        for ok in ["A1", "A2", "A3", "B2", "C2", "A1xA1"] {
            assert!(ok.parse::<TypeLabel>().unwrap().is_supported(false), "{ok}");
        }
        assert!(!"G2".parse::<TypeLabel>().unwrap().is_supported(false));
        assert!("G2".parse::<TypeLabel>().unwrap().is_supported(true));
        assert!(!"E8".parse::<TypeLabel>().unwrap().is_supported(true));
        assert!(!"A2xA2".parse::<TypeLabel>().unwrap().is_supported(false));
    }

    #[test]
    fn coroots_are_integral() {
        let b2 = rs("B2");
        for r in &b2.positive_roots {
            let c = b2.coroot_coords(r);
            let back: Vec<i64> = (0..2).map(|i| c[i] * b2.inner(r, r) / 2).collect();
            let expect: Vec<i64> = (0..2).map(|i| r[i] * b2.symmetrizer[i]).collect();
            assert_eq!(back, expect);
        }
    }
}
