//! Homogeneous generators of the invariant polynomials `S(g)^G`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::liealgebra::{LieAlgebra, SIGN_CONVENTION};
use crate::linalg::{q, SparseEchelon, SparseRow, Subspace, Q};
use crate::polyring::{GradientContext, Monomial, Polynomial};
use crate::rootdata::TypeLabel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Solver,
    TraceOracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantFamily {
    /// Nondecreasing.
    pub degrees: Vec<usize>,
    pub generators: Vec<Polynomial>,
    pub provenance: Provenance,
}

impl InvariantFamily {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn values_at(&self, x: &[Q]) -> Vec<Q> {
        self.generators.iter().map(|p| p.eval(x)).collect()
    }
}

/// Weight-zero monomials of degree `d` in the coordinates of `g`.
fn weight_zero_monomials(alg: &LieAlgebra, d: u32) -> Vec<Monomial> {
    let l = alg.rank();
    let mut out = Vec::new();
    let mut exps = vec![0u32; alg.dim()];
    let mut weight = vec![0i64; l];
    fn rec(
        alg: &LieAlgebra,
        var: usize,
        left: u32,
        exps: &mut Vec<u32>,
        weight: &mut Vec<i64>,
        out: &mut Vec<Monomial>,
    ) {
        if var == alg.dim() {
            if left == 0 && weight.iter().all(|&w| w == 0) {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        let w = alg.weight(var).clone();
        for e in 0..=left {
            exps[var] = e;
            for (acc, wi) in weight.iter_mut().zip(&w) {
                *acc += e as i64 * wi;
            }
            rec(alg, var + 1, left - e, exps, weight, out);
            for (acc, wi) in weight.iter_mut().zip(&w) {
                *acc -= e as i64 * wi;
            }
        }
        exps[var] = 0;
    }
    rec(alg, 0, d, &mut exps, &mut weight, &mut out);
    out.sort();
    out
}

/// Products of the given generators with total degree `d`.
fn decomposables(gens: &[(usize, Polynomial)], d: usize, nvars: usize) -> Vec<Polynomial> {
    fn rec(gens: &[(usize, Polynomial)], start: usize, left: usize, acc: Polynomial, out: &mut Vec<Polynomial>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..gens.len() {
            let (deg, p) = &gens[i];
            if *deg <= left {
                rec(gens, i, left - deg, acc.mul(p), out);
            }
        }
    }
    let mut out = Vec::new();
    rec(gens, 0, d, Polynomial::constant(nvars, Q::one()), &mut out);
    // the empty product is only reached when d == 0
    out.retain(|p| p.degree() == Some(d as u32));
    out
}

fn to_sparse(p: &Polynomial, index: &BTreeMap<Monomial, usize>) -> Option<SparseRow> {
    let mut row: SparseRow = p.terms().map(|(m, c)| index.get(m).map(|&i| (i, c.clone()))).collect::<Option<_>>()?;
    row.sort_by_key(|(i, _)| *i);
    Some(row)
}

/// Invariants of degree `d`: kernel of the coadjoint action of the Chevalley generators.
fn invariant_space(alg: &LieAlgebra, ctx: &GradientContext, d: u32) -> (Vec<Monomial>, Vec<Vec<Q>>) {
    let monos = weight_zero_monomials(alg, d);
    let dim = alg.dim();
    let mut eqs: BTreeMap<(usize, Monomial), SparseRow> = BTreeMap::new();
    let gens: Vec<usize> = (0..alg.rank())
        .flat_map(|i| {
            let s = alg.roots.positive_index(&alg.roots.simple_root(i)).expect("simple root");
            [alg.pos(s), alg.neg(s)]
        })
        .collect();
    for (g_idx, &a) in gens.iter().enumerate() {
        let z = alg.basis_vector(a);
        for (col, m) in monos.iter().enumerate() {
            let p = Polynomial::from_terms(dim, [(m.clone(), Q::one())]);
            let image = ctx.linear_bracket(&z, &p);
            for (out_m, c) in image.terms() {
                eqs.entry((g_idx, out_m.clone())).or_default().push((col, c.clone()));
            }
        }
    }
    let mut ech = SparseEchelon::new(monos.len());
    for (_, row) in eqs {
        ech.insert(row);
    }
    let kernel = ech.kernel();
    (monos, kernel)
}

/// Computes `ℓ` homogeneous generators with the degrees of the root system.
pub fn invariant_generators(alg: &LieAlgebra, ctx: &GradientContext) -> Result<InvariantFamily> {
    let dim = alg.dim();
    let degrees = alg.roots.degrees.clone();
    let mut found: Vec<(usize, Polynomial)> = Vec::new();
    let mut distinct = degrees.clone();
    distinct.dedup();
    for &d in &distinct {
        let expected = degrees.iter().filter(|&&x| x == d).count();
        let (monos, kernel) = invariant_space(alg, ctx, d as u32);
        let index: BTreeMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech = SparseEchelon::new(monos.len());
        for p in decomposables(&found, d, dim) {
            let row = to_sparse(&p, &index).ok_or_else(|| {
                Error::ConstructionFailure("product of invariants left the weight-zero space".into())
            })?;
            ech.insert(row);
        }
        let mut new = Vec::new();
        for v in &kernel {
            let row: SparseRow = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
            if ech.insert(row) {
                let p = Polynomial::from_terms(dim, monos.iter().cloned().zip(v.iter().cloned()));
                new.push(p.monic());
            }
        }
        if new.len() != expected {
            return Err(Error::WrongDimension {
                degree: d,
                expected,
                found: new.len(),
            });
        }
        found.extend(new.into_iter().map(|p| (d, p)));
    }
    Ok(InvariantFamily {
        degrees,
        generators: found.into_iter().map(|(_, p)| p).collect(),
        provenance: Provenance::Solver,
    })
}

/// Whether two families generate the same invariants in every degree up to the largest generator degree.
pub fn same_invariant_algebra(alg: &LieAlgebra, a: &InvariantFamily, b: &InvariantFamily) -> bool {
    if a.degrees != b.degrees {
        return false;
    }
    let dim = alg.dim();
    let pairs = |f: &InvariantFamily| -> Vec<(usize, Polynomial)> { f.degrees.iter().cloned().zip(f.generators.iter().cloned()).collect() };
    let (ga, gb) = (pairs(a), pairs(b));
    let mut degrees = a.degrees.clone();
    degrees.dedup();
    degrees.into_iter().all(|d| {
        let monos = weight_zero_monomials(alg, d as u32);
        let index: BTreeMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let span = |g: &[(usize, Polynomial)]| -> Option<Subspace> {
            let vs: Option<Vec<Vec<Q>>> = decomposables(g, d, dim).iter().map(|p| p.coords_in(&index)).collect();
            Some(Subspace::span(monos.len(), &vs?))
        };
        match (span(&ga), span(&gb)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    })
}

/// Matrices of the Chevalley basis in the defining representation of `sl(ℓ+1)`.
pub fn type_a_matrices(alg: &LieAlgebra) -> Result<Vec<Vec<Vec<Q>>>> {
    let label = crate::rootdata::classify(&alg.roots.cartan)?;
    if label.0.len() != 1 || label.0[0].series != 'A' {
        return Err(Error::UnsupportedType(label.to_string()));
    }
    let l = alg.rank();
    let n = l + 1;
    let zero = || vec![vec![Q::zero(); n]; n];
    let commutator = |a: &Vec<Vec<Q>>, b: &Vec<Vec<Q>>| {
        let mut c = zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j] += &a[i][k] * &b[k][j] - &b[i][k] * &a[k][j];
                }
            }
        }
        c
    };
    let np = alg.num_positive();
    let mut mats: Vec<Option<Vec<Vec<Q>>>> = vec![None; alg.dim()];
    for i in 0..l {
        let s = alg.roots.positive_index(&alg.roots.simple_root(i)).expect("simple root");
        let mut e = zero();
        e[i][i + 1] = Q::one();
        let mut f = zero();
        f[i + 1][i] = Q::one();
        let mut h = zero();
        h[i][i] = Q::one();
        h[i + 1][i + 1] = -Q::one();
        mats[alg.pos(s)] = Some(e);
        mats[alg.neg(s)] = Some(f);
        mats[alg.cartan(i)] = Some(h);
    }
    for r in 0..np {
        if mats[alg.pos(r)].is_some() {
            continue;
        }
        let root = &alg.roots.positive_roots[r];
        // split off a simple root a with root - a positive; both already built
        let (a, rest) = (0..l)
            .find_map(|i| {
                let mut rest = root.clone();
                rest[i] -= 1;
                let ri = alg.roots.positive_index(&rest)?;
                let ai = alg.roots.positive_index(&alg.roots.simple_root(i))?;
                Some((ai, ri))
            })
            .ok_or_else(|| Error::ConstructionFailure("positive root without a simple summand".into()))?;
        for (x, y, target) in [
            (alg.pos(a), alg.pos(rest), alg.pos(r)),
            (alg.neg(a), alg.neg(rest), alg.neg(r)),
        ] {
            let n_ab = alg
                .structure_constants(x, y)
                .iter()
                .find(|(k, _)| *k == target)
                .map(|(_, s)| *s)
                .ok_or_else(|| Error::ConstructionFailure("missing structure constant".into()))?;
            let c = commutator(mats[x].as_ref().unwrap(), mats[y].as_ref().unwrap());
            let scaled = c.into_iter().map(|row| row.into_iter().map(|v| v / q(n_ab)).collect()).collect();
            mats[target] = Some(scaled);
        }
    }
    Ok(mats.into_iter().map(|m| m.expect("every basis vector realized")).collect())
}

/// Power traces `tr(x^k)`, `k = 2..=ℓ+1`, for type `A_ℓ`.
pub fn trace_oracle_type_a(alg: &LieAlgebra) -> Result<InvariantFamily> {
    let mats = type_a_matrices(alg)?;
    let dim = alg.dim();
    let n = alg.rank() + 1;
    // matrix of linear polynomials x = Σ x_a B_a
    let mut x: Vec<Vec<Polynomial>> = vec![vec![Polynomial::zero(dim); n]; n];
    for (a, m) in mats.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                if !m[i][j].is_zero() {
                    x[i][j].add_term(Monomial::var(dim, a), m[i][j].clone());
                }
            }
        }
    }
    let mut power = x.clone();
    let mut generators = Vec::new();
    for _k in 2..=n {
        let mut next = vec![vec![Polynomial::zero(dim); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Polynomial::zero(dim);
                for k in 0..n {
                    if !power[i][k].is_zero() && !x[k][j].is_zero() {
                        acc = acc.add(&power[i][k].mul(&x[k][j]));
                    }
                }
                next[i][j] = acc;
            }
        }
        power = next;
        let mut tr = Polynomial::zero(dim);
        for (i, row) in power.iter().enumerate() {
            tr = tr.add(&row[i]);
        }
        generators.push(tr);
    }
    Ok(InvariantFamily {
        degrees: (2..=n).collect(),
        generators,
        provenance: Provenance::TraceOracle,
    })
}

/// Hash identifying the algebra presentation: Cartan matrix, sign convention and structure table.
pub fn convention_hash(alg: &LieAlgebra) -> String {
    let mut h = Sha256::new();
    h.update(SIGN_CONVENTION.as_bytes());
    h.update(serde_json::to_vec(alg.roots.cartan.entries()).expect("serializable"));
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            for (k, s) in alg.structure_constants(a, b) {
                h.update(format!("{a},{b},{k},{s};").as_bytes());
            }
        }
    }
    hex::encode(h.finalize())
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    type_label: String,
    convention_hash: String,
    family: InvariantFamily,
}

pub fn cache_path(dir: &Path, label: &TypeLabel, hash: &str) -> PathBuf {
    dir.join(format!("invariants-{label}-{}.json", &hash[..16]))
}

/// Loads generators from `dir` if a matching cache entry exists, else solves and stores them.
pub fn cached_invariant_generators(
    alg: &LieAlgebra,
    ctx: &GradientContext,
    label: &TypeLabel,
    dir: &Path,
) -> Result<(InvariantFamily, bool)> {
    let hash = convention_hash(alg);
    let path = cache_path(dir, label, &hash);
    if let Ok(bytes) = std::fs::read(&path) {
        if let Ok(entry) = serde_json::from_slice::<CacheFile>(&bytes) {
            if entry.convention_hash == hash && entry.family.degrees == alg.roots.degrees {
                return Ok((entry.family, true));
            }
        }
    }
    let family = invariant_generators(alg, ctx)?;
    std::fs::create_dir_all(dir)?;
    let entry = CacheFile {
        type_label: label.to_string(),
        convention_hash: hash,
        family,
    };
    std::fs::write(&path, serde_json::to_vec_pretty(&entry)?)?;
    Ok((entry.family, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank_of;
    use crate::rootdata::build_root_system;

    fn setup(label: &str) -> (LieAlgebra, GradientContext) {
        let t: TypeLabel = label.parse().unwrap();
        let alg = crate::liealgebra::chevalley_algebra(&build_root_system(&t.cartan().unwrap()).unwrap()).unwrap();
        let ctx = GradientContext::new(&alg).unwrap();
        (alg, ctx)
    }

    fn is_invariant(alg: &LieAlgebra, ctx: &GradientContext, p: &Polynomial) -> bool {
        (0..alg.dim()).all(|a| ctx.linear_bracket(&alg.basis_vector(a), p).is_zero())
    }

    #[test]
    fn a1_quadratic_is_killing_form() {
        let (alg, ctx) = setup("A1");
        let fam = invariant_generators(&alg, &ctx).unwrap();
        assert_eq!(fam.degrees, vec![2]);
        // (x, x) = Σ K_ab x_a x_b
        let k = alg.killing_gram();
        let mut kq = Polynomial::zero(3);
        for a in 0..3 {
            for b in 0..3 {
                kq = kq.add(&Polynomial::var(3, a).mul(&Polynomial::var(3, b)).scale(&k[(a, b)]));
            }
        }
        assert_eq!(fam.generators[0], kq.monic());
    }

    #[test]
    fn generators_are_invariant_under_all_of_g() {
        for label in ["A2", "B2", "C2", "A1xA1"] {
            let (alg, ctx) = setup(label);
            let fam = invariant_generators(&alg, &ctx).unwrap();
            assert_eq!(fam.len(), alg.rank());
            for (p, &d) in fam.generators.iter().zip(&fam.degrees) {
                assert!(p.is_homogeneous());
                assert_eq!(p.degree(), Some(d as u32));
                assert!(is_invariant(&alg, &ctx, p), "{label}");
            }
        }
    }

    #[test]
    fn trace_oracle_is_a_representation() {
        let (alg, _) = setup("A3");
        let mats = type_a_matrices(&alg).unwrap();
        let n = 4;
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let mut c = vec![vec![Q::zero(); n]; n];
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            c[i][j] += &mats[a][i][k] * &mats[b][k][j] - &mats[b][i][k] * &mats[a][k][j];
                        }
                    }
                }
                let mut expect = vec![vec![Q::zero(); n]; n];
                for &(k, s) in alg.structure_constants(a, b) {
                    for i in 0..n {
                        for j in 0..n {
                            expect[i][j] += &mats[k][i][j] * q(s);
                        }
                    }
                }
                assert_eq!(c, expect);
            }
        }
    }

    #[test]
    fn trace_oracle_matches_solver_modulo_decomposables() {
        for label in ["A1", "A2", "A3"] {
            let (alg, ctx) = setup(label);
            let solver = invariant_generators(&alg, &ctx).unwrap();
            let oracle = trace_oracle_type_a(&alg).unwrap();
            assert_eq!(solver.degrees, oracle.degrees);
            assert!(same_invariant_algebra(&alg, &solver, &oracle), "{label}");
        }
        // a family missing the cubic generator spans less
        let (alg, ctx) = setup("A2");
        let solver = invariant_generators(&alg, &ctx).unwrap();
        let mut broken = solver.clone();
        broken.generators[1] = Polynomial::var(alg.dim(), 0).pow(3);
        assert!(!same_invariant_algebra(&alg, &solver, &broken));
    }

    #[test]
    fn trace_of_x_vanishes() {
        let (alg, _) = setup("A2");
        let mats = type_a_matrices(&alg).unwrap();
        for m in &mats {
            assert!((0..3).map(|i| m[i][i].clone()).sum::<Q>().is_zero());
        }
    }

    #[test]
    fn oracle_rejects_other_types() {
        let (alg, _) = setup("B2");
        assert!(matches!(trace_oracle_type_a(&alg), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn degree_two_invariants_are_one_dimensional_for_a2() {
        let (alg, ctx) = setup("A2");
        let (_, kernel) = invariant_space(&alg, &ctx, 2);
        assert_eq!(kernel.len(), 1);
        let (_, kernel) = invariant_space(&alg, &ctx, 3);
        assert_eq!(rank_of(&kernel), 1);
    }

    #[test]
    fn cache_round_trip() {
        let (alg, ctx) = setup("B2");
        let dir = tempfile::tempdir().unwrap();
        let label: TypeLabel = "B2".parse().unwrap();
        let (first, hit) = cached_invariant_generators(&alg, &ctx, &label, dir.path()).unwrap();
        assert!(!hit);
        let (second, hit) = cached_invariant_generators(&alg, &ctx, &label, dir.path()).unwrap();
        assert!(hit);
        assert_eq!(first, second);
    }
}
