//! Runs the full verification suite for one algebra type and seed and renders reports.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hessenberg::{build_chart, centralizer_in_n_minus, hess_section, orbit_slice, poincare_series, HessChart};
use crate::invariants::{
    cached_invariant_generators, convention_hash, invariant_generators, same_invariant_algebra, trace_oracle_type_a,
    InvariantFamily,
};
use crate::liealgebra::{
    chevalley_algebra, principal_decomposition, principal_triple, Element, LieAlgebra, PrincipalTriple, SIGN_CONVENTION,
};
use crate::linalg::{is_zero_vec, q_to_string, rank_of, Subspace, Q};
use crate::mftranslate::{
    choose_regular_y, gradient_span, gradients, pairwise_commute, phi, shift_family, shift_space, zeta_chain, ShiftFamily,
};
use crate::polyring::GradientContext;
use crate::rootdata::{build_root_system, dual_partition, RootSystem, TypeLabel};
use crate::symplectic::{hess_lagrangian_check, polarization_report, transversality_check, zx_lagrangian_check};

pub const REPORT_SCHEMA: &str = "report_v1";

const Y_CHOICE: &str = "coroot coordinates drawn uniformly from [-3,3] by ChaCha8 seeded with the run seed; redrawn until no root vanishes";
const Q_ORDERING: &str = "ascending degree m = d_j - k; ties by ascending invariant index j";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleCounts {
    pub regular_points: usize,
    pub hess_points: usize,
    pub section_values: usize,
    pub lagrangian_points: usize,
    pub transversal_points: usize,
    pub slice_points: usize,
    /// Bound on numerators of sampled coordinates.
    pub numerator_bound: i64,
    /// Bound on denominators of sampled coordinates.
    pub denominator_bound: i64,
}

impl Default for SampleCounts {
    fn default() -> Self {
        SampleCounts {
            regular_points: 10,
            hess_points: 20,
            section_values: 20,
            lagrangian_points: 10,
            transversal_points: 10,
            slice_points: 5,
            numerator_bound: 5,
            denominator_bound: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub type_label: String,
    pub seed: u64,
    pub samples: SampleCounts,
    pub allow_g2: bool,
    /// Floating-point prefilter for sampled rank searches; never decides a verdict.
    pub float_shadow: bool,
    pub format: OutputFormat,
    /// Truncation order of the Poincaré series; defaults to twice the Coxeter number.
    pub series_order: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    /// Record wall-clock time per check. Off by default so reports stay byte-identical.
    pub timings: bool,
}

impl SuiteConfig {
    pub fn new(type_label: &str, seed: u64) -> Self {
        SuiteConfig {
            type_label: type_label.to_string(),
            seed,
            samples: SampleCounts::default(),
            allow_g2: false,
            float_shadow: false,
            format: OutputFormat::Json,
            series_order: None,
            cache_dir: None,
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.samples;
        let counts = [
            s.regular_points,
            s.hess_points,
            s.section_values,
            s.lagrangian_points,
            s.transversal_points,
            s.slice_points,
        ];
        if counts.contains(&0) || s.numerator_bound < 1 || s.denominator_bound < 1 {
            return Err(Error::Parse {
                input: format!("{s:?}"),
                reason: "sample counts and bounds must be at least 1".into(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: u32,
    pub name: String,
    pub claim: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Convention {
    pub signs: String,
    pub y_choice: String,
    pub q_ordering: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    #[serde(rename = "type")]
    pub type_label: String,
    pub seed: u64,
    pub convention: Convention,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention_hash: Option<String>,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn check(&self, id: u32) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mfhess {} type={} seed={}", self.schema, self.type_label, self.seed);
        if let Some(h) = &self.convention_hash {
            let _ = writeln!(out, "convention {h}");
        }
        for c in &self.checks {
            let _ = writeln!(out, "{:<12} {:>2} {}: {}", c.status.label(), c.id, c.name, c.detail);
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} inconclusive, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive),
            self.count(Status::Skipped)
        );
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Text => self.to_text(),
        }
    }
}

/// Check ids, names and the claims they certify.
pub const CHECKS: [(u32, &str, &str); 17] = [
    (1, "degrees-partition", "degrees sum to dim b and the layer dimensions are the dual partition of the degrees"),
    (2, "algebra-soundness", "Jacobi identity and ad-invariance of the Killing form on all basis triples"),
    (3, "principal-decomposition", "g splits into l principal irreducibles of dims 2m_j+1 and the z_jk span b_-"),
    (4, "invariant-gradients", "dI_j(x) are independent exactly at regular x and centralize g^x"),
    (5, "vandermonde-span", "dI_j(w + t f) over h distinct values of t span b_-"),
    (6, "shift-family-commutes", "the shift-of-argument family is Poisson commutative"),
    (7, "shift-span-at-e", "g(V_y, e) = g(V_y, e1) = b and the zeta-chain relations hold"),
    (8, "shift-along-f-span", "g(V_f, w) = b_-"),
    (9, "shift-family-dimensions", "dim V_y = b with graded dimensions r_m"),
    (10, "hess-chart-section", "restricted generators are unitriangular on Hess and Phi restricted to Hess is bijective"),
    (11, "poincare-series", "both product forms of the Poincare series of V_y agree"),
    (12, "hess-strongly-regular", "every point of Hess is strongly regular"),
    (13, "zx-lagrangian", "Z_x is a Lagrangian subspace of T_x(O)"),
    (14, "hess-orbit-lagrangian", "[n_-, v] has dimension n and is isotropic"),
    (15, "transversality", "Z_x and [n_-, x] are complementary and nonsingularly paired"),
    (16, "slice-isotropy", "N_- acts on Hess(O) with trivial isotropy and preserves the invariants"),
    (17, "determinism", "identical configurations give identical reports"),
];

/// Everything built for one type and seed.
#[derive(Clone, Debug)]
pub struct Model {
    pub label: TypeLabel,
    pub roots: RootSystem,
    pub alg: LieAlgebra,
    pub ctx: GradientContext,
    pub triple: PrincipalTriple,
    pub invariants: InvariantFamily,
    pub y: Element,
    pub family: ShiftFamily,
    pub chart: HessChart,
    pub convention_hash: String,
}

#[derive(Clone, Debug, Default)]
pub struct ModelOptions {
    pub allow_g2: bool,
    pub cache_dir: Option<PathBuf>,
}

impl Model {
    pub fn build(label: &str, seed: u64, opts: &ModelOptions) -> Result<Model> {
        let s = Stages::build(label, seed, opts);
        Ok(Model {
            label: s.label?,
            roots: s.roots?,
            alg: s.alg?,
            ctx: s.ctx?,
            triple: s.triple?,
            invariants: s.inv?,
            y: s.y?,
            family: s.fam?,
            chart: s.chart?,
            convention_hash: s.hash?,
        })
    }
}

/// Partial build results; a failed stage poisons the stages after it.
struct Stages {
    label: Result<TypeLabel>,
    roots: Result<RootSystem>,
    supported: Result<()>,
    alg: Result<LieAlgebra>,
    ctx: Result<GradientContext>,
    triple: Result<PrincipalTriple>,
    inv: Result<InvariantFamily>,
    y: Result<Element>,
    fam: Result<ShiftFamily>,
    chart: Result<HessChart>,
    hash: Result<String>,
}

fn both<'a, A, B>(a: &'a Result<A>, b: &'a Result<B>) -> Result<(&'a A, &'a B)> {
    match (a, b) {
        (Ok(a), Ok(b)) => Ok((a, b)),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    }
}

impl Stages {
    fn build(label: &str, seed: u64, opts: &ModelOptions) -> Stages {
        let parsed: Result<TypeLabel> = label.parse();
        let roots = parsed.as_ref().map_err(Clone::clone).and_then(|t| build_root_system(&t.cartan()?));
        let supported = parsed.as_ref().map_err(Clone::clone).and_then(|t| {
            if t.is_supported(opts.allow_g2) {
                Ok(())
            } else {
                Err(Error::UnsupportedType(t.to_string()))
            }
        });
        let alg = both(&roots, &supported).and_then(|(rs, _)| chevalley_algebra(rs));
        let ctx = alg.as_ref().map_err(Clone::clone).and_then(GradientContext::new);
        let triple = alg.as_ref().map_err(Clone::clone).and_then(principal_triple);
        let inv = both(&alg, &ctx).and_then(|(a, c)| match (&opts.cache_dir, &parsed) {
            (Some(dir), Ok(t)) => cached_invariant_generators(a, c, t, dir).map(|(f, _)| f),
            _ => invariant_generators(a, c),
        });
        let y = alg.as_ref().map_err(Clone::clone).and_then(|a| choose_regular_y(a, seed));
        let fam = both(&inv, &y).and_then(|(i, y)| shift_family(i, y));
        let chart = both(&alg, &ctx)
            .and_then(|(a, c)| Ok((a, c, triple.as_ref().map_err(Clone::clone)?, fam.as_ref().map_err(Clone::clone)?)))
            .and_then(|(a, c, t, f)| build_chart(a, c, t, f));
        let hash = both(&alg, &y).map(|(a, y)| {
            let mut h = Sha256::new();
            h.update(convention_hash(a).as_bytes());
            h.update(Y_CHOICE.as_bytes());
            h.update(Q_ORDERING.as_bytes());
            for c in y {
                h.update(q_to_string(c).as_bytes());
                h.update(b";");
            }
            hex::encode(h.finalize())
        });
        Stages {
            label: parsed,
            roots,
            supported,
            alg,
            ctx,
            triple,
            inv,
            y,
            fam,
            chart,
            hash,
        }
    }

    /// Digest of every built artifact.
    fn fingerprint(&self) -> Option<String> {
        let mut h = Sha256::new();
        h.update(self.hash.as_ref().ok()?.as_bytes());
        h.update(serde_json::to_vec(self.inv.as_ref().ok()?).ok()?);
        h.update(serde_json::to_vec(self.fam.as_ref().ok()?).ok()?);
        h.update(serde_json::to_vec(self.chart.as_ref().ok()?).ok()?);
        h.update(serde_json::to_vec(self.triple.as_ref().ok()?).ok()?);
        Some(hex::encode(h.finalize()))
    }
}

/// Sampling regions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Ambient,
    /// Ambient points re-verified to be regular.
    Regular,
    Hess,
    CartanRegular,
    /// `exp(ad n) v0` for random `n ∈ n_-`, re-verified to lie in the slice through `v0`.
    Slice(Element),
}

impl Region {
    fn tag(&self) -> &'static str {
        match self {
            Region::Ambient => "ambient",
            Region::Regular => "regular",
            Region::Hess => "hess",
            Region::CartanRegular => "cartan-regular",
            Region::Slice(_) => "slice",
        }
    }
}

/// Deterministic RNG for one check.
pub fn check_rng(seed: u64, stream: u32) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(b"mfhess-sample");
    h.update(seed.to_le_bytes());
    h.update(stream.to_le_bytes());
    let digest = h.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

fn random_q(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Q {
    Q::new(rng.random_range(-num..=num).into(), rng.random_range(1..=den).into())
}

/// Deterministic rational sample points in a region.
pub fn sample_points(
    model: &Model,
    rng: &mut ChaCha8Rng,
    region: &Region,
    count: usize,
    samples: &SampleCounts,
) -> Result<Vec<Element>> {
    sample_with(&model.alg, Some(&model.chart), Some(&model.invariants), rng, region, count, samples)
}

fn sample_with(
    alg: &LieAlgebra,
    chart: Option<&HessChart>,
    inv: Option<&InvariantFamily>,
    rng: &mut ChaCha8Rng,
    region: &Region,
    count: usize,
    samples: &SampleCounts,
) -> Result<Vec<Element>> {
    let (nb, db) = (samples.numerator_bound, samples.denominator_bound);
    let max_attempts = 50 * count.max(1);
    let exhausted = || Error::RegionExhausted {
        region: region.tag().into(),
        attempts: max_attempts,
    };
    let need_chart = || chart.ok_or_else(exhausted);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > max_attempts {
            return Err(exhausted());
        }
        let candidate = match region {
            Region::Ambient | Region::Regular => {
                let x: Element = (0..alg.dim()).map(|_| random_q(rng, nb, db)).collect();
                if *region == Region::Regular && !alg.is_regular(&x) {
                    continue;
                }
                x
            }
            Region::CartanRegular => {
                let c: Vec<Q> = (0..alg.rank()).map(|_| random_q(rng, nb, db)).collect();
                let y = alg.cartan_element(&c);
                if !alg.is_regular_in_cartan(&y) {
                    continue;
                }
                y
            }
            Region::Hess => {
                let chart = need_chart()?;
                let s: Vec<Q> = (0..chart.len()).map(|_| random_q(rng, nb, db)).collect();
                chart.point(&s)
            }
            Region::Slice(v0) => {
                let chart = need_chart()?;
                let inv = inv.ok_or_else(exhausted)?;
                let mut n = alg.zero();
                for a in alg.n_minus_indices() {
                    n[a] = random_q(rng, nb, db);
                }
                let v = alg.exp_ad(&n, v0).ok_or_else(exhausted)?;
                if !orbit_slice(inv, v0).contains(alg, chart, inv, &v) {
                    continue;
                }
                v
            }
        };
        out.push(candidate);
    }
    Ok(out)
}

fn vec_json(v: &[Q]) -> Value {
    Value::from(v.iter().map(q_to_string).collect::<Vec<_>>())
}

struct Outcome {
    status: Status,
    detail: String,
    witness: Option<Value>,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        status: Status::Pass,
        detail: detail.into(),
        witness: None,
    }
}

fn fail(detail: impl Into<String>, witness: Value) -> Outcome {
    Outcome {
        status: Status::Fail,
        detail: detail.into(),
        witness: Some(witness),
    }
}

fn verdict(ok: bool, detail: impl Into<String>, witness: impl FnOnce() -> Value) -> Outcome {
    if ok {
        pass(detail)
    } else {
        fail(detail, witness())
    }
}

/// Sample sets drawn during a run, replayed by the determinism check.
struct SampleLog {
    entries: Vec<(u32, Region, usize, Vec<Element>)>,
}

struct Runner<'a> {
    cfg: &'a SuiteConfig,
    stages: &'a Stages,
    log: SampleLog,
}

impl Runner<'_> {
    fn draw(&mut self, stream: u32, region: Region, count: usize) -> Result<Vec<Element>> {
        let s = self.stages;
        let alg = s.alg.as_ref().map_err(Clone::clone)?;
        let mut rng = check_rng(self.cfg.seed, stream);
        let pts = sample_with(alg, s.chart.as_ref().ok(), s.inv.as_ref().ok(), &mut rng, &region, count, &self.cfg.samples)?;
        self.log.entries.push((stream, region, count, pts.clone()));
        Ok(pts)
    }

    fn run(&mut self, id: u32) -> Result<Outcome> {
        let s = self.stages;
        let cfg = self.cfg;
        macro_rules! get {
            ($f:ident) => {
                s.$f.as_ref().map_err(Clone::clone)?
            };
        }
        match id {
            1 => {
                let rs = get!(roots);
                let b = rs.borel_dim();
                let sum: usize = rs.degrees.iter().sum();
                let dual = dual_partition(&rs.degrees);
                let ok = sum == b && dual == rs.layer_dims && rs.layer_dims.iter().sum::<usize>() == b;
                Ok(verdict(
                    ok,
                    format!("degrees {:?}, layers {:?}, b = {b}", rs.degrees, rs.layer_dims),
                    || json!({"degrees": rs.degrees, "layers": rs.layer_dims, "dual_of_degrees": dual}),
                ))
            }
            2 => {
                get!(supported);
                let alg = get!(alg);
                let jac = alg.jacobi_violation();
                let kil = alg.killing_invariance_violation();
                let triples = alg.dim() * (alg.dim() - 1) * (alg.dim() - 2) / 6;
                Ok(verdict(
                    jac.is_none() && kil.is_none(),
                    format!("dim {}, {triples} Jacobi triples, {} invariance triples", alg.dim(), alg.dim().pow(3)),
                    || json!({"jacobi": jac, "killing_invariance": kil}),
                ))
            }
            3 => {
                let alg = get!(alg);
                let dec = principal_decomposition(alg, get!(triple))?;
                let dims: Vec<usize> = dec.modules.iter().map(|m| m.basis.len()).collect();
                let expected: Vec<usize> = alg.roots.exponents.iter().map(|m| 2 * m + 1).collect();
                let mut sorted = dims.clone();
                sorted.sort();
                let all: Vec<Element> = dec.modules.iter().flat_map(|m| m.basis.clone()).collect();
                let full = rank_of(&all);
                let chain = dec.chain_elements();
                let span = Subspace::span(alg.dim(), &chain);
                let bminus = alg.span_of_indices(&alg.borel_minus_indices());
                let ok = sorted == expected && full == alg.dim() && span == bminus && chain.len() == alg.roots.borel_dim();
                Ok(verdict(ok, format!("module dims {dims:?}, z_jk rank {}", span.dim()), || {
                    json!({"module_dims": dims, "expected": expected, "total_rank": full, "chain_rank": span.dim()})
                }))
            }
            4 => {
                let alg = get!(alg);
                let ctx = get!(ctx);
                let inv = get!(inv);
                let l = alg.rank();
                for (j, p) in inv.generators.iter().enumerate() {
                    if let Some(a) = (0..alg.dim()).find(|&a| !ctx.linear_bracket(&alg.basis_vector(a), p).is_zero()) {
                        return Ok(fail(format!("I_{} not invariant", j + 1), json!({"generator": j, "basis": alg.basis_label(a)})));
                    }
                }
                let mut notes = Vec::new();
                if let Ok(oracle) = trace_oracle_type_a(alg) {
                    if !same_invariant_algebra(alg, inv, &oracle) {
                        return Ok(fail("solver disagrees with the trace oracle", json!({"oracle_degrees": oracle.degrees})));
                    }
                    notes.push("trace oracle agrees".to_string());
                }
                let pts = self.draw(4, Region::Regular, cfg.samples.regular_points)?;
                for x in &pts {
                    let grads = gradients(ctx, &inv.generators, x);
                    if rank_of(&grads) != l {
                        return Ok(fail("gradient rank drops at a regular point", json!({"x": vec_json(x)})));
                    }
                    for k in alg.centralizer(x) {
                        for g in &grads {
                            if !is_zero_vec(&alg.bracket_unchecked(g, &k)) {
                                return Ok(fail("dI(x) does not centralize g^x", json!({"x": vec_json(x)})));
                            }
                        }
                    }
                }
                let mut singular = vec![("zero", alg.zero())];
                let top = alg.basis_vector(alg.pos(alg.num_positive() - 1));
                if !alg.is_regular(&top) {
                    singular.push(("highest root vector", top));
                } else {
                    notes.push("no nonzero non-regular root vector".to_string());
                }
                for (name, x) in &singular {
                    let r = rank_of(&gradients(ctx, &inv.generators, x));
                    if r >= l {
                        return Ok(fail(format!("full gradient rank at non-regular point ({name})"), json!({"x": vec_json(x)})));
                    }
                }
                notes.insert(0, format!("rank {l} at {} regular points, deficient at {} non-regular points", pts.len(), singular.len()));
                Ok(pass(notes.join("; ")))
            }
            5 => {
                let alg = get!(alg);
                let ctx = get!(ctx);
                let inv = get!(inv);
                let t = get!(triple);
                let h = alg.roots.coxeter_number;
                let ts: Vec<Q> = (0..h as i64).map(crate::linalg::q).collect();
                let span = crate::liealgebra::vandermonde_span(alg, ctx, &inv.generators, t, &ts);
                let single = crate::liealgebra::vandermonde_span(alg, ctx, &inv.generators, t, &[crate::linalg::q(1)]);
                let bminus = alg.span_of_indices(&alg.borel_minus_indices());
                let ok = span == bminus && single.dim() < bminus.dim();
                Ok(verdict(ok, format!("{h} values of t give dim {}, one value gives dim {}", span.dim(), single.dim()), || {
                    json!({"span_dim": span.dim(), "single_dim": single.dim(), "b": bminus.dim()})
                }))
            }
            6 => {
                let fam = get!(fam);
                match pairwise_commute(get!(ctx), fam) {
                    Ok(n) => Ok(pass(format!("{n} brackets vanish identically"))),
                    Err((a, b, br)) => Ok(fail(
                        format!("[q_{}, q_{}] is nonzero", a + 1, b + 1),
                        json!({"pair": [a + 1, b + 1], "terms": br.num_terms(), "bracket": br}),
                    )),
                }
            }
            7 => {
                let alg = get!(alg);
                let ctx = get!(ctx);
                let fam = get!(fam);
                let t = get!(triple);
                let y = get!(y);
                let b = alg.roots.borel_dim();
                let de = gradient_span(ctx, &fam.polys(), &t.e).dim();
                let de1 = gradient_span(ctx, &fam.polys(), &t.e1).dim();
                if de != b || de1 != b {
                    return Ok(fail(format!("dims {de}, {de1} instead of {b}"), json!({"at_e": de, "at_e1": de1})));
                }
                for (j, p) in get!(inv).generators.iter().enumerate() {
                    let chain = zeta_chain(alg, ctx, t, y, p)?;
                    let fails = chain.verify(alg, &t.e, y)?;
                    if !fails.is_empty() {
                        return Ok(fail(
                            format!("zeta chain of I_{} broken", j + 1),
                            json!({"invariant": j + 1, "failures": format!("{fails:?}")}),
                        ));
                    }
                }
                Ok(pass(format!("dim {b} at e and e1; {} zeta chains verified", alg.rank())))
            }
            8 => {
                let alg = get!(alg);
                let t = get!(triple);
                let vf = shift_space(get!(inv), &t.f);
                let span = gradient_span(get!(ctx), &vf, &t.w);
                let bminus = alg.span_of_indices(&alg.borel_minus_indices());
                Ok(verdict(span == bminus, format!("dim V_f = {}, dim g(V_f, w) = {}", vf.len(), span.dim()), || {
                    json!({"span_dim": span.dim(), "contained_in_b_minus": bminus.contains_subspace(&span)})
                }))
            }
            9 => {
                let fam = get!(fam);
                let rs = get!(roots);
                let ranks = fam.graded_ranks();
                let ok = fam.len() == rs.borel_dim()
                    && ranks.iter().sum::<usize>() == rs.borel_dim()
                    && ranks == rs.layer_dims
                    && fam.index_set.len() == rs.rank;
                Ok(verdict(ok, format!("dim V_y = {}, graded {:?}", ranks.iter().sum::<usize>(), ranks), || {
                    json!({"graded_ranks": ranks, "layers": rs.layer_dims})
                }))
            }
            10 => {
                let chart = get!(chart);
                let fam = get!(fam);
                let alg = get!(alg);
                if !chart.is_unitriangular() {
                    return Ok(fail("s-Jacobian not unitriangular", json!({})));
                }
                let pts = self.draw(10, Region::Hess, cfg.samples.hess_points)?;
                for v in &pts {
                    let back = hess_section(chart, &phi(fam, v))?;
                    if &back != v {
                        return Ok(fail("section of Phi(v) differs from v", json!({"v": vec_json(v), "section": vec_json(&back)})));
                    }
                }
                let mut rng = check_rng(cfg.seed, 1010);
                let (nb, db) = (cfg.samples.numerator_bound, cfg.samples.denominator_bound);
                for _ in 0..cfg.samples.section_values {
                    let c: Vec<Q> = (0..chart.len()).map(|_| random_q(&mut rng, nb, db)).collect();
                    let v = hess_section(chart, &c)?;
                    if !chart.contains(alg, &v) || phi(fam, &v) != c {
                        return Ok(fail("Phi of the section differs from the values", json!({"c": vec_json(&c)})));
                    }
                }
                Ok(pass(format!(
                    "unitriangular; {} point and {} value round trips",
                    pts.len(),
                    cfg.samples.section_values
                )))
            }
            11 => {
                let rs = get!(roots);
                let order = cfg.series_order.unwrap_or(2 * rs.coxeter_number);
                let p = poincare_series(rs, order);
                Ok(verdict(p.agree(), format!("agree to order {order}"), || json!(p)))
            }
            12 => {
                let ctx = get!(ctx);
                let fam = get!(fam);
                let alg = get!(alg);
                let pts = self.draw(12, Region::Hess, cfg.samples.hess_points)?;
                for x in &pts {
                    let r = rank_of(&gradients(ctx, &fam.polys(), x));
                    if r != fam.len() || !alg.is_regular(x) {
                        return Ok(fail(format!("gradient rank {r}"), json!({"x": vec_json(x)})));
                    }
                }
                Ok(pass(format!("rank {} at {} points", fam.len(), pts.len())))
            }
            13 => {
                let ctx = get!(ctx);
                let fam = get!(fam);
                let pts = self.draw(12, Region::Hess, cfg.samples.hess_points)?;
                for x in &pts {
                    let v = zx_lagrangian_check(ctx, fam, x)?;
                    if !v.holds() {
                        return Ok(fail(format!("dim Z_x = {}, isotropic = {}", v.dim, v.isotropic), json!({"x": vec_json(x), "defect": v.defect})));
                    }
                }
                Ok(pass(format!("dim Z_x = n = {} and isotropic at {} points", get!(alg).num_positive(), pts.len())))
            }
            14 => {
                let alg = get!(alg);
                let pts = self.draw(14, Region::Hess, cfg.samples.lagrangian_points)?;
                for v in &pts {
                    let r = hess_lagrangian_check(alg, v);
                    if !r.holds() {
                        return Ok(fail(format!("dim [n_-, v] = {}, isotropic = {}", r.dim, r.isotropic), json!({"v": vec_json(v)})));
                    }
                }
                Ok(pass(format!("dim n = {} and isotropic at {} points", alg.num_positive(), pts.len())))
            }
            15 => {
                let ctx = get!(ctx);
                let fam = get!(fam);
                let chart = get!(chart);
                let pts = self.draw(15, Region::Hess, cfg.samples.transversal_points)?;
                for x in &pts {
                    let t = transversality_check(ctx, fam, chart, x)?;
                    if !t.holds() {
                        return Ok(fail("transversality fails", json!({"x": vec_json(x), "verdict": t})));
                    }
                }
                Ok(pass(format!("direct sum of dim {} with nonsingular pairing at {} points", 2 * get!(alg).num_positive(), pts.len())))
            }
            16 => {
                let alg = get!(alg);
                let ctx = get!(ctx);
                let fam = get!(fam);
                let chart = get!(chart);
                let inv = get!(inv);
                let v0 = self.draw(160, Region::Hess, 1)?.remove(0);
                let slice = orbit_slice(inv, &v0);
                let pts = self.draw(16, Region::Slice(v0.clone()), cfg.samples.slice_points)?;
                for v in std::iter::once(&v0).chain(&pts) {
                    if centralizer_in_n_minus(alg, v) != 0 {
                        return Ok(fail("nontrivial isotropy in n_-", json!({"v": vec_json(v)})));
                    }
                    if !slice.contains(alg, chart, inv, v) {
                        return Ok(fail("left the slice", json!({"v": vec_json(v)})));
                    }
                }
                let fixed: Vec<usize> = fam.index_set.clone();
                let phi0 = phi(fam, &v0);
                for v in &pts {
                    let pv = phi(fam, v);
                    if fixed.iter().any(|&b| pv[b] != phi0[b]) {
                        return Ok(fail("invariant components of Phi moved", json!({"v": vec_json(v)})));
                    }
                }
                let rep = polarization_report(ctx, fam, chart, &pts);
                Ok(verdict(rep.all_pass(), format!("{} slice points, trivial isotropy, pointwise polarization holds", pts.len()), || {
                    json!(rep)
                }))
            }
            17 => {
                let first = s.fingerprint().ok_or_else(|| Error::ConstructionFailure("incomplete build".into()))?;
                let again = Stages::build(&cfg.type_label, cfg.seed, &options(cfg));
                let second = again.fingerprint();
                if second.as_deref() != Some(first.as_str()) {
                    return Ok(fail("rebuild produced different artifacts", json!({"first": first, "second": second})));
                }
                let alg = get!(alg);
                for (stream, region, count, pts) in &self.log.entries {
                    let mut rng = check_rng(cfg.seed, *stream);
                    let redo = sample_with(alg, again.chart.as_ref().ok(), again.inv.as_ref().ok(), &mut rng, region, *count, &cfg.samples)?;
                    if &redo != pts {
                        return Ok(fail("resampling differs", json!({"stream": stream, "region": region.tag()})));
                    }
                }
                Ok(pass(format!("rebuild and {} sample sets reproduced; artifacts {}", self.log.entries.len(), &first[..16])))
            }
            _ => unreachable!("unknown check id"),
        }
    }
}

fn options(cfg: &SuiteConfig) -> ModelOptions {
    ModelOptions {
        allow_g2: cfg.allow_g2,
        cache_dir: cfg.cache_dir.clone(),
    }
}

/// Runs every check in id order. Module errors become failed checks.
pub fn run_suite(cfg: &SuiteConfig) -> VerificationReport {
    let stages = Stages::build(&cfg.type_label, cfg.seed, &options(cfg));
    let mut runner = Runner {
        cfg,
        stages: &stages,
        log: SampleLog { entries: Vec::new() },
    };
    let config_error = cfg.validate().err();
    let mut checks = Vec::with_capacity(CHECKS.len());
    for (id, name, claim) in CHECKS {
        let start = Instant::now();
        let gated = match (&config_error, &stages.label, &stages.supported) {
            (Some(e), _, _) => Some(e.clone()),
            (_, Err(e), _) => Some(e.clone()),
            (_, _, Err(e)) if id > 2 => Some(e.clone()),
            _ => None,
        };
        let outcome = match gated {
            Some(e) if id > 1 && !(id == 2 && matches!(e, Error::UnsupportedType(_))) => Outcome {
                status: Status::Skipped,
                detail: e.to_string(),
                witness: None,
            },
            Some(e) => fail(e.to_string(), json!({"error": e.to_string()})),
            None => match runner.run(id) {
                Ok(o) => o,
                Err(e) => fail(e.to_string(), json!({"error": e.to_string()})),
            },
        };
        checks.push(CheckRecord {
            id,
            name: name.to_string(),
            claim: claim.to_string(),
            status: outcome.status,
            detail: outcome.detail,
            witness: outcome.witness,
            elapsed_ms: cfg.timings.then(|| start.elapsed().as_millis() as u64),
        });
    }
    VerificationReport {
        schema: REPORT_SCHEMA.to_string(),
        type_label: stages.label.as_ref().map(|t| t.to_string()).unwrap_or_else(|_| cfg.type_label.clone()),
        seed: cfg.seed,
        convention: Convention {
            signs: SIGN_CONVENTION.to_string(),
            y_choice: Y_CHOICE.to_string(),
            q_ordering: Q_ORDERING.to_string(),
            y: stages.y.as_ref().ok().map(|y| y.iter().map(q_to_string).collect()),
        },
        convention_hash: stages.hash.as_ref().ok().cloned(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_suite_passes_and_is_deterministic() {
        let cfg = SuiteConfig::new("A1", 42);
        let r1 = run_suite(&cfg);
        assert!(r1.passed(), "{}", r1.to_text());
        assert_eq!(r1.count(Status::Pass), 17);
        let r2 = run_suite(&cfg);
        assert_eq!(r1.to_json(), r2.to_json());
        let ids: Vec<u32> = r1.checks.iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=17).collect::<Vec<_>>());
    }

    #[test]
    fn e8_is_gated() {
        let r = run_suite(&SuiteConfig::new("E8", 1));
        assert_eq!(r.check(1).unwrap().status, Status::Pass);
        assert_eq!(r.check(2).unwrap().status, Status::Fail);
        assert!(r.check(2).unwrap().detail.contains("unsupported"));
        assert!(r.checks[2..].iter().all(|c| c.status == Status::Skipped));
        assert!(!r.passed());
    }

    #[test]
    fn bad_label_fails_first_check() {
        let r = run_suite(&SuiteConfig::new("Q7", 1));
        assert_eq!(r.check(1).unwrap().status, Status::Fail);
        assert!(r.check(1).unwrap().witness.is_some());
        assert!(r.checks[1..].iter().all(|c| c.status == Status::Skipped));
    }

    #[test]
    fn zero_samples_are_rejected() {
        let mut cfg = SuiteConfig::new("A1", 1);
        cfg.samples.hess_points = 0;
        let r = run_suite(&cfg);
        assert!(!r.passed());
    }

    #[test]
    fn g2_requires_flag() {
        let r = run_suite(&SuiteConfig::new("G2", 1));
        assert_eq!(r.check(2).unwrap().status, Status::Fail);
    }

    #[test]
    fn samples_respect_regions() {
        let m = Model::build("A2", 3, &ModelOptions::default()).unwrap();
        let s = SampleCounts::default();
        let mut rng = check_rng(3, 0);
        assert!(sample_points(&m, &mut rng, &Region::Hess, 0, &s).unwrap().is_empty());
        for x in sample_points(&m, &mut rng, &Region::Hess, 3, &s).unwrap() {
            assert!(m.chart.contains(&m.alg, &x));
        }
        for y in sample_points(&m, &mut rng, &Region::CartanRegular, 3, &s).unwrap() {
            assert!(m.alg.is_regular_in_cartan(&y));
        }
        for x in sample_points(&m, &mut rng, &Region::Regular, 3, &s).unwrap() {
            assert!(m.alg.is_regular(&x));
        }
        let v0 = m.chart.e1.clone();
        let slice = orbit_slice(&m.invariants, &v0);
        for v in sample_points(&m, &mut rng, &Region::Slice(v0), 3, &s).unwrap() {
            assert!(slice.contains(&m.alg, &m.chart, &m.invariants, &v));
        }
    }

    #[test]
    fn timings_are_opt_in() {
        let mut cfg = SuiteConfig::new("A1", 5);
        assert!(run_suite(&cfg).checks.iter().all(|c| c.elapsed_ms.is_none()));
        cfg.timings = true;
        assert!(run_suite(&cfg).checks.iter().all(|c| c.elapsed_ms.is_some()));
    }
}
