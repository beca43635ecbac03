//! Audits: instance checks of vanishing theorems. Each audit evaluates the
//! computable hypotheses on concrete modules and asserts the conclusion
//! through a truncation bound only when every hypothesis holds.

use std::sync::Arc;

use indexmap::IndexMap;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::eta::{eta_from_profile, tolerance};
use super::period::detect_period;
use super::sp::{sp_check_with_profile, tor_window};
use super::{Bounds, Rational};
use crate::error::{Error, Result};
use crate::homology::{depth, pd_over_ring, tor, tor_module, Pd, TorProfile};
use crate::module::FpModule;
use crate::poly::{krull_dim, Field, Monomial, Poly};
use crate::random::{random_module, RandomParams};
use crate::ring::Ring;
use crate::serre::{is_reflexive, is_torsion_free, quasi_lift, pushforward, serre, serre_by_ext, supp_contained, torsion};
use crate::tensor_tau::{rank_surrogate, tensor_power};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    True,
    False,
    Unknown,
    NotAsserted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub statement: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

/// Why an audit is inconclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InconclusiveKind {
    /// A hypothesis is false, so nothing is asserted.
    HypothesisFailed,
    /// A hypothesis or the conclusion could not be decided within bounds.
    BoundTooSmall,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditReport {
    pub theorem_id: String,
    pub inputs: IndexMap<String, Value>,
    pub bounds: IndexMap<String, usize>,
    pub hypotheses: Vec<Check>,
    pub conclusion: Conclusion,
    pub caveats: Vec<String>,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inconclusive: Option<InconclusiveKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArgKind {
    Module,
    ModuleList,
    Int,
    IdealList,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArgSpec {
    pub name: &'static str,
    pub kind: ArgKind,
    pub required: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub default: Option<&'static str>,
    pub doc: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditSpec {
    pub id: &'static str,
    pub statement: &'static str,
    pub args: Vec<ArgSpec>,
    /// Bounds the audit reads, with their defaults.
    pub bounds: IndexMap<&'static str, usize>,
}

const fn arg(name: &'static str, kind: ArgKind, required: bool, default: Option<&'static str>, doc: &'static str) -> ArgSpec {
    ArgSpec { name, kind, required, default, doc }
}

fn module_arg(name: &'static str, doc: &'static str) -> ArgSpec {
    arg(name, ArgKind::Module, true, None, doc)
}

fn spec(id: &'static str, statement: &'static str, args: Vec<ArgSpec>, bounds: &[&'static str]) -> AuditSpec {
    let d = Bounds::default();
    AuditSpec { id, statement, args, bounds: bounds.iter().map(|k| (*k, d.get(k).unwrap())).collect() }
}

/// The audit catalog in a fixed order.
pub fn list_audits() -> Vec<AuditSpec> {
    use ArgKind::*;
    let m = || module_arg("M", "first module");
    let n = || module_arg("N", "second module");
    let c = || arg("c", Int, false, Some("max(1, codim R)"), "relative codimension");
    vec![
        spec(
            "TOR1",
            "SP_c with c ≥ codim R, dim R ≥ codim R, (c = 1: M or N torsion-free) and Tor_1(M,N) = 0 imply Tor_i(M,N) = 0 for all i ≥ 1",
            vec![m(), n(), c()],
            &["torMaxDeg", "serreN"],
        ),
        spec(
            "RIGID",
            "Tor finite for i ≫ 0, η_c(M,N) = 0 and Tor_i = 0 for i = s..s+c−1 imply Tor_i = 0 for all i ≥ s",
            vec![m(), n(), c(), arg("s", Int, false, Some("1"), "first vanishing degree")],
            &["torMaxDeg", "etaNMax", "maxStep"],
        ),
        spec(
            "ETA-TF",
            "over a hypersurface with dim R ≥ 1 and M⊗N torsion-free, (1) η₁(M, tf N) = 0 and M ≠ 0, or (2) η₁(M,N) = 0 and Supp tp N ⊆ Supp M, imply M, N Tor-independent and N torsion-free",
            vec![m(), n(), arg("variant", Int, false, Some("2"), "which alternative hypothesis to check (1 or 2)")],
            &["torMaxDeg", "maxStep"],
        ),
        spec(
            "ETA2",
            "dim R ≥ c, SP_c, Supp tp N ⊆ Supp M and η_c(M,N) = 0 imply Tor_i(M,N) = 0 for i ≥ 1",
            vec![m(), n(), c()],
            &["torMaxDeg", "etaNMax", "maxStep"],
        ),
        spec(
            "DAO",
            "for e ≥ codim R: M free on X^e(R), M and N satisfy (S_e), M⊗N satisfies (S_{e+1}) imply Tor_i(M,N) = 0 for i ≥ 1",
            vec![
                m(),
                n(),
                arg("e", Int, false, Some("codim R"), "level e ≥ codim R"),
                arg("primes", IdealList, false, None, "graded primes at which freeness of M is checked"),
            ],
            &["torMaxDeg"],
        ),
        spec(
            "MCM-EQ",
            "for an isolated singularity with dim R ≥ c, M and N MCM and η_c(M,N) = 0: M⊗N MCM ⇔ M⊗N satisfies (S_c) ⇔ M, N Tor-independent",
            vec![m(), n(), c()],
            &["torMaxDeg", "etaNMax", "maxStep"],
        ),
        spec(
            "DF",
            "Tor-independent M, N satisfy depth M + depth N = depth R + depth(M⊗N)",
            vec![m(), n()],
            &["torMaxDeg"],
        ),
        spec(
            "QL-ETA",
            "for torsion-free M, N over R = S/(f) with Tor finite for i ≫ 0 and e ≥ max(2, codim S + 1): η^S_{e−1}(E,F) = 2e·η^R_e(M,N) for the quasi-liftings E, F",
            vec![m(), n(), arg("e", Int, false, Some("max(2, codim S + 1)"), "degree of the pairing over R")],
            &["torMaxDeg", "etaNMax", "maxStep"],
        ),
        spec(
            "PF-SERRE",
            "a torsion-free M satisfies (S_{k+1}) iff its pushforward M₁ satisfies (S_k), checked for k = 0..n",
            vec![m(), arg("n", Int, false, Some("2"), "largest k checked (at most 2)")],
            &[],
        ),
        spec(
            "HW-REFLEX",
            "over a hypersurface: (1) M⊗N reflexive and N has rank imply Tor_i = 0 for i ≥ 1, M reflexive and N torsion-free; (2) M⊗N MCM and M or N has rank imply M, N MCM and one of them free",
            vec![m(), n(), arg("variant", Int, false, Some("1"), "which corollary to check (1 or 2)")],
            &["torMaxDeg"],
        ),
        spec(
            "POWERS",
            "over a hypersurface with dim R ≥ 1, M of finite pd on the punctured spectrum with η₁(M,−) = 0 and ⊗ⁿM torsion-free (n ≥ 2) has pd_R M ≤ (dim R − 1)/n",
            vec![
                m(),
                arg("n", Int, false, Some("2"), "tensor power"),
                arg("tests", ModuleList, false, Some("[M, k]"), "modules T on which η₁(M, T) = 0 is checked"),
            ],
            &["torMaxDeg", "maxStep"],
        ),
        spec(
            "DVR-TF",
            "over a ring of depth 0 or a graded DVR, tensor products of torsion-free modules are torsion-free",
            vec![
                arg("samples", ModuleList, false, None, "torsion-free modules to test"),
                arg("random", Int, false, Some("3"), "number of additional seeded random samples"),
                arg("seed", Int, false, Some("0"), "seed for the random samples"),
            ],
            &[],
        ),
    ]
}

/// Look up a catalog entry; unknown ids come back with the closest match.
pub fn find_audit(id: &str) -> Result<AuditSpec> {
    let all = list_audits();
    if let Some(s) = all.iter().find(|s| s.id.eq_ignore_ascii_case(id)) {
        return Ok(s.clone());
    }
    let up = id.to_ascii_uppercase();
    let suggestion = all
        .iter()
        .map(|s| (strsim::levenshtein(&up, s.id), s.id))
        .min()
        .filter(|(d, _)| *d <= 3)
        .map(|(_, s)| s.to_string());
    Err(Error::UnknownTheoremId { id: id.to_string(), suggestion })
}

/// Argument names and kinds of a catalog entry.
pub fn find_audit_args(id: &str) -> Result<Vec<(&'static str, ArgKind)>> {
    Ok(find_audit(id)?.args.iter().map(|a| (a.name, a.kind)).collect())
}

/// Typed arguments of an audit, plus display labels for the report.
#[derive(Clone, Debug)]
pub struct AuditInput<F: Field> {
    pub ring: Arc<Ring<F>>,
    pub modules: IndexMap<String, FpModule<F>>,
    pub lists: IndexMap<String, Vec<FpModule<F>>>,
    pub ints: IndexMap<String, i64>,
    pub ideals: IndexMap<String, Vec<Vec<Poly<F>>>>,
    pub labels: IndexMap<String, Value>,
}

impl<F: Field> AuditInput<F> {
    pub fn new(ring: Arc<Ring<F>>) -> Self {
        AuditInput {
            ring,
            modules: IndexMap::new(),
            lists: IndexMap::new(),
            ints: IndexMap::new(),
            ideals: IndexMap::new(),
            labels: IndexMap::new(),
        }
    }

    pub fn with_module(mut self, name: &str, m: FpModule<F>) -> Self {
        self.labels.insert(name.to_string(), json!(m.describe()));
        self.modules.insert(name.to_string(), m);
        self
    }

    pub fn with_int(mut self, name: &str, v: i64) -> Self {
        self.ints.insert(name.to_string(), v);
        self
    }

    pub fn with_list(mut self, name: &str, ms: Vec<FpModule<F>>) -> Self {
        self.labels.insert(name.to_string(), json!(ms.iter().map(|m| m.describe()).collect::<Vec<_>>()));
        self.lists.insert(name.to_string(), ms);
        self
    }

    pub fn with_ideals(mut self, name: &str, ideals: Vec<Vec<Poly<F>>>) -> Self {
        let text: Vec<Vec<String>> = ideals.iter().map(|g| g.iter().map(|p| self.ring.fmt(p)).collect()).collect();
        self.labels.insert(name.to_string(), json!(text));
        self.ideals.insert(name.to_string(), ideals);
        self
    }

    fn has(&self, a: &ArgSpec) -> bool {
        match a.kind {
            ArgKind::Module => self.modules.contains_key(a.name),
            ArgKind::ModuleList => self.lists.contains_key(a.name),
            ArgKind::Int => self.ints.contains_key(a.name),
            ArgKind::IdealList => self.ideals.contains_key(a.name),
        }
    }
}

type Eval = Result<(bool, Option<String>)>;

struct Ctx<'a, F: Field> {
    input: &'a AuditInput<F>,
    b: &'a Bounds,
    inputs: IndexMap<String, Value>,
    hyps: Vec<Check>,
    caveats: Vec<String>,
}

impl<'a, F: Field> Ctx<'a, F> {
    fn ring(&self) -> &Arc<Ring<F>> {
        &self.input.ring
    }

    fn module(&self, name: &str) -> &'a FpModule<F> {
        &self.input.modules[name]
    }

    fn int(&mut self, name: &str, default: i64) -> i64 {
        let v = self.input.ints.get(name).copied().unwrap_or(default);
        self.inputs.insert(name.to_string(), json!(v));
        v
    }

    fn hyp(&mut self, name: impl Into<String>, r: Eval) {
        let (verdict, witness) = verdict_of(r);
        self.hyps.push(Check { name: name.into(), verdict, witness });
    }

    fn hyp_verdict(&mut self, name: impl Into<String>, verdict: Verdict, witness: Option<String>) {
        self.hyps.push(Check { name: name.into(), verdict, witness });
    }

    fn caveat(&mut self, c: impl Into<String>) {
        let c = c.into();
        if !self.caveats.contains(&c) {
            self.caveats.push(c);
        }
    }

    fn all_hold(&self) -> bool {
        self.hyps.iter().all(|h| h.verdict == Verdict::True)
    }

    /// Check `η_e(M,N) = 0`, recording a caveat when only an estimate is
    /// available.
    fn eta_zero(&mut self, name: &str, m: &FpModule<F>, n: &FpModule<F>, e: usize, profile: Option<&TorProfile>) {
        match eta_eval(m, n, e, self.b, profile) {
            Ok(ev) => {
                let (verdict, witness) = match (&ev.value, ev.exact) {
                    (Some(v), true) => (bool_verdict(v.is_zero()), format!("η_{e} = {v} ({})", ev.how)),
                    (Some(v), false) => {
                        self.caveat(format!("η_{e} = 0 is accepted from a converged estimate (|η| < 1/20); no finite computation certifies the limit"));
                        (bool_verdict(v.abs() < tolerance()), format!("η_{e} ≈ {v} ({})", ev.how))
                    }
                    (None, _) => (Verdict::Unknown, format!("η_{e} undetermined ({})", ev.how)),
                };
                self.hyp_verdict(name, verdict, Some(witness));
            }
            Err(e) => self.hyp(name, Err(e)),
        }
    }
}

fn bool_verdict(b: bool) -> Verdict {
    if b {
        Verdict::True
    } else {
        Verdict::False
    }
}

fn verdict_of(r: Eval) -> (Verdict, Option<String>) {
    match r {
        Ok((b, w)) => (bool_verdict(b), w),
        Err(e) => (Verdict::Unknown, Some(format!("not decided: {e}"))),
    }
}

/// A value of η with its provenance.
#[derive(Clone, Debug)]
pub struct EtaEval {
    pub value: Option<Rational>,
    pub exact: bool,
    pub how: String,
}

fn exact_eta(v: Rational, how: impl Into<String>) -> EtaEval {
    EtaEval { value: Some(v), exact: true, how: how.into() }
}

/// η_e(M, N) by the cheapest sound route: the vanishing properties for
/// `e > codim R`, finite projective dimension and finite length, then the
/// exact hypersurface path, then the partial-sum estimator.
pub fn eta_eval<F: Field>(m: &FpModule<F>, n: &FpModule<F>, e: usize, b: &Bounds, profile: Option<&TorProfile>) -> Result<EtaEval> {
    let ring = m.ring();
    let codim = ring.codim();
    if e > codim {
        return Ok(exact_eta(Rational::zero(), format!("e = {e} > codim R = {codim}")));
    }
    for (name, x) in [("M", m), ("N", n)] {
        if let Pd::Exact(p) = pd_over_ring(x, b.max_step)? {
            return Ok(exact_eta(Rational::zero(), format!("pd_R {name} = {p} is finite")));
        }
    }
    if e >= codim {
        for (name, x) in [("M", m), ("N", n)] {
            if x.length().is_finite() {
                return Ok(exact_eta(Rational::zero(), format!("{name} has finite length and e ≥ codim R")));
            }
        }
    }
    if ring.is_hypersurface() && e == 1 {
        let owned;
        let p = match profile {
            Some(p) => p,
            None => {
                owned = tor(m, n, b.tor_max_deg)?;
                &owned
            }
        };
        let est = eta_from_profile(p, 1, true)?;
        let exact = est.method == super::EtaMethod::ExactPeriodic;
        let how = if exact {
            let per = detect_period(p)?.unwrap();
            format!("θ/2 from the period-2 tail starting at {}", per.preperiod)
        } else {
            format!("no period-2 tail through degree {}; partial sums on [{}, {}]", p.max_deg, est.window.0, est.window.1)
        };
        return Ok(EtaEval { value: est.value.value().cloned(), exact, how });
    }
    let p = tor(m, n, b.eta_n_max)?;
    let est = eta_from_profile(&p, e, false)?;
    let how = format!("partial sums through n = {}, window [{}, {}]", b.eta_n_max, est.window.0, est.window.1);
    Ok(EtaEval { value: est.value.value().cloned(), exact: false, how })
}

fn vanishing(p: &TorProfile, lo: usize, hi: usize) -> (bool, Option<String>) {
    match (lo..=hi.min(p.max_deg)).find(|&i| !p.lengths[i].is_zero()) {
        Some(i) => (false, Some(format!("len Tor_{i} = {}", p.lengths[i]))),
        None => (true, Some(format!("Tor_i = 0 for {lo} ≤ i ≤ {}", hi.min(p.max_deg)))),
    }
}

fn sp_witness(r: &super::SpReport) -> String {
    format!(
        "(S_{}) for M: {}, for N: {}; (S_{}) for M⊗N: {}; Tor finite on [{}, {}]: {}",
        r.c - 1,
        r.serre_m.holds,
        r.serre_n.holds,
        r.c,
        r.serre_tensor.holds,
        r.tor_finite_window.start,
        r.tor_finite_window.end,
        r.tor_finite_window.all_finite
    )
}

fn nonzero<F: Field>(m: &FpModule<F>) -> Eval {
    Ok((!m.is_zero(), None))
}

fn tf_check<F: Field>(m: &FpModule<F>) -> Eval {
    Ok((is_torsion_free(m)?, None))
}

fn serre_check<F: Field>(m: &FpModule<F>, n: usize) -> Eval {
    let r = serre(m, n)?;
    let w = r.chain.iter().map(|s| if s.torsion_free { "tf" } else { "torsion" }).collect::<Vec<_>>().join(" → ");
    Ok((r.holds, Some(format!("pushforward chain: {w}"))))
}

fn mcm_check<F: Field>(m: &FpModule<F>) -> Eval {
    if m.is_zero() {
        return Ok((false, Some("zero module".into())));
    }
    let d = depth(m)?;
    Ok((d == m.ring().krull_dim(), Some(format!("depth = {d}"))))
}

fn supp_tp_check<F: Field>(n: &FpModule<F>, m: &FpModule<F>) -> Eval {
    let tp = torsion(n)?.tp.module;
    if tp.is_zero() {
        return Ok((true, Some("tp N = 0".into())));
    }
    Ok((supp_contained(&tp, m)?, None))
}

fn default_c<F: Field>(ring: &Ring<F>) -> i64 {
    ring.codim().max(1) as i64
}

fn positive(v: i64, name: &str) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::Invalid(format!("`{name}` must be non-negative")))
}

/// Jacobian criterion: `R` is an isolated singularity when the ideal of
/// the relations and the maximal minors of their Jacobian has dimension
/// at most 0.
pub fn is_isolated_singularity<F: Field>(ring: &Ring<F>) -> Result<(bool, String)> {
    let f = ring.field();
    let rels = ring.relations();
    let n = ring.nvars();
    let k = rels.len();
    let jac: Vec<Vec<Poly<F>>> = rels.iter().map(|r| (0..n).map(|i| derivative(r, i, f)).collect()).collect();
    let mut gens = rels.to_vec();
    for cols in combinations(n, k) {
        let sub: Vec<Vec<Poly<F>>> = jac.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
        let d = det(&sub, f);
        if !d.is_zero() {
            gens.push(d);
        }
    }
    if gens.len() > rels.len() + 400 {
        return Err(Error::ResourceLimit("too many Jacobian minors".into()));
    }
    let dim = krull_dim(&gens, n, f);
    let w = match dim {
        None => "singular locus empty".to_string(),
        Some(d) => format!("singular locus has dimension {d}"),
    };
    Ok((dim.is_none_or(|d| d == 0), w))
}

fn derivative<F: Field>(p: &Poly<F>, i: usize, f: &F) -> Poly<F> {
    let terms = p
        .terms()
        .iter()
        .filter(|(m, _)| m.exp(i) > 0)
        .map(|(m, c)| {
            let e = m.exp(i);
            let mono = Monomial::var(i).quotient(m);
            (mono, f.mul(c, &f.from_i64(e as i64)))
        })
        .collect();
    Poly::from_terms(terms, f)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant by cofactor expansion along the first row.
fn det<F: Field>(a: &[Vec<Poly<F>>], f: &F) -> Poly<F> {
    match a.len() {
        0 => Poly::one(f),
        1 => a[0][0].clone(),
        n => {
            let mut acc = Poly::zero();
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly<F>>> = a[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
                let t = a[0][j].mul(&det(&minor, f), f);
                acc = if j % 2 == 0 { acc.add(&t, f) } else { acc.sub(&t, f) };
            }
            acc
        }
    }
}

/// `M_p` is free iff `p ∉ Supp Tor_1(M, R/p)`, i.e. some element of the
/// annihilator of `Tor_1(M, R/p)` lies outside `p`.
fn free_at_prime<F: Field>(m: &FpModule<F>, p: &[Poly<F>]) -> Result<bool> {
    let ring = m.ring();
    let rp = FpModule::cyclic(ring.clone(), p)?;
    let t = tor_module(m, &rp, 1)?;
    if t.is_zero() {
        return Ok(true);
    }
    let gb = ring.ideal_with(p);
    Ok(t.annihilator()?.iter().any(|a| !gb.contains(a)))
}

/// Run an audit from the catalog.
pub fn audit<F: Field>(id: &str, input: &AuditInput<F>, b: &Bounds) -> Result<AuditReport> {
    let spec = find_audit(id)?;
    for a in &spec.args {
        if a.required && !input.has(a) {
            return Err(Error::MissingInput(format!("audit {} needs `{}`", spec.id, a.name)));
        }
    }
    for m in input.modules.values().chain(input.lists.values().flatten()) {
        m.ring().check_same(&input.ring)?;
    }
    let mut ctx = Ctx { input, b, inputs: input.labels.clone(), hyps: Vec::new(), caveats: Vec::new() };
    let (statement, conclusion) = match spec.id {
        "TOR1" => tor1(&mut ctx)?,
        "RIGID" => rigid(&mut ctx)?,
        "ETA-TF" => eta_tf(&mut ctx)?,
        "ETA2" => eta2(&mut ctx)?,
        "DAO" => dao(&mut ctx)?,
        "MCM-EQ" => mcm_eq(&mut ctx)?,
        "DF" => df(&mut ctx)?,
        "QL-ETA" => ql_eta(&mut ctx)?,
        "PF-SERRE" => pf_serre(&mut ctx)?,
        "HW-REFLEX" => hw_reflex(&mut ctx)?,
        "POWERS" => powers(&mut ctx)?,
        "DVR-TF" => dvr_tf(&mut ctx)?,
        _ => unreachable!("catalog and dispatch agree"),
    };
    ctx.caveat(format!("conclusion verified through homological degree {}", b.tor_max_deg));
    ctx.caveat("graded model: local statements are checked at the irrelevant maximal ideal");
    let bounds = spec.bounds.keys().map(|k| (k.to_string(), b.get(k).unwrap())).collect();
    let failed: Vec<&str> = ctx.hyps.iter().filter(|h| h.verdict == Verdict::False).map(|h| h.name.as_str()).collect();
    let unknown: Vec<&str> = ctx.hyps.iter().filter(|h| h.verdict == Verdict::Unknown).map(|h| h.name.as_str()).collect();
    let (conclusion, outcome, kind, reason) = if !failed.is_empty() {
        let c = Conclusion { statement, verdict: Verdict::NotAsserted, witness: None };
        (c, Outcome::Inconclusive, Some(InconclusiveKind::HypothesisFailed), Some(format!("hypothesis failed: {}", failed.join("; "))))
    } else if !unknown.is_empty() {
        let c = Conclusion { statement, verdict: Verdict::NotAsserted, witness: None };
        (c, Outcome::Inconclusive, Some(InconclusiveKind::BoundTooSmall), Some(format!("hypothesis undetermined within bounds: {}", unknown.join("; "))))
    } else {
        let (verdict, witness) = verdict_of(conclusion.expect("conclusion is evaluated when hypotheses hold"));
        let c = Conclusion { statement, verdict, witness };
        match verdict {
            Verdict::True => (c, Outcome::Pass, None, None),
            Verdict::False => (c, Outcome::Fail, None, Some("conclusion fails on this instance".into())),
            _ => (c, Outcome::Inconclusive, Some(InconclusiveKind::BoundTooSmall), Some("conclusion undetermined within bounds".into())),
        }
    };
    Ok(AuditReport {
        theorem_id: spec.id.to_string(),
        inputs: ctx.inputs,
        bounds,
        hypotheses: ctx.hyps,
        conclusion,
        caveats: ctx.caveats,
        outcome,
        inconclusive: kind,
        reason,
    })
}

/// Statement of the conclusion and, when every hypothesis holds, its
/// evaluation.
type Concl = (String, Option<Eval>);

fn tor_vanishing_conclusion<F: Field>(ctx: &Ctx<'_, F>, p: &TorProfile, lo: usize) -> Concl {
    let statement = format!("Tor_i(M,N) = 0 for {lo} ≤ i ≤ {}", ctx.b.tor_max_deg);
    let eval = ctx.all_hold().then(|| Ok(vanishing(p, lo, ctx.b.tor_max_deg)));
    (statement, eval)
}

fn tor1<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Concl> {
    let ring = ctx.ring().clone();
    let (m, n) = (ctx.module("M"), ctx.module("N"));
    let c = positive(ctx.int("c", default_c(&ring)), "c")?;
    let codim = ring.codim();
    let dim = ring.krull_dim();
    ctx.hyp("dim R ≥ codim R", Ok((dim >= codim, Some(format!("dim R = {dim}, codim R = {codim}")))));
    ctx.hyp("c ≥ max(1, codim R)", Ok((c >= codim.max(1), Some(format!("c = {c}")))));
    let p = tor(m, n, ctx.b.tor_max_deg)?;
    if c >= 1 {
        ctx.hyp(format!("SP_{c}(M, N)"), sp_check_with_profile(m, n, c, &p).map(|r| (r.satisfied, Some(sp_witness(&r)))));
    }
    if c == 1 {
        ctx.hyp("M or N torsion-free", Ok((is_torsion_free(m)? || is_torsion_free(n)?, None)));
    }
    ctx.hyp("Tor_1(M,N) = 0", Ok(vanishing(&p, 1, 1)));
    Ok(tor_vanishing_conclusion(ctx, &p, 1))
}

fn rigid<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Concl> {
    let ring = ctx.ring().clone();
    let (m, n) = (ctx.module("M"), ctx.module("N"));
    let c = positive(ctx.int("c", default_c(&ring)), "c")?;
    let s = positive(ctx.int("s", 1), "s")?;
    let codim = ring.codim();
    ctx.hyp("c ≥ max(1, codim R)", Ok((c >= codim.max(1), Some(format!("c = {c}, codim R = {codim}")))));
    let p = tor(m, n, ctx.b.tor_max_deg)?;
    let w = tor_window(&p);
    ctx.hyp("Tor_i(M,N) has finite length for i ≫ 0", Ok((w.all_finite, Some(format!("window [{}, {}]", w.start, w.end)))));
    ctx.eta_zero(&format!("η_{c}(M,N) = 0"), m, n, c, Some(&p));
    let name = format!("Tor_i(M,N) = 0 for i = {s}..{}", s + c - 1);
    if s + c - 1 > ctx.b.tor_max_deg {
        ctx.hyp_verdict(name, Verdict::Unknown, Some("window exceeds torMaxDeg".into()));
    } else {
        ctx.hyp(name, Ok(vanishing(&p, s, s + c - 1)));
    }
    Ok(tor_vanishing_conclusion(ctx, &p, s))
}

fn eta_tf<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Concl> {
    let ring = ctx.ring().clone();
    let (m, n) = (ctx.module("M"), ctx.module("N"));
    let variant = ctx.int("variant", 2);
    let codim = ring.codim();
    ctx.hyp("R is a hypersurface", Ok((codim <= 1, Some(format!("codim R = {codim}")))));
    ctx.hyp("dim R ≥ 1", Ok((ring.krull_dim() >= 1, None)));
    ctx.hyp("M⊗N torsion-free", tf_check(&m.tensor(n)?));
    let p = tor(m, n, ctx.b.tor_max_deg)?;
    match variant {
        1 => {
            let tf = torsion(n)?.tf;
            ctx.eta_zero("η₁(M, tf N) = 0", m, &tf, 1, None);
            ctx.hyp("M ≠ 0", nonzero(m));
        }
        2 => {
            ctx.eta_zero("η₁(M,N) = 0", m, n, 1, Some(&p));
            ctx.hyp("Supp tp N ⊆ Supp M", supp_tp_check(n, m));
        }
        v => return Err(Error::Invalid(format!("ETA-TF variant must be 1 or 2, got {v}"))),
    }
    let statement = format!("Tor_i(M,N) = 0 for 1 ≤ i ≤ {} and N torsion-free", ctx.b.tor_max_deg);
    let eval = ctx.all_hold().then(|| {
        let (v, w) = vanishing(&p, 1, ctx.b.tor_max_deg);
        let tf = is_torsion_free(n)?;
        let w = format!("{}; N torsion-free: {tf}", w.unwrap_or_default());
        Ok((v && tf, Some(w)))
    });
    Ok((statement, eval))
}

fn eta2<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Concl> {
    let ring = ctx.ring().clone();
    let (m, n) = (ctx.module("M"), ctx.module("N"));
    let c = positive(ctx.int("c", default_c(&ring)), "c")?;
    let codim = ring.codim();
    ctx.hyp("c ≥ max(1, codim R)", Ok((c >= codim.max(1), Some(format!("c = {c}, codim R = {codim}")))));
    ctx.hyp("dim R ≥ c", Ok((ring.krull_dim() >= c, Some(format!("dim R = {}", ring.krull_dim())))));
    let p = tor(m, n, ctx.b.tor_max_deg)?;
    if c >= 1 {
        ctx.hyp(format!("SP_{c}(M, N)"), sp_check_with_profile(m, n, c, &p).map(|r| (r.satisfied, Some(sp_witness(&r)))));
    }
    ctx.hyp("Supp tp N ⊆ Supp M", supp_tp_check(n, m));
    ctx.eta_zero(&format!("η_{c}(M,N) = 0"), m, n, c, Some(&p));
    Ok(tor_vanishing_conclusion(ctx, &p, 1))
}

fn dao<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Concl> {
    let ring = ctx.ring().clone();
    let (m, n) = (ctx.module("M"), ctx.module("N"));
    let codim = ring.codim();
    let e = positive(ctx.int("e", codim as i64), "e")?;
    let dim = ring.krull_dim();
    ctx.hyp("e ≥ codim R", Ok((e >= codim, Some(format!("e = {e}, codim R = {codim}")))));
    let primes = ctx.input.ideals.get("primes").cloned().unwrap_or_default();
    let name = format!("M free on X^{e}(R)");
    if dim <= e {
        let free = m.minimalize().module.is_free();
        ctx.hyp(name, Ok((free, Some("checked at the irrelevant maximal ideal, which lies in X^e(R)".into()))));
    } else {
        let mut checked = Vec::new();
        let mut skipped = Vec::new();
        let mut bad = None;
        for p in &primes {
            let text = format!("({})", p.iter().map(|g| ring.fmt(g)).collect::<Vec<_>>().join(", "));
            let quot = FpModule::cyclic(ring.clone(), p)?;
            let height = dim - quot.krull_dim().unwrap_or(dim).min(dim);
            if height > e {
                skipped.push(text);
                continue;
            }
            if !free_at_prime(m, p)? && bad.is_none() {
                bad = Some(text.clone());
            }
            checked.push(text);
        }
        ctx.caveat(format!("X^{e}(R) is only sampled: freeness of M is checked at the supplied graded primes of height ≤ {e}, assumed prime"));
        let mut w = format!("checked at {}", if checked.is_empty() { "no primes".to_string() } else { checked.join(", ") });
        if !skipped.is_empty() {
            w.push_str(&format!("; skipped (height > {e}): {}", skipped.join(", ")));
        }
        match bad {
            Some(p) => ctx.hyp_verdict(name, Verdict::False, Some(format!("M is not free at {p}; {w}"))),
            None if checked.is_empty() => ctx.hyp_verdict(name, Verdict::Unknown, Some(w)),
            None => ctx.hyp_verdict(name, Verdict::True, Some(w)),
        }
    }
    ctx.hyp(format!("M satisfies (S_{e})"), serre_check(m, e));
    ctx.hyp(format!("N satisfies (S_{e})"), serre_check(n, e));
    ctx.hyp(format!("M⊗N satisfies (S_{})", e + 1), serre_check(&m.tensor(n)?, e + 1));
    let p = tor(m, n, ctx.b.tor_max_deg)?;
    Ok(tor_vanishing_conclusion(ctx, &p, 1))
}

fn mcm_eq<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Concl> {
    let ring = ctx.ring().clone();
    let (m, n) = (ctx.module("M"), ctx.module("N"));
    let c = positive(ctx.int("c", default_c(&ring)), "c")?;
    let codim = ring.codim();
    ctx.hyp("c ≥ max(1, codim R)", Ok((c >= codim.max(1), Some(format!("c = {c}, codim R = {codim}")))));
    ctx.hyp("dim R ≥ c", Ok((ring.krull_dim() >= c, Some(format!("dim R = {}", ring.krull_dim())))));
    ctx.hyp("R is an isolated singularity", is_isolated_singularity(&ring).map(|(b, w)| (b, Some(format!("Jacobian criterion: {w}")))));
    ctx.hyp("M is MCM", mcm_check(m));
    ctx.hyp("N is MCM", mcm_check(n));
    let p = tor(m, n, ctx.b.tor_max_deg)?;
    ctx.eta_zero(&format!("η_{c}(M,N) = 0"), m, n, c, Some(&p));
    let statement = format!("(1) M⊗N MCM ⇔ (2) M⊗N satisfies (S_{c}) ⇔ (3) Tor_i(M,N) = 0 for 1 ≤ i ≤ {}", ctx.b.tor_max_deg);
    let eval = ctx.all_hold().then(|| {
        let t = m.tensor(n)?;
        let one = !t.is_zero() && depth(&t)? == ring.krull_dim();
        let two = serre(&t, c)?.holds;
        let three = vanishing(&p, 1, ctx.b.tor_max_deg).0;
        Ok((one == two && two == three, Some(format!("(1) = {one}, (2) = {two}, (3) = {three}"))))
    });
    Ok((statement, eval))
}

fn df<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Concl> {
    let ring = ctx.ring().clone();
    let (m, n) = (ctx.module("M"), ctx.module("N"));
    ctx.hyp("M ≠ 0", nonzero(m));
    ctx.hyp("N ≠ 0", nonzero(n));
    let p = tor(m, n, ctx.b.tor_max_deg)?;
    ctx.hyp(format!("Tor_i(M,N) = 0 for 1 ≤ i ≤ {}", ctx.b.tor_max_deg), Ok(vanishing(&p, 1, ctx.b.tor_max_deg)));
    if ring.is_hypersurface() {
        ctx.hyp(
            "period-2 tail of zeros",
            detect_period(&p).map(|per| match per {
                Some(per) => (p.vanishes(per.preperiod, p.max_deg), Some(format!("tail from degree {}", per.preperiod))),
                None => (false, Some("no period-2 tail".into())),
            }),
        );
    } else {
        ctx.caveat("Tor-independence is verified only through the bound; there is no periodicity certificate outside hypersurfaces");
    }
    let statement = "depth M + depth N = depth R + depth(M⊗N)".to_string();
    let eval = ctx.all_hold().then(|| {
        let (dm, dn) = (depth(m)?, depth(n)?);
        let dr = ring.krull_dim();
        let dt = depth(&m.tensor(n)?)?;
        Ok((dm + dn == dr + dt, Some(format!("{dm} + {dn} vs {dr} + {dt}"))))
    });
    Ok((statement, eval))
}

fn ql_eta<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Concl> {
    let ring = ctx.ring().clone();
    let (m, n) = (ctx.module("M"), ctx.module("N"));
    let k = ring.num_relations();
    ctx.hyp("R is a hypersurface in a complete intersection S", Ok((k >= 1, Some(format!("R has {k} defining relations")))));
    if k == 0 {
        let c = positive(ctx.int("e", 2), "e")?;
        return Ok((format!("η^S_{}(E,F) = 2·{c}·η^R_{c}(M,N)", c - 1), None));
    }
    let s = ring.stage(k - 1);
    let cs = s.codim();
    let e = positive(ctx.int("e", 2.max(cs as i64 + 1)), "e")?;
    ctx.hyp("M torsion-free", tf_check(m));
    ctx.hyp("N torsion-free", tf_check(n));
    let p = tor(m, n, ctx.b.tor_max_deg)?;
    let w = tor_window(&p);
    ctx.hyp("Tor^R_i(M,N) has finite length for i ≫ 0", Ok((w.all_finite, Some(format!("window [{}, {}]", w.start, w.end)))));
    ctx.hyp("e ≥ max(2, codim S + 1)", Ok((e >= 2.max(cs + 1), Some(format!("e = {e}, codim S = {cs}")))));
    let statement = format!("η^S_{}(E,F) = 2·{e}·η^R_{e}(M,N)", e.saturating_sub(1));
    if !ctx.all_hold() {
        return Ok((statement, None));
    }
    let b = *ctx.b;
    let eval = (|| {
        let (_, ee) = quasi_lift(m)?;
        let (_, ff) = quasi_lift(n)?;
        let lhs = eta_eval(&ee, &ff, e - 1, &b, None)?;
        let rhs = eta_eval(m, n, e, &b, Some(&p))?;
        let w = format!(
            "η^S_{}(E,F) = {} ({}); η^R_{e}(M,N) = {} ({})",
            e - 1,
            lhs.value.as_ref().map_or("undetermined".into(), |v| v.to_string()),
            lhs.how,
            rhs.value.as_ref().map_or("undetermined".into(), |v| v.to_string()),
            rhs.how
        );
        let (Some(l), Some(r)) = (lhs.value, rhs.value) else {
            return Err(Error::Invalid(format!("an η value did not converge: {w}")));
        };
        let r2 = &r * &Rational::from_int(2 * e as i64);
        if lhs.exact && rhs.exact {
            Ok((l == r2, Some(w)))
        } else {
            Ok(((&l - &r2).abs() < tolerance(), Some(format!("{w}; compared within 1/20"))))
        }
    })();
    Ok((statement, Some(eval)))
}

fn pf_serre<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Concl> {
    let m = ctx.module("M");
    let top = positive(ctx.int("n", 2), "n")?;
    if top > 2 {
        return Err(Error::Invalid("PF-SERRE checks k ≤ 2".into()));
    }
    ctx.hyp("R is Gorenstein", Ok((true, Some("complete intersection".into()))));
    ctx.hyp("M torsion-free", tf_check(m));
    let statement = format!("M satisfies (S_(k+1)) ⇔ M₁ satisfies (S_k) for 0 ≤ k ≤ {top}");
    let eval = ctx.all_hold().then(|| {
        let m1 = pushforward(m)?.m1;
        let mut parts = Vec::new();
        let mut ok = true;
        for k in 0..=top {
            let lhs = serre_by_ext(m, k + 1)?;
            let rhs = serre_by_ext(&m1, k)?;
            ok &= lhs == rhs;
            parts.push(format!("k = {k}: (S_{}) for M {lhs}, (S_{k}) for M₁ {rhs}", k + 1));
        }
        Ok((ok, Some(format!("{} (Serre conditions from Ext over the polynomial ring)", parts.join("; ")))))
    });
    Ok((statement, eval))
}

fn hw_reflex<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Concl> {
    let ring = ctx.ring().clone();
    let (m, n) = (ctx.module("M"), ctx.module("N"));
    let variant = ctx.int("variant", 1);
    let codim = ring.codim();
    ctx.hyp("R is a hypersurface", Ok((codim <= 1, Some(format!("codim R = {codim}")))));
    ctx.hyp("M ≠ 0", nonzero(m));
    ctx.hyp("N ≠ 0", nonzero(n));
    let t = m.tensor(n)?;
    ctx.caveat("rank is certified by a surrogate: Ann = 0 and e(M) = r·e(R)");
    let rank = |x: &FpModule<F>| -> Result<Option<usize>> { rank_surrogate(x) };
    match variant {
        1 => {
            ctx.hyp("M⊗N reflexive", Ok((is_reflexive(&t)?, None)));
            ctx.hyp("N has rank", rank(n).map(|r| (r.is_some(), r.map(|r| format!("rank {r}")))));
            let p = tor(m, n, ctx.b.tor_max_deg)?;
            let statement = format!("Tor_i(M,N) = 0 for 1 ≤ i ≤ {}, M reflexive and N torsion-free", ctx.b.tor_max_deg);
            let eval = ctx.all_hold().then(|| {
                let (v, w) = vanishing(&p, 1, ctx.b.tor_max_deg);
                let (mr, nt) = (is_reflexive(m)?, is_torsion_free(n)?);
                Ok((v && mr && nt, Some(format!("{}; M reflexive: {mr}; N torsion-free: {nt}", w.unwrap_or_default()))))
            });
            Ok((statement, eval))
        }
        2 => {
            ctx.hyp("M⊗N is MCM", mcm_check(&t));
            let (rm, rn) = (rank(m)?, rank(n)?);
            ctx.hyp("M or N has rank", Ok((rm.is_some() || rn.is_some(), Some(format!("rank M: {rm:?}, rank N: {rn:?}")))));
            let statement = "M and N are MCM and one of them is free".to_string();
            let eval = ctx.all_hold().then(|| {
                let (a, b) = (mcm_check(m)?.0, mcm_check(n)?.0);
                let (fm, fn_) = (m.minimalize().module.is_free(), n.minimalize().module.is_free());
                Ok((a && b && (fm || fn_), Some(format!("M MCM: {a}, N MCM: {b}, M free: {fm}, N free: {fn_}"))))
            });
            Ok((statement, eval))
        }
        v => Err(Error::Invalid(format!("HW-REFLEX variant must be 1 or 2, got {v}"))),
    }
}

fn powers<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Concl> {
    let ring = ctx.ring().clone();
    let m = ctx.module("M");
    let n = positive(ctx.int("n", 2), "n")?;
    let codim = ring.codim();
    let dim = ring.krull_dim();
    ctx.hyp("R is a hypersurface", Ok((codim <= 1, Some(format!("codim R = {codim}")))));
    ctx.hyp("dim R ≥ 1", Ok((dim >= 1, None)));
    ctx.hyp("n ≥ 2", Ok((n >= 2, None)));
    let pmm = tor(m, m, ctx.b.tor_max_deg)?;
    let w = tor_window(&pmm);
    ctx.hyp(
        "pd M finite on the punctured spectrum",
        Ok((w.all_finite, Some(format!("Tor_i(M,M) of finite length on [{}, {}]", w.start, w.end)))),
    );
    ctx.caveat("finite pd on the punctured spectrum is read from finite length of Tor_i(M,M) in high degrees");
    let tests = match ctx.input.lists.get("tests") {
        Some(t) => t.clone(),
        None => {
            let vars: Vec<Poly<F>> = (0..ring.nvars()).map(|i| Poly::var(i, ring.field())).collect();
            vec![m.clone(), FpModule::cyclic(ring.clone(), &vars)?]
        }
    };
    ctx.caveat("η₁(M, −) = 0 is checked only on the listed test modules");
    for (j, t) in tests.iter().enumerate() {
        ctx.eta_zero(&format!("η₁(M, T_{j}) = 0"), m, t, 1, None);
    }
    ctx.hyp(format!("⊗^{n} M torsion-free"), tensor_power(m, n).and_then(|p| tf_check(p.module())));
    let statement = format!("pd_R M ≤ (dim R − 1)/{n}");
    let eval = ctx.all_hold().then(|| {
        let bound = (dim as f64 - 1.0) / n as f64;
        match pd_over_ring(m, ctx.b.max_step)? {
            Pd::Exact(p) => Ok(((p * n) as f64 <= dim as f64 - 1.0, Some(format!("pd_R M = {p}, bound {bound}")))),
            Pd::AtLeast(p) => Ok(((p * n) as f64 <= dim as f64 - 1.0, Some(format!("pd_R M ≥ {p}, bound {bound}")))),
        }
    });
    Ok((statement, eval))
}

fn dvr_tf<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Concl> {
    let ring = ctx.ring().clone();
    let count = positive(ctx.int("random", 3), "random")?;
    let seed = ctx.int("seed", 0) as u64;
    let dim = ring.krull_dim();
    let dvr = ring.nvars() == 1 && ring.num_relations() == 0;
    ctx.hyp(
        "depth R = 0 or R is a graded DVR",
        Ok((dim == 0 || dvr, Some(format!("depth R = {dim}, variables {}, relations {}", ring.nvars(), ring.num_relations())))),
    );
    let mut samples: Vec<FpModule<F>> = ctx.input.lists.get("samples").cloned().unwrap_or_default();
    let supplied = samples.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut made = 0;
    let mut tries = 0;
    while made < count && tries < 20 * count.max(1) {
        tries += 1;
        let r = random_module(&ring, &mut rng, &RandomParams::default())?;
        let tf = torsion(&r)?.tf;
        if !tf.is_zero() {
            samples.push(tf);
            made += 1;
        }
    }
    ctx.inputs.insert("randomSamples".into(), json!(samples[supplied..].iter().map(|m| m.describe()).collect::<Vec<_>>()));
    let mut bad = None;
    for (j, s) in samples.iter().enumerate().take(supplied) {
        if !is_torsion_free(s)? && bad.is_none() {
            bad = Some(j);
        }
    }
    ctx.hyp("every sample is torsion-free", Ok((bad.is_none(), bad.map(|j| format!("sample {j} has torsion")))));
    let statement = format!("M⊗N torsion-free for all pairs of the {} samples", samples.len());
    let eval = ctx.all_hold().then(|| {
        for i in 0..samples.len() {
            for j in i..samples.len() {
                if !is_torsion_free(&samples[i].tensor(&samples[j])?)? {
                    return Ok((false, Some(format!("samples {i} and {j}"))));
                }
            }
        }
        Ok((true, Some(format!("{} pairs", samples.len() * (samples.len() + 1) / 2))))
    });
    Ok((statement, eval))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PrimeField;

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn catalog_is_complete() {
        let ids: Vec<&str> = list_audits().iter().map(|s| s.id).collect();
        assert_eq!(ids, ["TOR1", "RIGID", "ETA-TF", "ETA2", "DAO", "MCM-EQ", "DF", "QL-ETA", "PF-SERRE", "HW-REFLEX", "POWERS", "DVR-TF"]);
        match find_audit("TOR2") {
            Err(Error::UnknownTheoremId { suggestion, .. }) => assert_eq!(suggestion.as_deref(), Some("TOR1")),
            other => panic!("{other:?}"),
        }
        assert!(find_audit("df").is_ok());
    }

    #[test]
    fn node_audits() {
        let r = Ring::parse(fp(), &["x", "y"], &["x*y"]).unwrap();
        let p = |s: &str| r.parse_poly(s).unwrap();
        let m = FpModule::cyclic(r.clone(), &[p("x")]).unwrap();
        let n = FpModule::cyclic(r.clone(), &[p("x^2")]).unwrap();
        let b = Bounds::default();
        let inp = AuditInput::new(r.clone()).with_module("M", m.clone()).with_module("N", n);
        let rep = audit("ETA-TF", &inp, &b).unwrap();
        assert_eq!(rep.outcome, Outcome::Inconclusive);
        assert_eq!(rep.inconclusive, Some(InconclusiveKind::HypothesisFailed));
        assert_eq!(rep.conclusion.verdict, Verdict::NotAsserted);
        let eta = rep.hypotheses.iter().find(|h| h.name == "η₁(M,N) = 0").unwrap();
        assert_eq!(eta.verdict, Verdict::False);
        assert!(eta.witness.as_ref().unwrap().contains("-1/2"));
        let free = FpModule::free(r.clone(), vec![0]);
        let inp = AuditInput::new(r.clone()).with_module("M", m).with_module("N", free);
        let rep = audit("DF", &inp, &b).unwrap();
        assert_eq!(rep.outcome, Outcome::Pass, "{rep:?}");
        assert_eq!(rep.conclusion.witness.as_deref(), Some("1 + 1 vs 1 + 1"));
        assert!(matches!(audit("DF", &AuditInput::new(r.clone()), &b), Err(Error::MissingInput(_))));
    }

    #[test]
    fn jacobian() {
        let cone = Ring::parse(fp(), &["x", "y", "z", "w"], &["x*w - y*z"]).unwrap();
        assert!(is_isolated_singularity(&cone).unwrap().0);
        let cyl = Ring::parse(fp(), &["x", "y", "z"], &["x*y"]).unwrap();
        assert!(!is_isolated_singularity(&cyl).unwrap().0);
        let q = Ring::parse(fp(), &["x"], &[]).unwrap();
        assert!(is_isolated_singularity(&q).unwrap().0);
    }

    #[test]
    fn dvr_samples() {
        let r = Ring::parse(fp(), &["t"], &[]).unwrap();
        let rep = audit("DVR-TF", &AuditInput::new(r.clone()), &Bounds::default()).unwrap();
        assert_eq!(rep.outcome, Outcome::Pass, "{rep:?}");
        let node = Ring::parse(fp(), &["x", "y"], &["x*y"]).unwrap();
        let rep = audit("DVR-TF", &AuditInput::new(node), &Bounds::default()).unwrap();
        assert_eq!(rep.inconclusive, Some(InconclusiveKind::HypothesisFailed));
    }
}
