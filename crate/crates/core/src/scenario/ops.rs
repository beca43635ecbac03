//! Module construction and the task operations a scenario can call.

use std::sync::Arc;

use indexmap::IndexMap;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use super::ModuleDecl;
use crate::error::{Error, Result};
use crate::homology::{depth, koszul_depth, is_mcm, pd_over_poly, pd_over_ring, tor_with, tor_module, Resolution, TorProfile};
use crate::module::FpModule;
use crate::pairing::{audit, detect_period, eta_estimate, find_audit_args, sp_check_with_profile, theta_from_profile, AuditInput, Bounds, Rational};
use crate::parallel::Exec;
use crate::poly::{Field, Poly, Vector};
use crate::random::{random_module, random_relation, RandomParams};
use crate::ring::Ring;
use crate::serre::{is_reflexive, is_torsion_free, pushforward, quasi_lift, serre, serre_by_ext, supp_contained, torsion};
use crate::tensor_tau::{gamma_m, koszul_module, rank_surrogate, tau, tensor_power, torsion_scan};

/// Degree through which Hilbert functions are reported by default.
pub const HILBERT_DEFAULT: i32 = 6;

/// Built modules, keyed by declared name. Failed constructors keep their
/// error so tasks referring to them report it.
pub struct Env<F: Field> {
    pub ring: Arc<Ring<F>>,
    pub modules: IndexMap<String, std::result::Result<FpModule<F>, Error>>,
    /// Regular sequences of Koszul modules, for `tau` defaults.
    pub koszul: IndexMap<String, Vec<Poly<F>>>,
}

fn polys<F: Field>(ring: &Ring<F>, gens: &[String]) -> Result<Vec<Poly<F>>> {
    gens.iter().map(|g| ring.parse_poly(g)).collect()
}

impl<F: Field> Env<F> {
    /// Build every module in `order`; a constructor whose input failed fails too.
    pub fn build(ring: Arc<Ring<F>>, decls: &IndexMap<String, ModuleDecl>, order: &[String], max_step: usize) -> Self {
        let mut env = Env { ring, modules: IndexMap::new(), koszul: IndexMap::new() };
        for name in order {
            let m = env.construct(name, &decls[name], max_step);
            env.modules.insert(name.clone(), m);
        }
        // Report in declaration order.
        env.modules.sort_by_cached_key(|k, _| decls.get_index_of(k));
        env
    }

    fn construct(&mut self, name: &str, decl: &ModuleDecl, max_step: usize) -> Result<FpModule<F>> {
        let ring = self.ring.clone();
        Ok(match decl {
            ModuleDecl::Quotient(gens) => FpModule::cyclic(ring.clone(), &polys(&ring, gens)?)?,
            ModuleDecl::Presentation { degrees, matrix } => {
                if matrix.len() != degrees.len() {
                    return Err(Error::ShapeMismatch(format!("{} matrix rows for {} generators", matrix.len(), degrees.len())));
                }
                let rows: Vec<Vec<Poly<F>>> = matrix.iter().map(|r| polys(&ring, r)).collect::<Result<_>>()?;
                FpModule::from_matrix(ring, degrees.clone(), &rows)?
            }
            ModuleDecl::Free(degs) => FpModule::free(ring, degs.clone()),
            ModuleDecl::Koszul(seq) => {
                let k = koszul_module(&ring, &polys(&ring, seq)?)?;
                self.koszul.insert(name.to_string(), k.seq.clone());
                k.module
            }
            ModuleDecl::Syzygy { of, k } => syzygy(self.get(of)?, *k, max_step)?,
            ModuleDecl::Pushforward(m) => pushforward(self.get(m)?)?.m1,
            ModuleDecl::TensorPower { of, n } => tensor_power(self.get(of)?, *n)?.module().clone(),
            ModuleDecl::QuasiLift(m) => quasi_lift(self.get(m)?)?.1,
            ModuleDecl::DirectSum(ms) => {
                let parts: Vec<&FpModule<F>> = ms.iter().map(|m| self.get(m)).collect::<Result<_>>()?;
                FpModule::direct_sum(&parts)?
            }
            ModuleDecl::Tensor(ms) => {
                let (first, rest) = ms.split_first().ok_or_else(|| Error::Invalid("tensor of an empty list".into()))?;
                let mut acc = self.get(first)?.clone();
                for m in rest {
                    acc = acc.tensor(self.get(m)?)?;
                }
                acc
            }
            ModuleDecl::Dual(m) => self.get(m)?.dual()?.module,
            ModuleDecl::Twist { of, by } => self.get(of)?.twist(*by),
            ModuleDecl::TorsionSubmodule(m) => torsion(self.get(m)?)?.tp.module,
            ModuleDecl::TorsionFree(m) => torsion(self.get(m)?)?.tf,
        })
    }

    pub fn get(&self, name: &str) -> Result<&FpModule<F>> {
        match self.modules.get(name) {
            Some(Ok(m)) => Ok(m),
            Some(Err(e)) => Err(Error::Invalid(format!("module `{name}` failed to build: {e}"))),
            None => Err(Error::MissingInput(format!("no module named `{name}`"))),
        }
    }

    /// Summary of a built module for the report.
    pub fn summary(&self, name: &str) -> Value {
        match &self.modules[name] {
            Ok(m) => module_summary(m),
            Err(e) => json!({ "error": e.to_string() }),
        }
    }
}

fn module_summary<F: Field>(m: &FpModule<F>) -> Value {
    let min = m.minimalize().module;
    json!({
        "ring": m.ring().describe(),
        "generatorDegrees": m.degs(),
        "numRelations": m.rels().len(),
        "minimalGenerators": min.num_gens(),
        "hilbert": min.hilbert(HILBERT_DEFAULT),
        "length": min.length(),
    })
}

/// The `k`-th syzygy module: the image of `F_k → F_{k−1}`, presented by `F_{k+1} → F_k`.
fn syzygy<F: Field>(m: &FpModule<F>, k: usize, max_step: usize) -> Result<FpModule<F>> {
    if k == 0 {
        return Ok(m.clone());
    }
    if k > max_step {
        return Err(Error::ResourceLimit(format!("syzygy {k} is beyond maxStep {max_step}")));
    }
    let res = Resolution::resolve(m, k + 1)?;
    let cx = &res.complex;
    let Some(twists) = cx.twists.get(k) else { return Ok(FpModule::zero(m.ring().clone())) };
    let rels = cx.maps.get(k).map(|d| d.cols.clone()).unwrap_or_default();
    FpModule::new(m.ring().clone(), twists.clone(), rels)
}

/// Typed access to a task's argument object.
pub struct Args<'a> {
    pub map: &'a Map<String, Value>,
}

impl<'a> Args<'a> {
    fn raw(&self, key: &str) -> Result<&'a Value> {
        self.map.get(key).ok_or_else(|| Error::MissingInput(format!("argument `{key}`")))
    }

    pub fn str(&self, key: &str) -> Result<&'a str> {
        self.raw(key)?.as_str().ok_or_else(|| Error::Invalid(format!("argument `{key}` must be a string")))
    }

    pub fn opt_usize(&self, key: &str) -> Result<Option<usize>> {
        match self.map.get(key) {
            None => Ok(None),
            Some(v) => v.as_u64().map(|x| Some(x as usize)).ok_or_else(|| Error::Invalid(format!("argument `{key}` must be a non-negative integer"))),
        }
    }

    pub fn usize_or(&self, key: &str, d: usize) -> Result<usize> {
        Ok(self.opt_usize(key)?.unwrap_or(d))
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        self.opt_usize(key)?.ok_or_else(|| Error::MissingInput(format!("argument `{key}`")))
    }

    pub fn strings(&self, key: &str) -> Result<Vec<String>> {
        let v = self.raw(key)?;
        let arr = v.as_array().ok_or_else(|| Error::Invalid(format!("argument `{key}` must be a list")))?;
        arr.iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(|| Error::Invalid(format!("argument `{key}` must list strings"))))
            .collect()
    }

    fn module<F: Field>(&self, env: &'a Env<F>, key: &str) -> Result<&'a FpModule<F>> {
        env.get(self.str(key)?)
    }
}

/// Scenario-level context a task runs in.
pub struct TaskCtx<'a, F: Field> {
    pub env: &'a Env<F>,
    pub bounds: Bounds,
    pub seed: u64,
    /// Execution strategy for loops inside a task.
    pub exec: Exec,
}

fn tor_json(p: &TorProfile) -> Value {
    json!({
        "lengths": p.lengths,
        "maxDeg": p.max_deg,
        "higherVanish": p.vanishes(1, p.max_deg),
        "allFinite": p.all_finite(1, p.max_deg),
    })
}

fn pair<'a, F: Field>(a: &Args<'a>, env: &'a Env<F>) -> Result<(&'a FpModule<F>, &'a FpModule<F>)> {
    Ok((a.module(env, "M")?, a.module(env, "N")?))
}

fn fmt_polys<F: Field>(ring: &Ring<F>, ps: &[Poly<F>]) -> Vec<String> {
    ps.iter().map(|p| ring.fmt(p)).collect()
}

/// Names of every operation `run_op` accepts.
pub const OPS: &[&str] = &[
    "describe",
    "hilbert",
    "length",
    "resolution",
    "pdOverPoly",
    "pdOverRing",
    "depth",
    "koszulDepth",
    "isMCM",
    "tor",
    "torModule",
    "detectPeriod",
    "theta",
    "etaEstimate",
    "spCheck",
    "torsion",
    "isTorsionFree",
    "isReflexive",
    "pushforward",
    "serre",
    "serreByExt",
    "quasiLift",
    "tensorPower",
    "torsionScan",
    "tau",
    "gammaM",
    "annihilator",
    "rank",
    "indistinguishable",
    "suppContained",
    "audit",
    "auslanderBuchsbaum",
    "shuffleKill",
];

/// Run one operation and return its JSON result.
pub fn run_op<F: Field>(ctx: &TaskCtx<'_, F>, op: &str, args: &Map<String, Value>) -> Result<Value> {
    let env = ctx.env;
    let b = &ctx.bounds;
    let a = Args { map: args };
    let one = || a.module(env, "M");
    Ok(match op {
        "describe" => {
            let m = one()?;
            let mut v = module_summary(m);
            v["presentation"] = json!(m.describe());
            v
        }
        "hilbert" => {
            let m = one()?.minimalize().module;
            let through = a.opt_usize("through")?.map(|x| x as i32).unwrap_or(HILBERT_DEFAULT);
            json!({ "from": m.min_degree(), "values": m.hilbert(through) })
        }
        "length" => json!({ "length": one()?.length() }),
        "resolution" => {
            let m = one()?;
            let res = if args.get("overPoly").and_then(Value::as_bool).unwrap_or(false) {
                Resolution::resolve_over_poly(m)?
            } else {
                Resolution::resolve(m, a.usize_or("maxStep", b.max_step)?)?
            };
            let graded: Vec<Value> = res.graded_betti().iter().map(|g| json!(g.iter().map(|(d, c)| (d.to_string(), *c)).collect::<IndexMap<_, _>>())).collect();
            json!({ "betti": res.betti(), "graded": graded, "terminated": res.terminated, "pd": res.pd() })
        }
        "pdOverPoly" => json!({ "pd": pd_over_poly(one()?)? }),
        "pdOverRing" => json!({ "pd": pd_over_ring(one()?, a.usize_or("maxStep", b.max_step)?)? }),
        "depth" => json!({ "depth": depth(one()?)? }),
        "koszulDepth" => json!({ "depth": koszul_depth(one()?)? }),
        "isMCM" => json!({ "value": is_mcm(one()?)? }),
        "tor" => {
            let (m, n) = pair(&a, env)?;
            tor_json(&tor_with(m, n, a.usize_or("maxDeg", b.tor_max_deg)?, ctx.exec)?)
        }
        "torModule" => {
            let (m, n) = pair(&a, env)?;
            let t = tor_module(m, n, a.usize("i")?)?.minimalize().module;
            json!({ "length": t.length(), "hilbert": t.hilbert(HILBERT_DEFAULT), "minimalGenerators": t.num_gens() })
        }
        "detectPeriod" => {
            let (m, n) = pair(&a, env)?;
            let p = tor_with(m, n, a.usize_or("maxDeg", b.tor_max_deg)?, ctx.exec)?;
            json!({ "period": detect_period(&p)?, "profile": tor_json(&p) })
        }
        "theta" => {
            let (m, n) = pair(&a, env)?;
            let ring = m.ring();
            if !ring.is_hypersurface() {
                return Err(Error::NotHypersurface(ring.codim()));
            }
            let p = tor_with(m, n, a.usize_or("maxDeg", b.tor_max_deg)?, ctx.exec)?;
            let (theta, period) = theta_from_profile(&p)?;
            let eta1 = &theta * &Rational::new(1, 2);
            json!({ "theta": theta, "eta1": eta1, "period": period, "profile": tor_json(&p) })
        }
        "etaEstimate" => {
            let (m, n) = pair(&a, env)?;
            let e = a.usize_or("e", m.ring().codim().max(1))?;
            json!(eta_estimate(m, n, e, a.usize_or("nMax", b.eta_n_max)?)?)
        }
        "spCheck" => {
            let (m, n) = pair(&a, env)?;
            let c = a.usize_or("c", m.ring().codim().max(1))?;
            let p = tor_with(m, n, a.usize_or("maxDeg", b.tor_max_deg)?, ctx.exec)?;
            json!(sp_check_with_profile(m, n, c, &p)?)
        }
        "torsion" => {
            let t = torsion(one()?)?;
            let tp = t.tp.module.minimalize().module;
            json!({
                "torsionLength": tp.length(),
                "torsionGenerators": tp.num_gens(),
                "torsionHilbert": tp.hilbert(HILBERT_DEFAULT),
                "torsionFree": module_summary(&t.tf),
            })
        }
        "isTorsionFree" => json!({ "value": is_torsion_free(one()?)? }),
        "isReflexive" => json!({ "value": is_reflexive(one()?)? }),
        "pushforward" => {
            let p = pushforward(one()?)?;
            json!({ "nu": p.nu, "m1": module_summary(&p.m1) })
        }
        "serre" => json!(serre(one()?, a.usize_or("n", b.serre_n)?)?),
        "serreByExt" => json!({ "value": serre_by_ext(one()?, a.usize_or("n", b.serre_n)?)? }),
        "quasiLift" => {
            let (s, e) = quasi_lift(one()?)?;
            json!({ "baseRing": s.describe(), "lift": module_summary(&e) })
        }
        "tensorPower" => {
            let m = one()?;
            let n = a.usize("n")?;
            let p = tensor_power(m, n)?;
            let pm = p.module();
            let mut v = json!({ "n": n, "module": module_summary(pm) });
            if m.ring().is_polynomial_ring() {
                v["pdOverPoly"] = json!(pd_over_poly(pm)?);
            }
            v
        }
        "torsionScan" => json!(torsion_scan(one()?, a.usize("nMax")?)?),
        "tau" => tau_op(ctx, &a)?,
        "gammaM" => json!({ "length": gamma_m(one()?, a.usize_or("bound", 6)?)?.length() }),
        "annihilator" => {
            let m = one()?;
            json!({ "generators": fmt_polys(m.ring(), &m.annihilator()?) })
        }
        "rank" => json!({ "rank": rank_surrogate(one()?)? }),
        "indistinguishable" => {
            let (m, n) = pair(&a, env)?;
            let through = a.opt_usize("through")?.map(|x| x as i32).unwrap_or(HILBERT_DEFAULT);
            json!({ "value": m.indistinguishable(n, through)? })
        }
        "suppContained" => {
            let (m, n) = pair(&a, env)?;
            json!({ "value": supp_contained(m, n)? })
        }
        "audit" => audit_op(ctx, &a)?,
        "auslanderBuchsbaum" => auslander_buchsbaum(ctx, &a)?,
        "shuffleKill" => shuffle_kill(ctx, &a)?,
        other => {
            let suggestion = OPS.iter().map(|o| (strsim::levenshtein(other, o), *o)).min().filter(|(d, _)| *d <= 3);
            let hint = suggestion.map(|(_, s)| format!("; did you mean `{s}`?")).unwrap_or_default();
            return Err(Error::Invalid(format!("unknown operation `{other}`{hint}")));
        }
    })
}

fn tau_op<F: Field>(ctx: &TaskCtx<'_, F>, a: &Args<'_>) -> Result<Value> {
    let name = a.str("M")?;
    let m = ctx.env.get(name)?;
    let ring = m.ring();
    let (r, elems): (Vec<Poly<F>>, Vec<Vector<F>>) = match a.map.get("r") {
        Some(_) => {
            let r = polys(ring, &a.strings("r")?)?;
            let rows = a.map.get("elems").and_then(Value::as_array).ok_or_else(|| Error::MissingInput("argument `elems`".into()))?;
            let elems = rows
                .iter()
                .map(|row| {
                    let coords: Vec<String> = serde_json::from_value(row.clone()).map_err(|e| Error::Invalid(format!("elems: {e}")))?;
                    m.element(&polys(ring, &coords)?)
                })
                .collect::<Result<_>>()?;
            (r, elems)
        }
        None => {
            let seq = ctx.env.koszul.get(name).ok_or_else(|| Error::MissingInput(format!("`{name}` is not a Koszul module; pass `r` and `elems`")))?;
            (seq.clone(), m.marked_gens())
        }
    };
    let w = tau(m, &r, &elems)?;
    let gamma = gamma_m(w.power.module(), a.usize_or("bound", 6)?)?;
    Ok(json!({
        "d": r.len(),
        "terms": w.terms.len(),
        "killed": w.killed,
        "allKilled": w.killed.iter().all(|&k| k),
        "annihilator": fmt_polys(ring, &w.annihilator),
        "certifiedAnnihilator": ring.ideals_equal(&w.annihilator, &r),
        "outsideMaxPower": w.outside_max_power,
        "minimalPart": w.minimal_part,
        "mTorsionLength": gamma.length(),
    }))
}

fn audit_op<F: Field>(ctx: &TaskCtx<'_, F>, a: &Args<'_>) -> Result<Value> {
    let id = a.str("theorem")?;
    let empty = Map::new();
    let targs = a.map.get("args").and_then(Value::as_object).unwrap_or(&empty);
    let env = ctx.env;
    let ring = env.ring.clone();
    let mut input = AuditInput::new(ring.clone());
    for (key, kind) in find_audit_args(id)? {
        let Some(v) = targs.get(key) else { continue };
        use crate::pairing::ArgKind::*;
        let bad = || Error::Invalid(format!("audit argument `{key}` has the wrong shape"));
        match kind {
            Module => {
                let name = v.as_str().ok_or_else(bad)?;
                input = input.with_module(key, env.get(name)?.clone());
                input.labels.insert(key.to_string(), json!(name));
            }
            ModuleList => {
                let names: Vec<String> = serde_json::from_value(v.clone()).map_err(|_| bad())?;
                let ms = names.iter().map(|n| env.get(n).cloned()).collect::<Result<Vec<_>>>()?;
                input = input.with_list(key, ms);
                input.labels.insert(key.to_string(), json!(names));
            }
            Int => input = input.with_int(key, v.as_i64().ok_or_else(bad)?),
            IdealList => {
                let gens: Vec<Vec<String>> = serde_json::from_value(v.clone()).map_err(|_| bad())?;
                let ideals = gens.iter().map(|g| polys(&ring, g)).collect::<Result<Vec<_>>>()?;
                input = input.with_ideals(key, ideals);
            }
        }
    }
    if let Some(unknown) = targs.keys().find(|k| !find_audit_args(id).map(|s| s.iter().any(|(n, _)| n == k)).unwrap_or(false)) {
        return Err(Error::Invalid(format!("audit {id} has no argument `{unknown}`")));
    }
    if id.eq_ignore_ascii_case("DVR-TF") && !input.ints.contains_key("seed") {
        input = input.with_int("seed", ctx.seed as i64);
    }
    Ok(json!(audit(id, &input, &ctx.bounds)?))
}

/// Per-case seeds drawn from the task seed.
fn case_seeds(seed: u64, count: usize) -> Vec<u64> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen()).collect()
}

/// `pd_Q M + depth M = dim Q` on seeded random modules, with depth from the
/// Koszul complex so the two sides are computed independently.
fn auslander_buchsbaum<F: Field>(ctx: &TaskCtx<'_, F>, a: &Args<'_>) -> Result<Value> {
    let ring = &ctx.env.ring;
    if !ring.is_polynomial_ring() {
        return Err(Error::Invalid("auslanderBuchsbaum runs over a polynomial ring".into()));
    }
    let count = a.usize_or("count", 25)?;
    let seeds = case_seeds(ctx.seed, count);
    let n = ring.nvars();
    let cases = ctx.exec.map(&seeds, |&s| -> Result<Value> {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let mut m = random_module(ring, &mut rng, &RandomParams::default())?.minimalize().module;
        while m.is_zero() {
            m = random_module(ring, &mut rng, &RandomParams::default())?.minimalize().module;
        }
        let pd = pd_over_poly(&m)?;
        let dp = koszul_depth(&m)?;
        Ok(json!({ "seed": s.to_string(), "pd": pd, "depth": dp, "holds": pd + dp == n }))
    });
    let cases: Vec<Value> = cases.into_iter().collect::<Result<_>>()?;
    let failures: Vec<usize> = cases.iter().enumerate().filter(|(_, c)| c["holds"] != json!(true)).map(|(i, _)| i).collect();
    Ok(json!({ "seed": ctx.seed, "count": count, "dim": n, "holds": failures.is_empty(), "failures": failures, "cases": cases }))
}

/// Every `r_j · τ` vanishes for seeded random relations `Σ r_i m_i = 0`.
fn shuffle_kill<F: Field>(ctx: &TaskCtx<'_, F>, a: &Args<'_>) -> Result<Value> {
    let ring = &ctx.env.ring;
    let count = a.usize_or("count", 20)?;
    let seeds = case_seeds(ctx.seed, count);
    let cases = ctx.exec.map(&seeds, |&s| -> Result<Value> {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let (m, r, elems) = random_relation(ring, &mut rng)?;
        let rel_holds = {
            let f = ring.field();
            let mut acc = Vector::zero();
            for (ri, ei) in r.iter().zip(&elems) {
                acc = acc.add(&ei.mul_poly(ri, f), f);
            }
            m.elem_is_zero(&acc)
        };
        let w = tau(&m, &r, &elems)?;
        Ok(json!({
            "seed": s.to_string(),
            "d": r.len(),
            "relationHolds": rel_holds,
            "allKilled": w.killed.iter().all(|&k| k),
        }))
    });
    let cases: Vec<Value> = cases.into_iter().collect::<Result<_>>()?;
    let failures: Vec<usize> =
        cases.iter().enumerate().filter(|(_, c)| c["allKilled"] != json!(true) || c["relationHolds"] != json!(true)).map(|(i, _)| i).collect();
    Ok(json!({ "seed": ctx.seed, "count": count, "holds": failures.is_empty(), "failures": failures, "cases": cases }))
}
