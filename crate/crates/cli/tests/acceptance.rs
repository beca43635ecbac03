//! Acceptance suite: one pass/fail line per criterion, with timings.
//! Exits nonzero if any criterion fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torlab_core::homology::{koszul_depth, pd_over_poly, tor, TorProfile};
use torlab_core::module::{FpModule, Length};
use torlab_core::pairing::{audit, detect_period, eta_estimate, theta, AuditInput, Bounds, EtaValue, InconclusiveKind, Outcome, Period, Rational, Verdict};
use torlab_core::poly::{Field, Poly, PrimeField, Rationals, Vector};
use torlab_core::random::{random_module, random_relation, RandomParams};
use torlab_core::ring::Ring;
use torlab_core::scenario::report::{exit_code, TaskOutcome};
use torlab_core::scenario::{run_scenario, RunOptions};
use torlab_core::serre::{is_torsion_free, pushforward, serre, serre_by_ext};
use torlab_core::tensor_tau::{gamma_m, koszul_module, tau, tensor_power, torsion_scan};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fp() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn node() -> Arc<Ring<PrimeField>> {
    Ring::parse(fp(), &["x", "y"], &["x*y"]).unwrap()
}

fn cyc<F: Field>(r: &Arc<Ring<F>>, gens: &[&str]) -> FpModule<F> {
    let ps: Vec<Poly<F>> = gens.iter().map(|g| r.parse_poly(g).unwrap()).collect();
    FpModule::cyclic(r.clone(), &ps).unwrap()
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_torlab")
}

fn scenario(name: &str) -> String {
    format!("{}/../../scenarios/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn finite(p: &TorProfile, i: usize) -> Option<u64> {
    p.lengths[i].finite()
}

/// Mutual containment of two ideals, each generator reduced against a
/// Gröbner basis of the other.
fn same_ideal<F: Field>(r: &Ring<F>, a: &[Poly<F>], b: &[Poly<F>]) -> bool {
    let (ga, gb) = (r.ideal_with(a), r.ideal_with(b));
    b.iter().all(|p| ga.contains(p)) && a.iter().all(|p| gb.contains(p))
}

fn c1() -> Check {
    let r = node();
    let (m, n) = (cyc(&r, &["x"]), cyc(&r, &["x^2"]));
    let p = tor(&m, &n, 11).map_err(|e| e.to_string())?;
    for i in 1..=11 {
        let want = if i % 2 == 1 { 1 } else { 0 };
        ensure(finite(&p, i) == Some(want), || format!("len Tor_{i} = {}, expected {want}", p.lengths[i]))?;
    }
    let per = detect_period(&p).map_err(|e| e.to_string())?;
    ensure(per == Some(Period { preperiod: 1, period: 2 }), || format!("detectPeriod = {per:?}"))?;
    let t = theta(&m, &n, 11).map_err(|e| e.to_string())?;
    ensure(t.theta == Rational::from_int(-1) && t.eta1 == Rational::new(-1, 2), || format!("theta {} eta1 {}", t.theta, t.eta1))?;
    let out = Command::new(bin()).args(["run", &scenario("node-eta.json"), "--reproducible"]).output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("node-eta.json exit {:?}", out.status.code()))?;
    let rep: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let th = rep["tasks"].as_array().unwrap().iter().find(|t| t["op"] == "theta").ok_or("no theta task")?;
    ensure(th["result"]["theta"] == "-1" && th["result"]["eta1"] == "-1/2", || format!("report theta {}", th["result"]))?;
    Ok("Tor lengths 1,0,1,…,1 through 11; period (1,2); θ = -1, η₁ = -1/2".into())
}

fn c2() -> Check {
    let r = node();
    let m = cyc(&r, &["x"]);
    let scan = torsion_scan(&m, 4).map_err(|e| e.to_string())?;
    ensure(scan.least_torsion_power.is_none(), || format!("least torsion power {:?}", scan.least_torsion_power))?;
    let h = m.hilbert(6);
    for n in 1..=4 {
        let p = tensor_power(&m, n).map_err(|e| e.to_string())?;
        let hp = p.module().minimalize().module.hilbert(6);
        ensure(hp == h, || format!("hilbert of power {n}: {hp:?} vs {h:?}"))?;
    }
    Ok(format!("torsionScan = NONE; hilbert {h:?} for n = 1..4"))
}

fn c3() -> Check {
    let mut notes = Vec::new();
    for vars in [&["x", "y"][..], &["x", "y", "z"][..]] {
        let d = vars.len();
        let q = Ring::parse(Rationals, vars, &[]).unwrap();
        let seq: Vec<Poly<Rationals>> = vars.iter().map(|v| q.parse_poly(v).unwrap()).collect();
        let k = koszul_module(&q, &seq).map_err(|e| e.to_string())?;
        let scan = torsion_scan(&k.module, d).map_err(|e| e.to_string())?;
        ensure(scan.least_torsion_power == Some(d), || format!("d = {d}: least torsion power {:?}", scan.least_torsion_power))?;
        let w = tau(&k.module, &k.seq, &k.marked()).map_err(|e| e.to_string())?;
        ensure(same_ideal(&q, &w.annihilator, &seq), || format!("d = {d}: Ann(τ) = {:?}", w.annihilator.iter().map(|p| q.fmt(p)).collect::<Vec<_>>()))?;
        let g = gamma_m(w.power.module(), 6).map_err(|e| e.to_string())?;
        ensure(g.length() == Length::Finite(1), || format!("d = {d}: m-torsion length {}", g.length()))?;
        notes.push(format!("d = {d}: least power {d}, Ann(τ) = ({}), dim_k Γ_m = 1", vars.join(",")));
    }
    Ok(notes.join("; "))
}

fn c4() -> Check {
    let q = Ring::parse(Rationals, &["x", "y", "z"], &[]).unwrap();
    let seq: Vec<Poly<Rationals>> = ["x", "y", "z"].iter().map(|v| q.parse_poly(v).unwrap()).collect();
    let m = koszul_module(&q, &seq).map_err(|e| e.to_string())?.module;
    let mut prev = FpModule::free(q.clone(), vec![0]);
    for n in 1..=3 {
        let p = tensor_power(&m, n).map_err(|e| e.to_string())?.module().clone();
        let pd = pd_over_poly(&p).map_err(|e| e.to_string())?;
        ensure(pd == n, || format!("pd of power {n} = {pd}"))?;
        if n >= 2 {
            let t = tor(&m, &prev, 6).map_err(|e| e.to_string())?;
            ensure(t.vanishes(1, 6), || format!("Tor(M, power {}) = {:?}", n - 1, t.lengths))?;
        }
        prev = p;
    }
    Ok("pd = 1, 2, 3; (M, ⊗^{n-1}M) Tor-independent through degree 6".into())
}

fn c5() -> Check {
    let r = Ring::parse(fp(), &["x", "y", "z"], &[]).unwrap();
    let f = r.field().clone();
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m, rs, elems) = random_relation(&r, &mut rng).map_err(|e| format!("seed {seed}: {e}"))?;
        let mut rel = Vector::zero();
        for (ri, ei) in rs.iter().zip(&elems) {
            rel = rel.add(&ei.mul_poly(ri, &f), &f);
        }
        ensure(m.elem_is_zero(&rel), || format!("seed {seed}: relation does not hold"))?;
        let w = tau(&m, &rs, &elems).map_err(|e| format!("seed {seed}: {e}"))?;
        for (j, rj) in rs.iter().enumerate() {
            let kill = w.element.mul_poly(rj, &f);
            ensure(w.power.module().elem_is_zero(&kill), || format!("seed {seed}: r_{j}·τ ≠ 0"))?;
        }
    }
    Ok("20 seeded relations, every r_j·τ reduces to zero".into())
}

fn c6() -> Check {
    let q = Ring::parse(Rationals, &["x", "y", "z"], &[]).unwrap();
    for seed in 0..25u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let mut m = random_module(&q, &mut rng, &RandomParams::default()).unwrap().minimalize().module;
        while m.is_zero() {
            m = random_module(&q, &mut rng, &RandomParams::default()).unwrap().minimalize().module;
        }
        let pd = pd_over_poly(&m).map_err(|e| e.to_string())?;
        let depth = koszul_depth(&m).map_err(|e| e.to_string())?;
        ensure(pd + depth == 3, || format!("seed {seed}: pd {pd} + depth {depth} ≠ 3"))?;
    }
    Ok("25 seeded modules, pd + depth = 3".into())
}

fn serre_agreement<F: Field>(label: &str, m: &FpModule<F>) -> Result<(), String> {
    let m1 = pushforward(m).map_err(|e| e.to_string())?.m1;
    let tf = is_torsion_free(m).map_err(|e| e.to_string())?;
    for n in 1..=2 {
        let lhs = serre(m, n + 1).map_err(|e| e.to_string())?.holds;
        let rhs = tf && serre(&m1, n).map_err(|e| e.to_string())?.holds;
        ensure(lhs == rhs, || format!("{label}, n = {n}: S_{} is {lhs}, tf ∧ S_{n}(M₁) is {rhs}", n + 1))?;
        let ext = serre_by_ext(m, n + 1).map_err(|e| e.to_string())?;
        ensure(ext == lhs, || format!("{label}, n = {n}: Ext criterion gives {ext}"))?;
    }
    Ok(())
}

fn c7() -> Check {
    let q2 = Ring::parse(Rationals, &["x", "y"], &[]).unwrap();
    let maximal = FpModule::from_matrix(q2.clone(), vec![1, 1], &[vec![q2.parse_poly("y").unwrap()], vec![q2.parse_poly("-x").unwrap()]]).unwrap();
    serre_agreement("m ⊂ Q[x,y]", &maximal)?;
    let r = node();
    serre_agreement("R/(x) over the node", &cyc(&r, &["x"]))?;
    let q3 = Ring::parse(Rationals, &["x", "y", "z"], &[]).unwrap();
    let seq: Vec<Poly<Rationals>> = ["x", "y", "z"].iter().map(|v| q3.parse_poly(v).unwrap()).collect();
    serre_agreement("Koszul d = 3", &koszul_module(&q3, &seq).map_err(|e| e.to_string())?.module)?;
    Ok("serre(M, n+1) = tf(M) ∧ serre(M₁, n) for all three modules, n = 1, 2".into())
}

fn c8() -> Check {
    let r = Ring::parse(fp(), &["x", "y"], &["x^2", "y^2"]).unwrap();
    let k = cyc(&r, &["x", "y"]);
    let e2 = eta_estimate(&k, &k, 2, 40).map_err(|e| e.to_string())?;
    let v = e2.value.value().ok_or("e = 2 did not converge")?.clone();
    ensure(v.abs() < Rational::new(1, 20), || format!("η₂ estimate {v}"))?;
    let e1 = eta_estimate(&k, &k, 1, 40).map_err(|e| e.to_string())?;
    ensure(e1.value == EtaValue::Nonconvergent, || format!("η₁ reported {:?}", e1.value))?;
    Ok(format!("η₂ ≈ {v} (|·| < 1/20); η₁ NONCONVERGENT"))
}

fn c9() -> Check {
    let r = node();
    let rep = audit("DF", &AuditInput::new(r.clone()).with_module("M", cyc(&r, &["x"])).with_module("N", FpModule::free(r.clone(), vec![0])), &Bounds::default())
        .map_err(|e| e.to_string())?;
    ensure(rep.outcome == Outcome::Pass, || format!("node DF {:?}: {:?}", rep.outcome, rep.reason))?;
    let cone = Ring::parse(fp(), &["x", "y", "z", "w"], &["x*w - y*z"]).unwrap();
    let p = |s: &str| cone.parse_poly(s).unwrap();
    let ideal = FpModule::from_matrix(cone.clone(), vec![1, 1], &[vec![p("y"), p("w")], vec![p("-x"), p("-z")]]).unwrap();
    let n = cyc(&cone, &["x + w"]);
    ensure(!ideal.minimalize().module.is_free(), || "cone module is free".into())?;
    let b = Bounds { tor_max_deg: 10, ..Bounds::default() };
    let t = tor(&ideal, &n, 10).map_err(|e| e.to_string())?;
    ensure(t.vanishes(1, 10), || format!("Tor over the cone: {:?}", t.lengths))?;
    let per = detect_period(&t).map_err(|e| e.to_string())?;
    ensure(per.is_some_and(|q| q.period == 2), || format!("cone period {per:?}"))?;
    let rep = audit("DF", &AuditInput::new(cone.clone()).with_module("M", ideal).with_module("N", n), &b).map_err(|e| e.to_string())?;
    ensure(rep.outcome == Outcome::Pass, || format!("cone DF {:?}: {:?}", rep.outcome, rep.reason))?;
    Ok("DF passes on (R/(x), R) over the node and on ((x,y), R/(x+w)) over the cone through degree 10".into())
}

fn c10() -> Check {
    let r = node();
    let input = AuditInput::new(r.clone()).with_module("M", cyc(&r, &["x"])).with_module("N", cyc(&r, &["x^2"]));
    let rep = audit("ETA-TF", &input, &Bounds::default()).map_err(|e| e.to_string())?;
    ensure(rep.outcome == Outcome::Inconclusive && rep.inconclusive == Some(InconclusiveKind::HypothesisFailed), || format!("{:?} {:?}", rep.outcome, rep.inconclusive))?;
    let h = rep.hypotheses.iter().find(|h| h.name.starts_with("η₁")).ok_or("no η₁ hypothesis")?;
    ensure(h.verdict == Verdict::False && h.witness.as_deref().is_some_and(|w| w.contains("-1/2")), || format!("{h:?}"))?;
    ensure(rep.conclusion.verdict == Verdict::NotAsserted, || format!("conclusion {:?}", rep.conclusion.verdict))?;
    let out = Command::new(bin()).args(["run", &scenario("eta-tf-negative.json"), "--reproducible"]).output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("hypothesis failure exits {:?}", out.status.code()))?;
    let text = std::fs::read_to_string(scenario("eta-tf-negative.json")).unwrap();
    let mut report = run_scenario(&text, &RunOptions { reproducible: true, ..Default::default() }).map_err(|e| e.to_string())?;
    report.tasks[0].outcome = TaskOutcome::Fail;
    let fail = exit_code(&report.tasks);
    ensure(fail == 2, || format!("conclusion failure maps to exit {fail}"))?;
    Ok("η₁ = -1/2 flagged, nothing asserted; hypothesis failure exits 0, conclusion failure exits 2".into())
}

fn c11() -> Check {
    let run = || Command::new(bin()).args(["check", "--reproducible"]).output().map_err(|e| e.to_string());
    let (a, b) = (run()?, run()?);
    ensure(a.status.code() == Some(0), || format!("check exit {:?}: {}", a.status.code(), String::from_utf8_lossy(&a.stdout)))?;
    ensure(a.stdout == b.stdout, || "check output differs between runs".into())?;
    let lines = String::from_utf8_lossy(&a.stdout).lines().count();
    Ok(format!("{lines} scenarios, byte-identical across two runs"))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 11] = [
        ("node η example", c1, Duration::from_secs(5)),
        ("node tensor powers", c2, Duration::from_secs(10)),
        ("Koszul witness d = 2, 3", c3, Duration::from_secs(60)),
        ("pd ladder", c4, Duration::from_secs(600)),
        ("shuffle-kill suite", c5, Duration::from_secs(60)),
        ("Auslander-Buchsbaum suite", c6, Duration::from_secs(600)),
        ("pushforward/Serre equivalence", c7, Duration::from_secs(600)),
        ("η vanishing for finite length", c8, Duration::from_secs(600)),
        ("depth formula audit", c9, Duration::from_secs(600)),
        ("essential-hypothesis control", c10, Duration::from_secs(600)),
        ("determinism of the corpus", c11, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let res = res.and_then(|msg| if took <= *limit { Ok(msg) } else { Err(format!("took {took:.2?}, limit {limit:?}")) });
        match res {
            Ok(msg) => println!("criterion {:>2} PASS [{took:.2?}] {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{took:.2?}] {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
