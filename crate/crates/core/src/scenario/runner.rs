//! Executes a scenario: builds the ring and modules, runs tasks (in
//! parallel unless `--fail-fast`), and assembles the report.

use std::sync::Arc;
use std::time::Instant;

use serde_json::Value;
use sha2::{Digest, Sha256};

use super::expect::mismatches;
use super::ops::{run_op, Env, TaskCtx};
use super::report::{exit_code, ExpectResult, RunReport, ScenarioInfo, Summary, TaskEntry, TaskOutcome, TaskStatus, ToolInfo};
use super::{Scenario, TaskDecl};
use crate::error::{Error, Result};
use crate::pairing::Bounds;
use crate::parallel::Exec;
use crate::poly::{Field, PrimeField, Rationals};
use crate::ring::Ring;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Overrides the scenario seed.
    pub seed: Option<u64>,
    /// `--bound K=V` overrides, applied after scenario and task bounds.
    pub bounds: Vec<(String, usize)>,
    pub fail_fast: bool,
    /// Omit wall-clock timings so reports are byte-identical across runs.
    pub reproducible: bool,
    pub exec: Exec,
}

fn apply(b: &mut Bounds, kv: impl IntoIterator<Item = (String, usize)>) -> Result<()> {
    for (k, v) in kv {
        b.set(&k, v)?;
    }
    Ok(())
}

/// Parse and run scenario text. Errors here are scenario-level (syntax,
/// schema, ring); task failures are recorded in the report.
pub fn run_scenario(text: &str, opts: &RunOptions) -> Result<RunReport> {
    let s = Scenario::parse(text)?;
    let digest = format!("{:x}", Sha256::digest(text.as_bytes()));
    match s.ring.characteristic {
        0 => run_with(Rationals, &s, digest, opts),
        p => run_with(PrimeField::new(p)?, &s, digest, opts),
    }
}

fn run_with<F: Field>(field: F, s: &Scenario, digest: String, opts: &RunOptions) -> Result<RunReport> {
    let vars: Vec<&str> = s.ring.variables.iter().map(String::as_str).collect();
    let rels: Vec<&str> = s.ring.relations.iter().map(String::as_str).collect();
    let ring: Arc<Ring<F>> = Ring::parse(field, &vars, &rels)?;
    let seed = opts.seed.or(s.seed).unwrap_or(0);
    let mut bounds = Bounds::default();
    apply(&mut bounds, s.bounds.iter().map(|(k, v)| (k.clone(), *v)))?;
    apply(&mut bounds, opts.bounds.iter().cloned())?;

    let order = s.construction_order()?;
    let env = Env::build(ring.clone(), &s.modules, &order, bounds.max_step);
    let modules = env.modules.keys().map(|k| (k.clone(), env.summary(k))).collect();

    let run_one = |(index, t): &(usize, &TaskDecl)| run_task(&env, *index, t, &bounds, &opts.bounds, seed, opts);
    let indexed: Vec<(usize, &TaskDecl)> = s.tasks.iter().enumerate().collect();
    let (tasks, skipped) = if opts.fail_fast {
        let mut out = Vec::new();
        for it in &indexed {
            let entry = run_one(it);
            let stop = entry.outcome == TaskOutcome::Error;
            out.push(entry);
            if stop {
                break;
            }
        }
        let skipped = indexed.len() - out.len();
        (out, skipped)
    } else {
        (opts.exec.map(&indexed, run_one), 0)
    };
    let summary = Summary::of(&tasks, skipped);
    let exit_code = exit_code(&tasks);
    Ok(RunReport {
        tool: ToolInfo { name: "torlab".into(), version: env!("CARGO_PKG_VERSION").into() },
        scenario: ScenarioInfo { name: s.name.clone(), description: s.description.clone(), digest, ring: ring.describe() },
        seed,
        bounds,
        modules,
        tasks,
        summary,
        exit_code,
    })
}

fn run_task<F: Field>(
    env: &Env<F>,
    index: usize,
    t: &TaskDecl,
    base: &Bounds,
    cli: &[(String, usize)],
    seed: u64,
    opts: &RunOptions,
) -> TaskEntry {
    let start = Instant::now();
    let seed = t.args.get("seed").and_then(Value::as_u64).unwrap_or(seed);
    let mut bounds = *base;
    let res = apply(&mut bounds, t.bounds.iter().map(|(k, v)| (k.clone(), *v)))
        .and_then(|_| apply(&mut bounds, cli.iter().cloned()))
        .and_then(|_| {
            let ctx = TaskCtx { env, bounds, seed, exec: opts.exec };
            run_op(&ctx, &t.op, &t.args)
        });
    let wall_ms = (!opts.reproducible).then(|| start.elapsed().as_millis() as u64);
    let mut entry = TaskEntry {
        index,
        op: t.op.clone(),
        label: t.label.clone(),
        args: t.args.clone(),
        bounds,
        seed,
        status: TaskStatus::Ok,
        result: None,
        error: None,
        expect: None,
        outcome: TaskOutcome::Ok,
        wall_ms,
    };
    match res {
        Err(e) => {
            entry.status = TaskStatus::Error;
            entry.error = Some(e.to_string());
            entry.outcome = TaskOutcome::Error;
        }
        Ok(v) => {
            if t.op == "audit" {
                entry.outcome = match v.get("outcome").and_then(Value::as_str) {
                    Some("PASS") => TaskOutcome::Pass,
                    Some("FAIL") => TaskOutcome::Fail,
                    _ => TaskOutcome::Inconclusive,
                };
            }
            if let Some(exp) = &t.expect {
                let mm = mismatches(exp, &v);
                if !mm.is_empty() && entry.outcome != TaskOutcome::Fail {
                    entry.outcome = TaskOutcome::Mismatch;
                }
                entry.expect = Some(ExpectResult { matched: mm.is_empty(), mismatches: mm });
            }
            entry.result = Some(v);
        }
    }
    entry
}

/// Parse `K=V` bound overrides.
pub fn parse_bound(s: &str) -> Result<(String, usize)> {
    let (k, v) = s.split_once('=').ok_or_else(|| Error::Invalid(format!("bound `{s}` is not of the form K=V")))?;
    let v: usize = v.trim().parse().map_err(|_| Error::Invalid(format!("bound `{s}` needs a non-negative integer value")))?;
    let key = k.trim().to_string();
    Bounds::default().set(&key, v)?;
    Ok((key, v))
}
