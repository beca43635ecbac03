//! `torlab`: run scenario files, list the audit catalog, and check the
//! bundled corpus.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};
use torlab_core::pairing::list_audits;
use torlab_core::parallel::init_threads;
use torlab_core::scenario::markdown::render;
use torlab_core::scenario::runner::parse_bound;
use torlab_core::scenario::{run_scenario, RunOptions, RunReport};

/// The bundled acceptance corpus, in run order.
const CORPUS: &[(&str, &str)] = &[
    ("node-eta.json", include_str!("../../../scenarios/node-eta.json")),
    ("node-powers.json", include_str!("../../../scenarios/node-powers.json")),
    ("koszul-d2.json", include_str!("../../../scenarios/koszul-d2.json")),
    ("koszul-d3.json", include_str!("../../../scenarios/koszul-d3.json")),
    ("shuffle-kill.json", include_str!("../../../scenarios/shuffle-kill.json")),
    ("auslander-buchsbaum.json", include_str!("../../../scenarios/auslander-buchsbaum.json")),
    ("pf-serre-plane.json", include_str!("../../../scenarios/pf-serre-plane.json")),
    ("pf-serre-node.json", include_str!("../../../scenarios/pf-serre-node.json")),
    ("pf-serre-koszul.json", include_str!("../../../scenarios/pf-serre-koszul.json")),
    ("eta-codim2.json", include_str!("../../../scenarios/eta-codim2.json")),
    ("df-node.json", include_str!("../../../scenarios/df-node.json")),
    ("df-cone.json", include_str!("../../../scenarios/df-cone.json")),
    ("eta-tf-negative.json", include_str!("../../../scenarios/eta-tf-negative.json")),
];

#[derive(Parser)]
#[command(name = "torlab", version, about = "Exact Tor, torsion and pairing computations over graded complete intersections")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a scenario file and write its JSON report.
    Run {
        scenario: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a Markdown summary.
        #[arg(long)]
        md: Option<PathBuf>,
        /// Override a bound, e.g. `--bound torMaxDeg=16`.
        #[arg(long = "bound", value_name = "K=V", value_parser = parse_bound_arg)]
        bounds: Vec<(String, usize)>,
        #[arg(long)]
        seed: Option<u64>,
        /// Run tasks in order and stop at the first execution error.
        #[arg(long)]
        fail_fast: bool,
        /// Omit wall-clock timings from the report.
        #[arg(long)]
        reproducible: bool,
    },
    /// List the audit catalog with arguments and bound defaults.
    Audits {
        /// Print the catalog as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run the bundled corpus and print one line per scenario.
    Check {
        /// Omit wall-clock timings, making the output byte-reproducible.
        #[arg(long)]
        reproducible: bool,
        /// Write each report into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn parse_bound_arg(s: &str) -> Result<(String, usize), String> {
    parse_bound(s).map_err(|e| e.to_string())
}

fn threads_from_env() {
    if let Some(n) = std::env::var("TORLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        init_threads(n);
    }
}

fn write_or_print(path: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(args: Cmd) -> Result<u8, String> {
    match args {
        Cmd::Run { scenario, out, md, bounds, seed, fail_fast, reproducible } => {
            let text = std::fs::read_to_string(&scenario).map_err(|e| format!("cannot read {}: {e}", scenario.display()))?;
            let opts = RunOptions { seed, bounds, fail_fast, reproducible, ..Default::default() };
            let report = run_scenario(&text, &opts).map_err(|e| format!("{}: {e}", scenario.display()))?;
            write_or_print(out.as_ref(), &report.to_json())?;
            if let Some(md) = md {
                write_or_print(Some(&md), &render(&report))?;
            }
            Ok(report.exit_code as u8)
        }
        Cmd::Audits { json } => {
            let all = list_audits();
            if json {
                println!("{}", serde_json_pretty(&all));
            } else {
                for a in all {
                    println!("{}: {}", a.id, a.statement);
                    for arg in &a.args {
                        let req = if arg.required { "required" } else { "optional" };
                        let d = arg.default.map(|d| format!(", default {d}")).unwrap_or_default();
                        println!("    {} ({:?}, {req}{d}): {}", arg.name, arg.kind, arg.doc);
                    }
                    if !a.bounds.is_empty() {
                        let b: Vec<String> = a.bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
                        println!("    bounds: {}", b.join(", "));
                    }
                }
            }
            Ok(0)
        }
        Cmd::Check { reproducible, out_dir } => {
            let mut worst = 0u8;
            for (name, text) in CORPUS {
                let opts = RunOptions { reproducible, ..Default::default() };
                let line = match run_scenario(text, &opts) {
                    Ok(r) => {
                        let json = r.to_json();
                        if let Some(dir) = &out_dir {
                            let p = dir.join(name);
                            std::fs::write(&p, &json).map_err(|e| format!("cannot write {}: {e}", p.display()))?;
                        }
                        worst = worst_code(worst, r.exit_code as u8);
                        summary_line(name, &r, &json)
                    }
                    Err(e) => {
                        worst = worst_code(worst, 1);
                        format!("{name}: ERROR {e}")
                    }
                };
                println!("{line}");
            }
            Ok(worst)
        }
    }
}

fn serde_json_pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("catalog serializes")
}

fn worst_code(a: u8, b: u8) -> u8 {
    if a == 1 || b == 1 {
        1
    } else {
        a.max(b)
    }
}

fn summary_line(name: &str, r: &RunReport, json: &str) -> String {
    let s = &r.summary;
    let status = if r.exit_code == 0 { "ok" } else { "FAILED" };
    let digest = format!("{:x}", Sha256::digest(json.as_bytes()));
    format!(
        "{name}: {status} exit={} tasks={} ok={} pass={} inconclusive={} fail={} mismatch={} error={} report-sha256={}",
        r.exit_code, s.total, s.ok, s.audit_pass, s.audit_inconclusive, s.audit_fail, s.mismatches, s.errors, &digest[..16]
    )
}

fn main() -> ExitCode {
    threads_from_env();
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("torlab: {e}");
            ExitCode::from(1)
        }
    }
}
