//! Markdown rendering of a run report. Audit results mirror their JSON:
//! hypotheses, conclusion and caveats.

use std::fmt::Write;

use serde_json::Value;

use super::report::{RunReport, TaskEntry};

fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.len() > 160 {
        format!("{}…", &s[..s.char_indices().take_while(|(i, _)| *i < 160).last().map(|(i, c)| i + c.len_utf8()).unwrap_or(0)])
    } else {
        s
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn audit_block(out: &mut String, v: &Value) {
    let _ = writeln!(out, "- outcome: **{}**", v["outcome"].as_str().unwrap_or("?"));
    if let Some(r) = v["reason"].as_str() {
        let _ = writeln!(out, "- reason: {r}");
    }
    let _ = writeln!(out, "- hypotheses:");
    for h in v["hypotheses"].as_array().into_iter().flatten() {
        let w = h["witness"].as_str().map(|w| format!(" ({w})")).unwrap_or_default();
        let _ = writeln!(out, "  - {}: {}{}", h["name"].as_str().unwrap_or(""), h["verdict"].as_str().unwrap_or(""), w);
    }
    let c = &v["conclusion"];
    let w = c["witness"].as_str().map(|w| format!(" ({w})")).unwrap_or_default();
    let _ = writeln!(out, "- conclusion: {}: {}{}", c["statement"].as_str().unwrap_or(""), c["verdict"].as_str().unwrap_or(""), w);
    let _ = writeln!(out, "- caveats:");
    for cv in v["caveats"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "  - {}", cv.as_str().unwrap_or(""));
    }
}

fn task_block(out: &mut String, t: &TaskEntry) {
    let label = t.label.as_deref().map(|l| format!(" ({l})")).unwrap_or_default();
    let _ = writeln!(out, "### {}. {}{}\n", t.index, t.op, label);
    let _ = writeln!(out, "- args: `{}`", compact(&Value::Object(t.args.clone())));
    let _ = writeln!(out, "- outcome: {:?}", t.outcome);
    if let Some(e) = &t.error {
        let _ = writeln!(out, "- error: {e}");
    }
    if let Some(x) = &t.expect {
        if !x.matched {
            let _ = writeln!(out, "- expectation mismatches: {}", x.mismatches.join("; "));
        }
    }
    if let Some(v) = &t.result {
        if t.op == "audit" {
            audit_block(out, v);
        } else if let Some(obj) = v.as_object() {
            for (k, val) in obj {
                let _ = writeln!(out, "- {k}: `{}`", compact(val));
            }
        }
    }
    out.push('\n');
}

pub fn render(r: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}\n", r.scenario.name);
    if !r.scenario.description.is_empty() {
        let _ = writeln!(out, "{}\n", r.scenario.description);
    }
    let _ = writeln!(out, "- ring: `{}`", r.scenario.ring);
    let _ = writeln!(out, "- digest: `{}`", r.scenario.digest);
    let _ = writeln!(out, "- seed: {}", r.seed);
    let _ = writeln!(
        out,
        "- bounds: torMaxDeg {}, etaNMax {}, serreN {}, maxStep {}",
        r.bounds.tor_max_deg, r.bounds.eta_n_max, r.bounds.serre_n, r.bounds.max_step
    );
    let _ = writeln!(out, "- tool: {} {}\n", r.tool.name, r.tool.version);
    let _ = writeln!(out, "## Modules\n\n| name | summary |\n|---|---|");
    for (k, v) in &r.modules {
        let _ = writeln!(out, "| {} | `{}` |", cell(k), cell(&compact(v)));
    }
    let _ = writeln!(out, "\n## Tasks\n\n| # | op | label | outcome |\n|---|---|---|---|");
    for t in &r.tasks {
        let _ = writeln!(out, "| {} | {} | {} | {:?} |", t.index, cell(&t.op), cell(t.label.as_deref().unwrap_or("")), t.outcome);
    }
    out.push('\n');
    for t in &r.tasks {
        task_block(&mut out, t);
    }
    let s = &r.summary;
    let _ = writeln!(
        out,
        "## Summary\n\n{} tasks: {} ok, {} errors, {} mismatches, audits {} pass / {} fail / {} inconclusive, {} skipped. Exit code {}.",
        s.total, s.ok, s.errors, s.mismatches, s.audit_pass, s.audit_fail, s.audit_inconclusive, s.skipped, r.exit_code
    );
    out
}
