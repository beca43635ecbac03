//! Scenario runner: determinism, report round trips, error handling and
//! exit codes.

use std::fs;
use std::path::PathBuf;

use torlab_core::parallel::Exec;
use torlab_core::scenario::report::{exit_code, TaskOutcome};
use torlab_core::scenario::{run_scenario, RunOptions, RunReport};
use torlab_core::Error;

fn corpus() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let mut out: Vec<(String, String)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

fn repro() -> RunOptions {
    RunOptions { reproducible: true, ..Default::default() }
}

#[test]
fn bundled_corpus_is_green_deterministic_and_round_trips() {
    for (name, text) in corpus() {
        let a = run_scenario(&text, &repro()).unwrap();
        assert_eq!(a.exit_code, 0, "{name}: {}", a.to_json());
        let b = run_scenario(&text, &RunOptions { exec: Exec::Sequential, ..repro() }).unwrap();
        assert_eq!(a.to_json(), b.to_json(), "{name}: parallel and sequential runs differ");
        let back = RunReport::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a, "{name}");
        assert!(a.tasks.iter().all(|t| t.wall_ms.is_none()));
    }
}

#[test]
fn node_eta_report_has_theta_and_eta() {
    let text = fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios/node-eta.json")).unwrap();
    let r = run_scenario(&text, &repro()).unwrap();
    let theta = r.tasks.iter().find(|t| t.op == "theta").unwrap().result.as_ref().unwrap();
    assert_eq!(theta["theta"], "-1");
    assert_eq!(theta["eta1"], "-1/2");
}

#[test]
fn empty_task_list_is_a_valid_run() {
    let r = run_scenario(r#"{"name": "empty", "ring": {"variables": ["x"]}, "tasks": []}"#, &repro()).unwrap();
    assert!(r.tasks.is_empty());
    assert_eq!(r.exit_code, 0);
    assert_eq!(r.summary.total, 0);
}

#[test]
fn parse_errors_carry_positions() {
    let text = "{\n  \"name\": \"bad\",\n  \"ring\": {\"variables\": [\"x\"]},\n  \"tasks\": [ {\"op\": 3} ]\n}";
    match run_scenario(text, &repro()) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
        other => panic!("{other:?}"),
    }
    let undeclared = r#"{"name": "u", "ring": {"variables": ["x"], "relations": ["y^2"]}}"#;
    assert!(run_scenario(undeclared, &repro()).is_err());
}

const MIXED: &str = r#"{
    "name": "mixed",
    "ring": {"variables": ["x", "y"], "relations": ["x*y"]},
    "modules": {"M": {"quotient": ["x"]}, "Bad": {"quotient": ["z"]}},
    "tasks": [
        {"op": "length", "args": {"M": "Bad"}},
        {"op": "frobnicate", "args": {}},
        {"op": "pdOverRing", "args": {"M": "M"}, "expect": {"pd": {"exact": 0}}},
        {"op": "isTorsionFree", "args": {"M": "M"}, "expect": {"value": true}}
    ]
}"#;

#[test]
fn task_errors_are_recorded_without_aborting() {
    let r = run_scenario(MIXED, &repro()).unwrap();
    let outcomes: Vec<TaskOutcome> = r.tasks.iter().map(|t| t.outcome).collect();
    assert_eq!(outcomes, [TaskOutcome::Error, TaskOutcome::Error, TaskOutcome::Mismatch, TaskOutcome::Ok]);
    assert!(r.tasks[0].error.as_ref().unwrap().contains("Bad"));
    assert!(r.tasks[1].error.as_ref().unwrap().contains("unknown operation"));
    assert!(r.modules["Bad"].get("error").is_some());
    assert_eq!(r.exit_code, 1);
    assert_eq!(exit_code(&r.tasks[2..]), 2);
    assert_eq!(exit_code(&r.tasks[3..]), 0);
}

#[test]
fn fail_fast_stops_at_the_first_error() {
    let r = run_scenario(MIXED, &RunOptions { fail_fast: true, ..repro() }).unwrap();
    assert_eq!(r.tasks.len(), 1);
    assert_eq!(r.summary.skipped, 3);
    assert_eq!(r.exit_code, 1);
}

#[test]
fn bound_precedence_is_default_scenario_task_cli() {
    let text = r#"{
        "name": "b",
        "ring": {"variables": ["x", "y"], "relations": ["x*y"]},
        "bounds": {"torMaxDeg": 5},
        "modules": {"M": {"quotient": ["x"]}},
        "tasks": [
            {"op": "tor", "args": {"M": "M", "N": "M"}},
            {"op": "tor", "args": {"M": "M", "N": "M"}, "bounds": {"torMaxDeg": 7}}
        ]
    }"#;
    let r = run_scenario(text, &repro()).unwrap();
    assert_eq!(r.tasks[0].bounds.tor_max_deg, 5);
    assert_eq!(r.tasks[1].bounds.tor_max_deg, 7);
    assert_eq!(r.tasks[1].result.as_ref().unwrap()["maxDeg"], 7);
    assert_eq!(r.tasks[0].bounds.eta_n_max, 40);
    let cli = RunOptions { bounds: vec![("torMaxDeg".into(), 3)], ..repro() };
    let r = run_scenario(text, &cli).unwrap();
    assert!(r.tasks.iter().all(|t| t.bounds.tor_max_deg == 3));
    let bad = RunOptions { bounds: vec![("nope".into(), 3)], ..repro() };
    assert!(run_scenario(text, &bad).is_err());
}

#[test]
fn seeds_are_recorded_and_respected() {
    let text = r#"{"name": "s", "ring": {"variables": ["x", "y", "z"]}, "seed": 7, "tasks": [{"op": "shuffleKill", "args": {"count": 3}}]}"#;
    let a = run_scenario(text, &repro()).unwrap();
    assert_eq!(a.seed, 7);
    assert_eq!(a.tasks[0].seed, 7);
    let b = run_scenario(text, &RunOptions { seed: Some(9), ..repro() }).unwrap();
    assert_eq!(b.tasks[0].result.as_ref().unwrap()["seed"], 9);
    assert_ne!(a.tasks[0].result, b.tasks[0].result);
}

#[test]
fn syzygy_and_twist_constructors() {
    let text = r#"{
        "name": "syz",
        "ring": {"characteristic": 0, "variables": ["x", "y"]},
        "modules": {"k": {"quotient": ["x", "y"]}, "S1": {"syzygy": {"of": "k", "k": 1}}, "S2": {"syzygy": {"of": "k", "k": 2}}, "T": {"twist": {"of": "k", "by": 2}}},
        "tasks": [
            {"op": "describe", "args": {"M": "S1"}, "expect": {"minimalGenerators": 2}},
            {"op": "pdOverPoly", "args": {"M": "S2"}, "expect": {"pd": 0}},
            {"op": "hilbert", "args": {"M": "T", "through": 0}, "expect": {"from": -2, "values": [1, 0, 0]}}
        ]
    }"#;
    let r = run_scenario(text, &repro()).unwrap();
    assert_eq!(r.exit_code, 0, "{}", r.to_json());
}
