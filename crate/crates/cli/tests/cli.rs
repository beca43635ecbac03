//! Command-line behaviour: catalog listing, report files, exit codes.

use std::process::Command;

fn torlab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_torlab")).args(args).output().unwrap()
}

fn scenario(name: &str) -> String {
    format!("{}/../../scenarios/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn audits_lists_the_catalog_in_order() {
    let out = torlab(&["audits", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|a| a["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["TOR1", "RIGID", "ETA-TF", "ETA2", "DAO", "MCM-EQ", "DF", "QL-ETA", "PF-SERRE", "HW-REFLEX", "POWERS", "DVR-TF"]);
    let text = String::from_utf8(torlab(&["audits"]).stdout).unwrap();
    assert!(text.contains("bounds: torMaxDeg=12"));
}

#[test]
fn run_writes_json_and_markdown() {
    let dir = std::env::temp_dir().join(format!("torlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (json, md) = (dir.join("r.json"), dir.join("r.md"));
    let out = torlab(&["run", &scenario("df-node.json"), "--out", json.to_str().unwrap(), "--md", md.to_str().unwrap(), "--bound", "torMaxDeg=8"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["bounds"]["torMaxDeg"], 8);
    assert!(report["tasks"][0]["wallMs"].is_u64());
    let md = std::fs::read_to_string(&md).unwrap();
    assert!(md.contains("# df-node") && md.contains("- conclusion:"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_inputs_exit_with_one() {
    assert_eq!(torlab(&["run", "/nonexistent/scenario.json"]).status.code(), Some(1));
    let bad = torlab(&["run", &scenario("df-node.json"), "--bound", "nope=3"]);
    assert!(!bad.status.success());
    let dir = std::env::temp_dir().join(format!("torlab-bad-{}.json", std::process::id()));
    std::fs::write(&dir, "{\n  \"name\": 1\n}").unwrap();
    let out = torlab(&["run", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error at 2:"));
    std::fs::remove_file(&dir).unwrap();
}

#[test]
fn hypothesis_failure_exits_zero_and_mismatch_two() {
    // DF on a pair that is not Tor-independent has a failing hypothesis,
    // which is not a failure of the conclusion.
    let text = r#"{
        "name": "df-hyp",
        "ring": {"variables": ["x", "y"], "relations": ["x*y"]},
        "modules": {"M": {"quotient": ["x"]}, "N": {"quotient": ["x^2"]}},
        "tasks": [{"op": "audit", "args": {"theorem": "DF", "args": {"M": "M", "N": "N"}}}]
    }"#;
    let path = std::env::temp_dir().join(format!("torlab-df-{}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    let out = torlab(&["run", path.to_str().unwrap(), "--reproducible"]);
    assert_eq!(out.status.code(), Some(0));
    let mism = text.replace(r#"}}}]"#, r#"}}, "expect": {"outcome": "PASS"}}]"#);
    std::fs::write(&path, mism).unwrap();
    assert_eq!(torlab(&["run", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_file(&path).unwrap();
}
