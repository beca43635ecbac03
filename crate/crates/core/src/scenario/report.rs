//! The run report: one entry per task in declaration order, plus a summary
//! and the process exit code.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::pairing::Bounds;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioInfo {
    pub name: String,
    pub description: String,
    /// SHA-256 of the scenario text, hex encoded.
    pub digest: String,
    pub ring: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskStatus {
    Ok,
    Error,
}

/// What a task contributes to the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TaskOutcome {
    Ok,
    Error,
    /// The result does not match the task's `expect` pattern.
    Mismatch,
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectResult {
    pub matched: bool,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TaskEntry {
    pub index: usize,
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub args: Map<String, Value>,
    pub bounds: Bounds,
    pub seed: u64,
    pub status: TaskStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<ExpectResult>,
    pub outcome: TaskOutcome,
    /// Omitted in reproducible runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Summary {
    pub total: usize,
    pub ok: usize,
    pub errors: usize,
    pub mismatches: usize,
    pub audit_pass: usize,
    pub audit_fail: usize,
    pub audit_inconclusive: usize,
    /// Tasks not run because `--fail-fast` stopped the run.
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub tool: ToolInfo,
    pub scenario: ScenarioInfo,
    pub seed: u64,
    pub bounds: Bounds,
    pub modules: IndexMap<String, Value>,
    pub tasks: Vec<TaskEntry>,
    pub summary: Summary,
    pub exit_code: i32,
}

impl Summary {
    pub fn of(tasks: &[TaskEntry], skipped: usize) -> Self {
        let mut s = Summary { total: tasks.len() + skipped, skipped, ..Default::default() };
        for t in tasks {
            match t.outcome {
                TaskOutcome::Ok => s.ok += 1,
                TaskOutcome::Error => s.errors += 1,
                TaskOutcome::Mismatch => s.mismatches += 1,
                TaskOutcome::Pass => s.audit_pass += 1,
                TaskOutcome::Fail => s.audit_fail += 1,
                TaskOutcome::Inconclusive => s.audit_inconclusive += 1,
            }
        }
        s
    }
}

/// 1 on any execution error, else 2 on any audit FAIL or expectation
/// mismatch, else 0. Inconclusive audits, including failed hypotheses, exit 0.
pub fn exit_code(tasks: &[TaskEntry]) -> i32 {
    if tasks.iter().any(|t| t.outcome == TaskOutcome::Error) {
        1
    } else if tasks.iter().any(|t| matches!(t.outcome, TaskOutcome::Fail | TaskOutcome::Mismatch)) {
        2
    } else {
        0
    }
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
