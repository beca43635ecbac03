//! Scenario files: a ring, named module constructors and a task list, run
//! into a deterministic JSON report.

pub mod expect;
pub mod markdown;
pub mod ops;
pub mod report;
pub mod runner;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub use report::{RunReport, TaskEntry};
pub use runner::{run_scenario, RunOptions};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub ring: RingDecl,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub bounds: IndexMap<String, usize>,
    #[serde(default)]
    pub modules: IndexMap<String, ModuleDecl>,
    #[serde(default)]
    pub tasks: Vec<TaskDecl>,
}

fn default_characteristic() -> u64 {
    32003
}

/// Characteristic 0 selects the rationals; otherwise a prime field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDecl {
    #[serde(default = "default_characteristic")]
    pub characteristic: u64,
    pub variables: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

/// Module constructors. Presentation matrices are row-major with one row
/// per generator and one column per relation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub enum ModuleDecl {
    /// `R/(g_1..g_k)`.
    Quotient(Vec<String>),
    Presentation { degrees: Vec<i32>, matrix: Vec<Vec<String>> },
    Free(Vec<i32>),
    /// The Koszul syzygy module of a regular sequence.
    Koszul(Vec<String>),
    /// The `k`-th syzygy module over the ring.
    Syzygy { of: String, k: usize },
    Pushforward(String),
    TensorPower { of: String, n: usize },
    /// Lives over the previous stage of the ring's tower.
    QuasiLift(String),
    DirectSum(Vec<String>),
    Tensor(Vec<String>),
    Dual(String),
    /// `M(a)`: generator degrees lowered by `a`.
    Twist { of: String, by: i32 },
    TorsionSubmodule(String),
    TorsionFree(String),
}

impl ModuleDecl {
    /// Names of the modules this constructor refers to.
    pub fn deps(&self) -> Vec<&str> {
        match self {
            ModuleDecl::Quotient(_) | ModuleDecl::Presentation { .. } | ModuleDecl::Free(_) | ModuleDecl::Koszul(_) => vec![],
            ModuleDecl::Syzygy { of, .. } | ModuleDecl::TensorPower { of, .. } | ModuleDecl::Twist { of, .. } => vec![of],
            ModuleDecl::Pushforward(m)
            | ModuleDecl::QuasiLift(m)
            | ModuleDecl::Dual(m)
            | ModuleDecl::TorsionSubmodule(m)
            | ModuleDecl::TorsionFree(m) => vec![m],
            ModuleDecl::DirectSum(ms) | ModuleDecl::Tensor(ms) => ms.iter().map(|s| s.as_str()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskDecl {
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub args: Map<String, Value>,
    #[serde(default)]
    pub bounds: IndexMap<String, usize>,
    /// Subset of the result that must match.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Value>,
}

impl Scenario {
    /// Parse scenario text; syntax and schema errors carry line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
        s.validate()?;
        Ok(s)
    }

    /// Unique names, known references and acyclic constructors.
    pub fn validate(&self) -> Result<()> {
        for (name, decl) in &self.modules {
            for d in decl.deps() {
                if !self.modules.contains_key(d) {
                    return Err(Error::Invalid(format!("module `{name}` refers to undeclared module `{d}`")));
                }
            }
        }
        self.construction_order()?;
        Ok(())
    }

    /// Module names in an order where every constructor follows its inputs;
    /// ties keep declaration order.
    pub fn construction_order(&self) -> Result<Vec<String>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        fn visit(s: &Scenario, name: &str, marks: &mut IndexMap<String, Mark>, out: &mut Vec<String>) -> Result<()> {
            match marks[name] {
                Mark::Done => return Ok(()),
                Mark::Active => return Err(Error::Invalid(format!("module constructors form a cycle through `{name}`"))),
                Mark::New => {}
            }
            marks[name] = Mark::Active;
            for d in s.modules[name].deps() {
                visit(s, d, marks, out)?;
            }
            marks[name] = Mark::Done;
            out.push(name.to_string());
            Ok(())
        }
        let mut marks: IndexMap<String, Mark> = self.modules.keys().map(|k| (k.clone(), Mark::New)).collect();
        let mut out = Vec::new();
        for name in self.modules.keys() {
            visit(self, name, &mut marks, &mut out)?;
        }
        Ok(out)
    }
}
