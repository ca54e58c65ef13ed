use serde::Serialize;
use serde_json::{Map, Value};

use crate::checkers::{Mode, Outcome, SearchConfig, Verdict};

pub const TOOL: &str = "lpi";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The JSON record printed by every command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub argv: Vec<String>,
    pub config: SearchConfig,
    pub algebra: Option<String>,
    pub expression: Option<String>,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub evaluations: u64,
    pub elapsed_ms: u64,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub details: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, argv: &[String], config: SearchConfig, verdict: Verdict) -> Self {
        Report {
            tool: TOOL,
            version: VERSION,
            command: command.to_string(),
            argv: argv.to_vec(),
            config,
            algebra: None,
            expression: None,
            mode: verdict.stats.mode,
            seed: verdict.stats.seed,
            evaluations: verdict.stats.evaluations,
            elapsed_ms: verdict.stats.elapsed_ms,
            outcome: verdict.outcome,
            witness: verdict.witness,
            details: verdict.details,
        }
    }

    pub fn algebra(mut self, a: impl ToString) -> Self {
        self.algebra = Some(a.to_string());
        self
    }

    pub fn expression(mut self, e: impl ToString) -> Self {
        self.expression = Some(e.to_string());
        self
    }

    /// 0 for holds, 1 for a counterexample, 2 when inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            Outcome::Holds => 0,
            Outcome::Counterexample => 1,
            Outcome::Inconclusive => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// The report with timing fields removed, for replay comparisons.
    pub fn without_timing(&self) -> Value {
        let mut v = self.to_json();
        v.as_object_mut().expect("object").remove("elapsed_ms");
        v
    }
}
