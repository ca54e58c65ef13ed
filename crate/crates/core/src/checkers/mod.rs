//! Verification engines. Every search returns a [`Verdict`].

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::group_algebra::GroupAlgebraError;
use crate::matrix::{MatrixError, DEFAULT_CAP};
use crate::quotient::QuotientError;
use crate::rings::RingError;

mod annihilator;
mod diagnostics;
mod identity;
mod nil;
pub mod reverify;
mod search;

pub use annihilator::{bounds_from_d, finite_annihilator, infinite_counterexample, Annihilator, Bounds, SquareZeroPair};
pub use diagnostics::{idempotent_centrality, quotient_pi_check, s3_expand, s3_reference_formula, S3Comparison, S3Row};
pub use identity::{al_verify, check_group_identity, check_lpi, GroundSet};
pub use nil::{
    minimal_polynomial, nil_exponent_search, square_zero_nilpotency, vandermonde_nil, NilSearch, VandermondeReport,
};

/// Default number of random samples.
pub const DEFAULT_BUDGET: u64 = 1000;
/// Rejection-sampling retries per unit draw.
pub const UNIT_RETRIES: u32 = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckerError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    GroupAlgebra(#[from] GroupAlgebraError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error("{0}")]
    Invalid(String),
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Random => "random",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "random" => Ok(Mode::Random),
            other => Err(format!("unknown mode {other:?} (expected exhaustive or random)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Counterexample,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Holds => "holds",
            Outcome::Counterexample => "counterexample",
            Outcome::Inconclusive => "inconclusive",
        })
    }
}

/// Search parameters shared by all checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub mode: Mode,
    pub budget: u64,
    pub cap: u64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            mode: Mode::Exhaustive,
            budget: DEFAULT_BUDGET,
            cap: DEFAULT_CAP,
            seed: 0,
            workers: 1,
        }
    }
}

impl SearchConfig {
    pub fn exhaustive() -> Self {
        Self::default()
    }

    pub fn random(seed: u64, budget: u64) -> Self {
        SearchConfig {
            mode: Mode::Random,
            budget,
            seed,
            ..Self::default()
        }
    }

    pub fn with_workers(self, workers: usize) -> Self {
        SearchConfig { workers, ..self }
    }

    pub fn with_cap(self, cap: u64) -> Self {
        SearchConfig { cap, ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stats {
    pub evaluations: u64,
    pub mode: Mode,
    /// Present for random searches.
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub stats: Stats,
    pub details: Map<String, Value>,
}

impl Verdict {
    pub(crate) fn new(outcome: Outcome, cfg: &SearchConfig, evaluations: u64, started: Instant) -> Self {
        Verdict {
            outcome,
            witness: None,
            stats: Stats {
                evaluations,
                mode: cfg.mode,
                seed: (cfg.mode == Mode::Random).then_some(cfg.seed),
                elapsed_ms: started.elapsed().as_millis() as u64,
            },
            details: Map::new(),
        }
    }

    pub(crate) fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    pub(crate) fn detail(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), v.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }
}
