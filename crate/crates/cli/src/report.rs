use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

/// What a verb hands back before timing and output routing are applied.
pub struct Outcome {
    residuals: BTreeMap<String, f64>,
    thresholds: BTreeMap<String, f64>,
    verdict: bool,
    result: Value,
}

impl Outcome {
    pub fn new(result: impl Serialize) -> Self {
        Outcome {
            residuals: BTreeMap::new(),
            thresholds: BTreeMap::new(),
            verdict: true,
            result: serde_json::to_value(result).expect("result serializes"),
        }
    }

    /// Records `value` held to `bound`.
    pub fn check(mut self, name: &str, value: f64, bound: f64) -> Self {
        self.residuals.insert(name.to_string(), value);
        self.thresholds.insert(name.to_string(), bound);
        self
    }

    /// Records a value with no bound attached.
    pub fn info(mut self, name: &str, value: f64) -> Self {
        self.residuals.insert(name.to_string(), value);
        self
    }

    /// A yes/no answer that is not a residual (a predicate came out false).
    pub fn verdict(mut self, ok: bool) -> Self {
        self.verdict = self.verdict && ok;
        self
    }

    pub fn pass(&self) -> bool {
        self.verdict
            && self
                .thresholds
                .iter()
                .all(|(k, &b)| self.residuals.get(k).is_some_and(|&v| v <= b))
    }
}

#[derive(Debug, Serialize)]
pub struct CommandReport {
    pub verb: String,
    pub pass: bool,
    pub residuals: BTreeMap<String, f64>,
    pub thresholds: BTreeMap<String, f64>,
    pub artifacts: Vec<String>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CommandReport {
    pub fn from_outcome(verb: String, o: Outcome, elapsed_ms: u64) -> Self {
        let pass = o.pass();
        CommandReport {
            verb,
            pass,
            residuals: o.residuals,
            thresholds: o.thresholds,
            artifacts: Vec::new(),
            elapsed_ms,
            result: Some(o.result),
            error: None,
        }
    }

    pub fn failed(verb: String, err: &CliError, elapsed_ms: u64) -> Self {
        CommandReport {
            verb,
            pass: false,
            residuals: BTreeMap::new(),
            thresholds: BTreeMap::new(),
            artifacts: Vec::new(),
            elapsed_ms,
            result: None,
            error: Some(err.to_string()),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(frcalc_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_usage() => 2,
            CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<frcalc_core::Error> for CliError {
    fn from(e: frcalc_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
