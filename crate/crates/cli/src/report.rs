use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// Machine-readable envelope printed under `--json`.
///
/// Everything except `timings_ms` is a deterministic function of the
/// command line and its input files.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub field: Option<String>,
    pub inputs: Value,
    pub results: Value,
    pub timings_ms: BTreeMap<String, f64>,
    pub version: &'static str,
}

/// Named wall-clock phases of one command.
#[derive(Debug, Default)]
pub struct Timings(BTreeMap<String, f64>);

impl Timings {
    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        *self.0.entry(phase.to_string()).or_default() += ms;
        out
    }

    pub fn into_inner(self) -> BTreeMap<String, f64> {
        self.0
    }
}

/// A failed command: message for stderr plus the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_CONDITION: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<triplebent::Error> for Failure {
    fn from(e: triplebent::Error) -> Self {
        let code = if e.is_condition_violation() {
            EXIT_CONDITION
        } else if e.is_resource_limit() {
            EXIT_RESOURCE
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(format!("io error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::usage(format!("invalid JSON: {e}"))
    }
}
