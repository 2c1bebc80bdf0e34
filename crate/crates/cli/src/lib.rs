//! Library side of the `cmforge` command-line tool: JSON schemas, the
//! subcommands as pure functions from parsed inputs to JSON reports, and
//! the seeded randomized suites.

pub mod commands;
pub mod json;
pub mod suite;

use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Input that does not parse against the schemas, or bad options.
    #[error("schema violation: {0}")]
    Schema(String),
    /// Well-formed input that violates a precondition; `report` carries
    /// the evidence, such as failing relation residuals.
    #[error("precondition failure: {message}")]
    Precondition { message: String, report: Option<Value> },
    /// A postcondition of the library itself failed.
    #[error("internal invariant breach: {0}")]
    Internal(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn precondition(message: impl Into<String>) -> Self {
        CliError::Precondition { message: message.into(), report: None }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) | CliError::Io { .. } => 1,
            CliError::Precondition { .. } => 2,
            CliError::Internal(_) => 3,
        }
    }

    /// The machine-readable error report.
    pub fn report(&self) -> Value {
        let kind = match self {
            CliError::Schema(_) => "schema",
            CliError::Io { .. } => "io",
            CliError::Precondition { .. } => "precondition",
            CliError::Internal(_) => "internal",
        };
        let mut v = json!({"error": {"kind": kind, "message": self.to_string()}});
        if let CliError::Precondition { report: Some(r), .. } = self {
            v["error"]["report"] = r.clone();
        }
        v
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
