//! Scenario runner, acceptance suites and report writers behind the `pertdet` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod report;
pub mod runner;
pub mod suites;

use thiserror::Error;

/// Failures of a run, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical blow-up after t = {last_good_time}")]
    BlowUp { last_good_time: f64 },
    #[error(transparent)]
    Numeric(pertdet::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<pertdet::Error> for RunError {
    fn from(e: pertdet::Error) -> Self {
        match e {
            pertdet::Error::Config(m) => RunError::Config(m),
            pertdet::Error::BlowUp { last_good_time } => RunError::BlowUp { last_good_time },
            other => RunError::Numeric(other),
        }
    }
}

impl From<csv::Error> for RunError {
    fn from(e: csv::Error) -> Self {
        RunError::Io(std::io::Error::other(e))
    }
}

impl From<serde_json::Error> for RunError {
    fn from(e: serde_json::Error) -> Self {
        RunError::Io(std::io::Error::other(e))
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BLOW_UP: i32 = 3;
/// Output files could not be written.
pub const EXIT_IO: i32 = 4;

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => EXIT_CONFIG,
            RunError::BlowUp { .. } => EXIT_BLOW_UP,
            // a broken invariant of the integrator is a numerical failure
            RunError::Numeric(pertdet::Error::Consistency(_)) => EXIT_BLOW_UP,
            // divergent series, inadmissible kappa: the configured parameters are out of range
            RunError::Numeric(_) => EXIT_CONFIG,
            RunError::Io(_) => EXIT_IO,
        }
    }
}
