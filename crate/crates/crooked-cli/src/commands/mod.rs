//! Command implementations. Each command builds its entire stdout as a
//! string and reports a process exit code, which keeps the logic testable
//! without spawning the binary.
//!
//! Exit codes: 0 success/agreement, 2 invalid scene or arguments, 3 method
//! disagreement, 4 verification failure, 5 non-disjoint calibration input,
//! 6 axis-aligned calibration input (the axis foliation is emitted instead).

pub mod calibrate;
pub mod classify;
pub mod disjoint;
pub mod foliate;
pub mod repro;
pub mod verify;

use thiserror::Error;

#[derive(Debug)]
pub struct CmdOutput {
    pub stdout: String,
    pub code: u8,
}

impl CmdOutput {
    pub fn ok(stdout: String) -> CmdOutput {
        CmdOutput { stdout, code: 0 }
    }

    pub fn with_code(stdout: String, code: u8) -> CmdOutput {
        CmdOutput { stdout, code }
    }
}

/// Errors that abort a command before it can produce a report. Domain
/// outcomes (disagreement, failed verification, …) are not errors; they are
/// reports with nonzero exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Scene(#[from] crate::scene::SceneError),
    #[error("unknown crooked plane `{0}`")]
    UnknownPlane(String),
    #[error("unknown foliation spec `{0}`")]
    UnknownSpec(String),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot write `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Oracle(#[from] crooked_core::OracleError),
    #[error(transparent)]
    Crooked(#[from] crooked_core::CrookedError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Scene(crate::scene::SceneError::Io { .. }) => 1,
            _ => 2,
        }
    }
}
