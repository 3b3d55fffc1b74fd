//! Library half of the `crooked` binary: scene files, deterministic report
//! rendering, and the command implementations. Kept as a library so
//! integration tests can drive commands in-process and only spawn the binary
//! where the process boundary itself (exit codes, stdout bytes) is under
//! test.

pub mod commands;
pub mod report;
pub mod scene;

pub use commands::{CliError, CmdOutput};
