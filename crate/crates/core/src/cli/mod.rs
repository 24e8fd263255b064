//! Batch front end: problem files in, check reports out.

pub mod commands;
pub mod problem;
pub mod report;

use thiserror::Error;

pub use commands::{run, Command, Options};
pub use problem::{Problem, ProblemFile};
pub use report::{Record, Report, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("cannot read {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid problem: {0}")]
    Invalid(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
}

/// Parses and resolves a problem file, then runs `cmd` on it.
pub fn run_source(cmd: Command, src: &str, opts: &Options) -> Result<Report, CliError> {
    let file = ProblemFile::parse(src)?;
    let problem = Problem::from_file(&file)?;
    run(cmd, &problem, opts)
}
