//! Command-line front end for the `fuzznorm` library.
//!
//! Exit codes: 0 pass, 1 fail, 2 inconclusive only, 3 usage error,
//! 4 internal invariant breach.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::Parser;

pub mod args;
pub mod commands;
pub mod spec;
pub mod table;

use args::{Cli, Command};

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "FUZZNORM_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Pass,
    Fail,
    Inconclusive,
    Usage,
    Invariant,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Pass => 0,
            ExitStatus::Fail => 1,
            ExitStatus::Inconclusive => 2,
            ExitStatus::Usage => 3,
            ExitStatus::Invariant => 4,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            ExitStatus::Pass => "pass",
            ExitStatus::Fail => "fail",
            ExitStatus::Inconclusive => "inconclusive",
            ExitStatus::Usage => "usage error",
            ExitStatus::Invariant => "internal invariant breach",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal invariant breach: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Usage(_) => ExitStatus::Usage,
            CliError::Invariant(_) => ExitStatus::Invariant,
        }
    }
}

impl From<fuzznorm::Error> for CliError {
    fn from(e: fuzznorm::Error) -> Self {
        use fuzznorm::Error;
        let innermost = match &e {
            Error::Cell { source, .. } => source.as_ref(),
            other => other,
        };
        match innermost {
            Error::CurveNotMonotone { .. } | Error::BracketExhausted { .. } => {
                CliError::Invariant(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(format!("i/o: {e}"))
    }
}

fn seed_override(env_seed: Option<&str>) -> Result<Option<u64>, CliError> {
    env_seed
        .map(|s| {
            s.trim().parse::<u64>().map_err(|_| {
                CliError::Usage(format!("{SEED_ENV} must be an unsigned integer, got {s:?}"))
            })
        })
        .transpose()
}

fn dispatch(
    cli: &Cli,
    env_seed: Option<&str>,
    out: &mut dyn Write,
) -> Result<ExitStatus, CliError> {
    let seed = seed_override(env_seed)?;
    match &cli.command {
        Command::Check(a) => commands::check(a, seed.unwrap_or(a.seed), out),
        Command::Decompose(a) => commands::decompose(a, out),
        Command::Curve(a) => commands::curve(a, out),
        Command::Converge(a) => commands::converge(a, out),
        Command::Roundtrip(a) => commands::roundtrip(a, seed.unwrap_or(a.seed), out),
    }
}

/// Parses `argv` and runs the command, writing normal output to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let info = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if info { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if info { 0 } else { ExitStatus::Usage.code() };
        }
    };
    match dispatch(&cli, env_seed, out) {
        Ok(status) => status.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.status().code()
        }
    }
}
