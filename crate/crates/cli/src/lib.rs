//! Front end for `prymlat`. [`run`] takes the arguments and the three streams
//! so the whole tool can be driven from tests without spawning processes.

pub mod args;
mod commands;
mod render;
mod sweep;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::Value;

use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// How a command ended, mapped onto the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Status {
    Ok,
    Failed,
    /// Hypotheses not met or out of scope: nothing was verified.
    Inapplicable,
}

impl Status {
    fn code(self) -> i32 {
        match self {
            Status::Ok => EXIT_OK,
            Status::Failed => EXIT_FAILED,
            Status::Inapplicable => EXIT_INPUT,
        }
    }

    pub(crate) fn of(v: prymlat::report::Verdict) -> Status {
        use prymlat::report::Verdict::*;
        match v {
            Verified => Status::Ok,
            Failed => Status::Failed,
            HypothesesNotMet | OutOfScope => Status::Inapplicable,
        }
    }

    /// Worst of two statuses: a failure beats an inapplicable input.
    pub(crate) fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Failed, _) | (_, Status::Failed) => Status::Failed,
            (Status::Inapplicable, _) | (_, Status::Inapplicable) => Status::Inapplicable,
            _ => Status::Ok,
        }
    }
}

/// A finished command: the machine report, an optional text override, and the status.
pub(crate) struct Outcome {
    pub value: Value,
    pub text: Option<String>,
    /// Print `value` as JSON even without `--json` (file-format outputs).
    pub always_json: bool,
    pub status: Status,
}

impl Outcome {
    pub(crate) fn report(value: Value, status: Status) -> Outcome {
        Outcome {
            value,
            text: None,
            always_json: false,
            status,
        }
    }

    pub(crate) fn with_text(mut self, text: impl Into<String>) -> Outcome {
        self.text = Some(text.into());
        self
    }

    pub(crate) fn file(value: Value) -> Outcome {
        Outcome {
            value,
            text: None,
            always_json: true,
            status: Status::Ok,
        }
    }
}

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Io(String),
    Lib(prymlat::Error),
}

impl From<prymlat::Error> for CliError {
    fn from(e: prymlat::Error) -> Self {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Io(s) => f.write_str(s),
            CliError::Lib(e) => write!(f, "{}", e),
        }
    }
}

pub(crate) type CliResult<T> = std::result::Result<T, CliError>;

/// Runs one invocation; `argv[0]` is the program name. Returns the exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", text);
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", text);
                    EXIT_INPUT
                }
            };
        }
    };
    match commands::dispatch(&cli.command, stdin) {
        Ok(outcome) => {
            let body = if cli.json || outcome.always_json {
                serde_json::to_string_pretty(&outcome.value).expect("reports serialize") + "\n"
            } else {
                match outcome.text {
                    Some(t) if t.ends_with('\n') => t,
                    Some(t) => t + "\n",
                    None => render::render(&outcome.value),
                }
            };
            if out.write_all(body.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            outcome.status.code()
        }
        Err(e) => {
            let _ = writeln!(err, "prymlat: {}", e);
            if let CliError::Usage(_) = e {
                let _ = writeln!(err, "run `prymlat --help` for usage");
            }
            EXIT_INPUT
        }
    }
}
