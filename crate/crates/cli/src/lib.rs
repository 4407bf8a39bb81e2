//! Library side of the `icpi` command-line tool.

pub mod args;
pub mod cache;
mod commands;
pub mod labels;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use thiserror::Error;

use icpi_core::GroupError;

pub use commands::{
    CheckOutput, CorpusEntry, InfoReport, PrimeSubgroup, SubgroupSummary, VerifyOutput,
};

pub const EXIT_CLEAN: u8 = 0;
pub const EXIT_COUNTEREXAMPLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Engine(#[from] GroupError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

fn diagnostic(e: &CliError) -> String {
    match e {
        CliError::Engine(GroupError::Capacity { what, .. }) => {
            let flag = match *what {
                w if w.contains("subgroup") => " (raise with --subgroup-bound)",
                w if w.contains("enumeration") || w.contains("quotient") => {
                    " (raise with --enumeration-bound)"
                }
                _ => "",
            };
            format!("error: {e}{flag}")
        }
        _ => format!("error: {e}"),
    }
}

/// Runs the tool on `argv` (including the program name), writing the report
/// to stdout or the output file and diagnostics to stderr. Returns the exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_CLEAN
            };
        }
    };
    let mut stdout = std::io::stdout().lock();
    match commands::execute(&cli, &mut stdout) {
        Ok(code) => {
            let _ = stdout.flush();
            code
        }
        Err(e) => {
            let _ = stdout.flush();
            eprintln!("{}", diagnostic(&e));
            EXIT_USAGE
        }
    }
}
