//! `dp1`: command-line front end for the dp1-core laboratory.
//!
//! Every data-producing subcommand writes a CSV table (to `--out` or stdout)
//! and, with `--out`, a JSON sidecar `<out>.json` echoing the configuration.
//! Exit status: 0 on success, 2 for configuration errors, 3 for numeric
//! failures such as an unexpected singular step.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use config::Cli;

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(String),
}

impl From<dp1_core::Error> for CliError {
    fn from(e: dp1_core::Error) -> Self {
        use dp1_core::Error::*;
        match e {
            InvalidParams(_) | Parse(_) | Io(_) | InsufficientLength { .. } | NotGenuine => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("dp1: configuration error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("dp1: numeric error: {msg}");
            ExitCode::from(3)
        }
    }
}
