//! `evosim` — run Monte Carlo campaigns, parameter sweeps and exact
//! lattice analyses of the SSWM and (1+1) EA processes from the shell.
//!
//! Verbs: `run`, `sweep`, `exact`, `drift`, `verify`. Every command echoes
//! its fully resolved configuration as one JSON line on stderr; feeding that
//! line back via `--config` reproduces the output. Exit codes: 0 success,
//! 1 usage error, 2 verification failure, 3 runtime/numerical error.

mod commands;
mod output;
mod spec;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "evosim",
    about = "SSWM vs (1+1) EA: Monte Carlo campaigns and exact lattice analysis",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run seeded trials of one configuration and summarize them.
    Run(commands::RunArgs),
    /// Run the Cartesian product of a sweep specification.
    Sweep(commands::SweepArgs),
    /// Exact hitting-time and drift table from the ones-count lattice.
    Exact(commands::ExactArgs),
    /// Drift profile plus drift-bound and negative-drift condition checks.
    Drift(commands::DriftArgs),
    /// Run the analytic property suites and exit nonzero on any failure.
    Verify(commands::VerifyArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Keep clap's rendering but remap its exit code: help/version are
            // successes, everything else is a usage error.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let outcome = match cli.command {
        Command::Run(args) => commands::run(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Exact(args) => commands::exact(args),
        Command::Drift(args) => commands::drift(args),
        Command::Verify(args) => commands::verify(args),
    };

    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// CLI-level failure with the exit class it maps to.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Runtime(msg) => f.write_str(msg),
        }
    }
}

impl From<evosim_core::Error> for CliError {
    fn from(e: evosim_core::Error) -> Self {
        match e {
            evosim_core::Error::InvalidParameter { .. }
            | evosim_core::Error::BudgetExpr(_)
            | evosim_core::Error::EmptyInput(_) => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("config file: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
