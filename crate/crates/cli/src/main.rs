mod analyze;
mod cli;
mod config;
mod output;
mod phase_file;
mod reproduce;

use std::process::ExitCode;

use clap::Parser;

use crate::cli::{Cli, Command};

/// Exit status when a reproduction or construction check fails.
const EXIT_CHECK_FAILED: u8 = 1;
/// Exit status for invalid input or I/O failure.
const EXIT_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Reproduce { target, panel, opts } => reproduce::run(*target, *panel, opts),
        Command::Analyze { what, opts } => analyze::run(*what, opts),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
