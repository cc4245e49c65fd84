//! `vvol`: exact volumes of strata of meromorphic differentials.
//!
//! Exit status: 0 on success, 1 on usage or domain errors, 2 when an
//! invariant fails (including a failing `check`).

mod cache;
mod commands;
mod config;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use vvol_core::Error;

use commands::Command;

#[derive(Parser, Debug)]
#[command(name = "vvol", version, about = "Exact virtual volumes of strata with residue conditions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match cli.command.run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Invariant(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
