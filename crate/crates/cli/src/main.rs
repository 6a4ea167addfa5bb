// SPDX-License-Identifier: Apache-2.0

//! `qwalk`: parameter sweeps, register reports and oracle validation.

mod args;
mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qwalk: {e}");
            e.exit_code()
        }
    }
}
