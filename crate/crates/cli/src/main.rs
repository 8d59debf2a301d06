//! `xkraw`: build classical and exceptional Krawtchouk polynomials and verify
//! their identities in exact arithmetic.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("xkraw: {e}");
            ExitCode::from(2)
        }
    }
}
