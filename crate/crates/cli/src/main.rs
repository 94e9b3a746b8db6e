use std::process::ExitCode;

use churn_cli::{commands, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command, cli.format) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
