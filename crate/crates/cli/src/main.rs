use std::process::ExitCode;

use clap::Parser;
use tracecode_cli::{exit_code, run, Cli, EXIT_MISMATCH};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("tracecode: one or more checks failed; see the report");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(err) => {
            eprintln!("tracecode: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
