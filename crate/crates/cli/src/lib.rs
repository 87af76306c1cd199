//! Command-line front end: argument types, report builders and exit codes.

pub mod args;
pub mod commands;

use std::io::Write;

use anyhow::Result;
use serde::Serialize;

pub use args::{AnalyzeArgs, Cli, CodeArgs, Command, DualArgs, ExportArgs, Format, MethodArg, VerifyArgs};
pub use commands::{analyze, build_code, dual, export, verify, AnalyzeReport, DualReport, VerifyReport};

pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_IO: u8 = 4;

/// Exit code for a failed run: budget refusals, mathematical failures and
/// bad parameters are kept apart.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    use tracecode::Error as E;
    match err.downcast_ref::<E>() {
        Some(E::BudgetExceeded { .. }) => EXIT_BUDGET,
        Some(E::ConstancyViolation { .. }) => EXIT_MISMATCH,
        Some(E::Io(_) | E::Json(_)) => EXIT_IO,
        Some(_) => EXIT_INVALID,
        None if err.downcast_ref::<std::io::Error>().is_some() => EXIT_IO,
        None => EXIT_INVALID,
    }
}

/// A rendered report and whether every executed check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv(report: &AnalyzeReport) -> String {
    let mut out = String::from("weight,frequency\n");
    for row in &report.rows {
        out.push_str(&format!("{},{}\n", row.weight, row.frequency));
    }
    out
}

pub fn execute(command: &Command) -> Result<Outcome> {
    Ok(match command {
        Command::Analyze(a) => {
            let report = analyze(a)?;
            let text = match a.format {
                Format::Json => json(&report)?,
                Format::Csv => csv(&report),
            };
            Outcome { text, passed: report.passed }
        }
        Command::Dual(a) => {
            let report = dual(a)?;
            Outcome { text: json(&report)?, passed: report.passed }
        }
        Command::Verify(a) => {
            let report = verify(a)?;
            Outcome { text: json(&report)?, passed: report.passed }
        }
        Command::Export(a) => Outcome { text: json(&export(a)?)?, passed: true },
    })
}

/// Runs the parsed command on a pool of the requested size and writes the
/// report to its destination.
pub fn run(cli: &Cli) -> Result<bool> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let outcome = pool.build()?.install(|| execute(&cli.command))?;
    let output = match &cli.command {
        Command::Analyze(a) => a.code.output.as_ref(),
        Command::Dual(a) => a.code.output.as_ref(),
        Command::Verify(a) => a.code.output.as_ref(),
        Command::Export(_) => None,
    };
    match output {
        Some(path) => std::fs::write(path, &outcome.text)?,
        None => std::io::stdout().write_all(outcome.text.as_bytes())?,
    }
    Ok(outcome.passed)
}
