//! `prepdyn`: JSON front end to the prepdyn library.

mod args;
mod commands;
mod manifest;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use prepdyn::Error;

use args::Cli;

/// Prints pretty JSON; a closed pipe is not an error.
fn emit(value: &serde_json::Value) {
    let text = serde_json::to_string_pretty(value).expect("json");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print_error(e: &Error) -> ExitCode {
    let kind = match e {
        Error::Input(_) => "input",
        Error::Parse { .. } => "parse",
        Error::Validation(_) => "validation",
        Error::Precondition(_) => "precondition",
        Error::Resource(_) => "resource",
        Error::MixedRadicand(..) => "mixed_radicand",
    };
    emit(&serde_json::json!({ "error": kind, "message": e.to_string() }));
    eprintln!("prepdyn: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors exit 2, help and version exit 0
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let started = Instant::now();
    let cli = match &cli.replay {
        Some(path) => match manifest::load(path) {
            Ok(replayed) => replayed,
            Err(e) => return print_error(&e),
        },
        None => cli,
    };
    let Some(command) = &cli.command else {
        return print_error(&Error::input("a subcommand or --replay is required"));
    };
    let caps = cli.caps.to_caps();
    let result = commands::run(command, &caps);
    if let Some(path) = &cli.manifest {
        if let Err(e) = manifest::write(path, &argv, command, &caps, started.elapsed()) {
            return print_error(&e);
        }
    }
    match result {
        Ok(value) => {
            emit(&value);
            ExitCode::SUCCESS
        }
        Err(e) => print_error(&e),
    }
}
