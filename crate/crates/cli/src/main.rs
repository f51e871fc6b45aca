use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use crystal_cli::args::Cli;
use crystal_cli::error::EXIT_USAGE;
use crystal_cli::{exit_code, run};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let (report, outcome) = run(&cli);
    if let Some(v) = report {
        // a closed pipe (`| head`) is not an error worth reporting
        let text = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
        let _ = writeln!(std::io::stdout().lock(), "{text}");
    }
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
