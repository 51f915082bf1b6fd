mod args;
mod commands;
mod demos;
mod io;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use crate::args::Cli;
use crate::commands::{run, Output};

fn report_error(kind: &str, message: &str, code: u8) -> ExitCode {
    let line = json!({ "error": kind, "message": message });
    eprintln!("{line}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let message = text.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            return report_error("Usage", message, 2);
        }
    };
    let outcome = match run(&cli) {
        Ok(outcome) => outcome,
        Err(e) => return report_error(e.kind(), &e.to_string(), e.exit_code()),
    };
    let text = match outcome.output {
        Output::Json(value) => {
            let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Output::Csv(s) => s,
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
