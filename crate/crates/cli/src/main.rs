use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod inputs;

use args::{Cli, OutputFormat};
use leavitt_core::report::Status;

/// Exit statuses beyond the report verdicts.
pub mod exit {
    pub const FAIL: u8 = 1;
    pub const UNDETERMINED: u8 = 2;
    pub const USAGE: u8 = 64;
    pub const DATA: u8 = 65;
    pub const NO_INPUT: u8 = 66;
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: exit::USAGE,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        CliError {
            code: exit::DATA,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdin = if cli.needs_stdin() {
        let mut s = String::new();
        if let Err(e) = io::stdin().read_to_string(&mut s) {
            eprintln!("error: cannot read standard input: {e}");
            return ExitCode::from(exit::NO_INPUT);
        }
        s
    } else {
        String::new()
    };
    match commands::run(&cli, &stdin) {
        Ok(output) => {
            let mut out = io::stdout().lock();
            for r in &output.reports {
                let rendered = match cli.output {
                    OutputFormat::Json => serde_json::to_string(r).expect("reports serialize") + "\n",
                    OutputFormat::Text if output.plain => format!("{}\n", r.result.as_deref().unwrap_or("")),
                    OutputFormat::Text => r.to_string(),
                };
                if out.write_all(rendered.as_bytes()).is_err() {
                    return ExitCode::from(exit::NO_INPUT);
                }
            }
            let worst = output.reports.iter().map(|r| r.status).fold(Status::Pass, |acc, s| match (acc, s) {
                (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
                (Status::Undetermined, _) | (_, Status::Undetermined) => Status::Undetermined,
                _ => Status::Pass,
            });
            ExitCode::from(match worst {
                Status::Pass => 0,
                Status::Fail => exit::FAIL,
                Status::Undetermined => exit::UNDETERMINED,
            })
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
