mod args;
mod commands;
mod input;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    /// A simulated run ended FAILED, or `fmt --check` found work to do.
    Failed = 1,
    Findings = 2,
    Input = 3,
    Io = 4,
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { status: Status::Input, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Failure { status: Status::Io, message: message.into() }
    }
}

fn dispatch(cli: Cli) -> Result<Status, Failure> {
    match cli.command {
        Command::Validate { intent, mappings } => commands::cmd_validate(&intent, &mappings),
        Command::Compile { intent, mappings, template, device, output } => {
            commands::cmd_compile(&intent, &mappings, template.as_deref(), &device, output.as_deref())
        }
        Command::Run { intent, mappings, app_models, report_dir, report_format } => {
            commands::cmd_run(&intent, &mappings, &app_models, report_dir.as_deref(), report_format)
        }
        Command::Fmt { intent, check } => commands::cmd_fmt(&intent, check),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Input as u8 } else { Status::Ok as u8 });
        }
    };
    let status = dispatch(cli).unwrap_or_else(|failure| {
        eprintln!("error: {}", failure.message);
        failure.status
    });
    ExitCode::from(status as u8)
}
