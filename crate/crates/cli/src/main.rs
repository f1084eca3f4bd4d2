use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

mod commands;
mod config;

use config::{Cli, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Math(#[from] campana::Error),
}

impl CliError {
    /// A library error caused by malformed user input rather than a
    /// failed mathematical precondition.
    fn input(what: &str, e: campana::Error) -> CliError {
        use campana::Error::*;
        match e {
            Parse { .. } | InvalidMultiplicity(_) | DuplicateLabel(_) | DimensionMismatch { .. } | InvalidArgument(_) => {
                CliError::Config(format!("{what}: {e}"))
            }
            other => CliError::Math(other),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Math(_) => 3,
        }
    }
}

fn execute(config: &RunConfig) -> Result<commands::Output, CliError> {
    match config.workers {
        None => commands::run(config),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(format!("cannot start {n} workers: {e}")))?
            .install(|| commands::run(config)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::resolve(cli).and_then(|config| execute(&config));
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("campana: {e}");
                    return ExitCode::FAILURE;
                }
            }
            if out.flagged > 0 {
                eprintln!("campana: {} ray(s) outside every cone", out.flagged);
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("campana: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
