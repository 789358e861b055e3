use std::process::ExitCode;

use clap::Parser;

mod commands;
mod config;
mod output;
mod verify;

use commands::Command;
use config::{CommonArgs, RunConfig, UsageError};

/// Relative spectral functions, partition functions and Casimir forces for
/// point interactions.
#[derive(Debug, Parser)]
#[command(name = "relspec", version, about)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

const EXIT_FAILED_CHECKS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<relspec::Error>() {
        return if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE };
    }
    if err.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    1
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let cfg = RunConfig::resolve(&cli.common)?;
    if let Command::Verify(args) = &cli.command {
        return verify::execute(args, &cfg);
    }
    let table = commands::run(&cli.command, &cfg)?;
    output::emit(cfg.out.as_deref(), |w| table.write(cfg.format, w))?;
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED_CHECKS),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
