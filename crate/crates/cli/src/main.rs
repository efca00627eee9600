//! `truthcoupling`: runs a scenario and writes the resulting table as CSV.
//!
//! Exit codes: 0 on success, 1 for configuration, input or output problems,
//! 2 when the models reject the parameters.

mod commands;
mod config;
mod error;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::ScenarioConfig;
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "truthcoupling", version, about = "Verification-scarcity models: sweeps, simulations and estimators")]
struct Cli {
    /// JSON scenario file; every block is optional.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Overrides `base_seed` from the config.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,

    /// Overrides `output_path`; stdout when neither is set.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Truth-coupling over a (pressure, noise ratio) grid plus contour rows.
    Phase,
    /// Optimal truth effort against the proxy incentive.
    Collapse,
    /// Monte Carlo truth-coupling against the closed form.
    Simulate,
    /// Best-of-K Pareto amplification along a pressure path.
    Goodhart,
    /// Citation coupling and exchange rates between fields.
    Citations,
    /// Variance decomposition, headroom statistics and pressure estimates.
    Estimate,
    /// Audit rate maximizing coupling net of verification cost.
    Optimize,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => ScenarioConfig::load(path)?,
        None => ScenarioConfig::default(),
    };
    if cli.seed.is_some() {
        cfg.base_seed = cli.seed;
    }
    let table = match cli.command {
        Command::Phase => commands::phase(&cfg),
        Command::Collapse => commands::collapse(&cfg),
        Command::Simulate => commands::simulate(&cfg),
        Command::Goodhart => commands::goodhart(&cfg),
        Command::Citations => commands::citations(&cfg),
        Command::Estimate => commands::estimate(&cfg),
        Command::Optimize => commands::optimize(&cfg),
    }?;
    match cli.out.as_ref().or(cfg.output_path.as_ref()) {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Output(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            table.write(&mut w)?;
            w.flush()?;
        }
        None => table.write(io::stdout().lock())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("truthcoupling: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
