//! `ncp`: correspondence colouring runs, strong edge colouring, bound
//! calculators and experiments from the command line.
//!
//! Exit codes: 0 on success, 1 when a computation fails (restart exhaustion,
//! an invalid colouring, a failed reduction), 2 on usage or input errors.

mod cmd;
mod common;
mod config;
mod error;
mod output;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cmd::bounds::BoundsCommand;
use cmd::color::ColorArgs;
use cmd::gen::GenArgs;
use cmd::oracle::OracleCommand;
use cmd::simulate::SimulateCommand;
use cmd::strong::StrongEdgeArgs;
use config::FileConfig;
use error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "ncp", version, about = "Iterated naive colouring procedure toolkit")]
struct Cli {
    /// TOML file of defaults; command-line flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for parallel sections. Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Correspondence-colour a graph with the iterated procedure.
    Color(ColorArgs),
    /// Strong edge colouring through the square of the line graph.
    StrongEdge(StrongEdgeArgs),
    /// Closed-form bounds and tables.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Seeded experiments.
    #[command(subcommand)]
    Simulate(SimulateCommand),
    /// Write a generated graph.
    Gen(GenArgs),
    /// Exact small-graph oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

fn dispatch(command: &Command, file: &FileConfig) -> CliResult<()> {
    match command {
        Command::Color(a) => cmd::color::run(a, file),
        Command::StrongEdge(a) => cmd::strong::run(a, file),
        Command::Bounds(c) => cmd::bounds::run(c, file),
        Command::Simulate(c) => cmd::simulate::run(c, file),
        Command::Gen(a) => cmd::gen::run(a, file),
        Command::Oracle(c) => cmd::oracle::run(c, file),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match cli.threads.or(file.threads) {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?
            .install(|| dispatch(&cli.command, &file)),
        None => dispatch(&cli.command, &file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // usage errors exit 2, --help and --version exit 0
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ncp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
