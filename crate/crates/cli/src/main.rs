//! `nlwit`: build states and witnesses, certify measured witness values under
//! lossy detection, simulate clicks, and tabulate decision surfaces.

mod commands;
mod config;
mod error;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nlwit_core::tolerance::Tolerances;

use commands::{certify, demo_bound, simulate, state, surface};
use config::{Convention, Format, RunConfig};
use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "nlwit",
    version,
    about = "Entanglement witnesses under the detection loophole"
)]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Structural tolerance for Hermiticity, PPT and rank decisions.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Normalization of the quadratic term.
    #[arg(long, global = true, value_enum, default_value_t = Convention::Schmidt)]
    s_convention: Convention,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build or load a state and report its spectrum and PPT status.
    State(state::StateArgs),
    /// Decide whether measured witness values certify entanglement.
    Certify(certify::CertifyArgs),
    /// Tabulate the decision surface of a reference witness.
    Surface(surface::SurfaceArgs),
    /// Monte Carlo clicks for a traceless observable with lossy detectors.
    Simulate(simulate::SimulateArgs),
    /// Scan the bound-entangled family ρ_B(a).
    DemoBound(demo_bound::DemoBoundArgs),
}

fn run(cli: Cli) -> CliResult<()> {
    let mut tolerances = Tolerances::default();
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
        tolerances.structural = t;
    }
    let cfg = RunConfig {
        tolerances,
        convention: cli.s_convention.into(),
        seed: cli.seed,
        out: cli.out,
        format: cli.format,
    };
    match &cli.command {
        Command::State(a) => state::run(a, &cfg),
        Command::Certify(a) => certify::run(a, &cfg),
        Command::Surface(a) => surface::run(a, &cfg),
        Command::Simulate(a) => simulate::run(a, &cfg),
        Command::DemoBound(a) => demo_bound::run(a, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
