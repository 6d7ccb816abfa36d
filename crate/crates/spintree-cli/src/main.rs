//! `spintree` — batch verification, spectra, and rewrite reports for
//! coupling-tree spin models.
//!
//! Exit codes: 0 all checks pass, 1 a verification check failed, 2 the
//! configuration is invalid, 3 the dense-dimension guard refused the model.

mod commands;
mod config;
mod error;
mod pretty;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::config::ModelConfig;
use crate::error::CliError;
use spintree_core::superint::DEFAULT_POOL_SEED;

#[derive(Parser)]
#[command(
    name = "spintree",
    version,
    about = "Commuting spin observables from binary coupling trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check pairwise commutation of the tree's observable family
    Verify(CommonArgs),
    /// Diagonalize the configured Hamiltonian
    Spectrum(SpectrumArgs),
    /// Find an exchange/flop sequence turning `tree` into `tree2`
    Rewrite(CommonArgs),
    /// Two-tree common-node and extended-commutation report
    Super(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Model configuration file (TOML)
    #[arg(long)]
    config: PathBuf,

    /// Override the command's primary tolerance
    #[arg(long)]
    tol: Option<f64>,

    /// Seed for the pseudo-random test-element pool
    #[arg(long)]
    seed: Option<u64>,

    /// Print a human-readable summary to stderr
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Also compute the angular-momentum-coupling prediction
    #[arg(long)]
    predict: bool,

    /// Match the numeric spectrum against the prediction
    #[arg(long)]
    compare: bool,

    /// Export the spectra to a CSV file
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn max_dim_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var("SPINTREE_MAX_DIM") {
        Ok(text) => text
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::Config(format!("SPINTREE_MAX_DIM=`{text}` is not a dimension"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: &Cli) -> Result<(bool, report::Report), CliError> {
    let max_dim = max_dim_from_env()?;
    match &cli.command {
        Command::Verify(args) => {
            let model = ModelConfig::load(&args.config, max_dim)?;
            let path = args.config.display().to_string();
            Ok((args.pretty, commands::cmd_verify(&model, &path, args.tol)?))
        }
        Command::Spectrum(args) => {
            let model = ModelConfig::load(&args.common.config, max_dim)?;
            let path = args.common.config.display().to_string();
            let report =
                commands::cmd_spectrum(&model, &path, args.predict, args.compare, args.common.tol)?;
            if let Some(csv) = &args.csv {
                let section = report.spectrum.as_ref().expect("spectrum command");
                report::write_spectrum_csv(csv, section)?;
            }
            Ok((args.common.pretty, report))
        }
        Command::Rewrite(args) => {
            let model = ModelConfig::load(&args.config, max_dim)?;
            let path = args.config.display().to_string();
            Ok((args.pretty, commands::cmd_rewrite(&model, &path)?))
        }
        Command::Super(args) => {
            let model = ModelConfig::load(&args.config, max_dim)?;
            let path = args.config.display().to_string();
            let seed = args.seed.unwrap_or(DEFAULT_POOL_SEED);
            Ok((
                args.pretty,
                commands::cmd_super(&model, &path, args.tol, seed)?,
            ))
        }
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = Cli::parse();
    match run(&cli) {
        Ok((pretty, report)) => {
            print!("{}", report::to_json(&report));
            if pretty {
                pretty::print(&report, started.elapsed());
            }
            if report.verdict.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
