//! Audit evidence sampling pipeline: train a Naive Bayes classifier over
//! a population, draw evidence by user-based, item-based or hybrid
//! strategies, and report representativeness and quality metrics.

mod commands;
mod config;
mod error;
mod pipeline;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Overrides, RunConfig};
use error::CliResult;

#[derive(Parser)]
#[command(
    name = "audit-sampler",
    version,
    about = "Naive Bayes classification and audit evidence sampling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Flat key=value configuration file (TOML syntax, no nested tables).
    #[arg(long)]
    config: PathBuf,
    /// Seed override; the seed is mandatory here or in the config file.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory override (default: `out` key, then ./out).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Input path override.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl CommonArgs {
    fn load(&self) -> CliResult<RunConfig> {
        RunConfig::load(
            &self.config,
            &Overrides { seed: self.seed, out: self.out.clone(), input: self.input.clone() },
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Split, fit a model and report test-split quality.
    Train {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Score a population with an existing model.
    Classify {
        #[command(flatten)]
        common: CommonArgs,
        /// Model JSON written by `train`.
        #[arg(long)]
        model: PathBuf,
    },
    /// Draw audit evidence from a classified population.
    Sample {
        #[command(flatten)]
        common: CommonArgs,
        /// Model JSON written by `train`.
        #[arg(long)]
        model: PathBuf,
    },
    /// KS agreement and variability of evidence vs its population.
    Evaluate {
        #[command(flatten)]
        common: CommonArgs,
        /// Evidence JSON written by `sample`; repeat to pool evidence
        /// drawn per class into one sample.
        #[arg(long, required = true)]
        evidence: Vec<PathBuf>,
    },
    /// Degree centrality, clustering coefficient and risk bins per vertex.
    #[command(name = "graph-features")]
    GraphFeatures {
        #[command(flatten)]
        common: CommonArgs,
        /// Binning rules JSON (defaults to the built-in five-class rules).
        #[arg(long)]
        binning: Option<PathBuf>,
    },
    /// Keyword dictionary and top-k ranking comparison.
    #[command(name = "text-features")]
    TextFeatures {
        #[command(flatten)]
        common: CommonArgs,
        /// Optional evidence JSON to add an `evidence` ranking scope.
        #[arg(long)]
        evidence: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Train { common } => commands::train::run(&common.load()?),
        Command::Classify { common, model } => commands::classify::run(&common.load()?, &model),
        Command::Sample { common, model } => commands::sample::run(&common.load()?, &model),
        Command::Evaluate { common, evidence } => {
            commands::evaluate::run(&common.load()?, &evidence)
        }
        Command::GraphFeatures { common, binning } => {
            let mut cfg = common.load()?;
            if binning.is_some() {
                cfg.binning = binning;
            }
            commands::graph_features::run(&cfg)
        }
        Command::TextFeatures { common, evidence } => {
            commands::text_features::run(&common.load()?, evidence.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {}", e.category(), e);
            ExitCode::from(e.exit_code())
        }
    }
}
