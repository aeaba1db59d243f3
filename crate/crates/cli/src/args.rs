use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edms_core::Units;

use crate::sweep::{Range, Scale};

#[derive(Debug, Parser)]
#[command(name = "edms", version, about = "Secret key rates, exponents and energies of excited sources")]
pub struct Cli {
    /// Source model
    #[arg(long, value_enum, global = true, default_value_t = ModelKind::Gaussian)]
    pub model: ModelKind,

    /// Units for rates and exponents, both on input and output
    #[arg(long, global = true, default_value_t = Units::Nats)]
    pub units: Units,

    /// Write the table or report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Master seed for anything random
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Gaussian,
    Dsbs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Constant-signal key rate, on-off capacity and duty cycle versus SNR
    Capacity(CapacityArgs),
    /// Energy per key bit, and finite-block key energy with --b-key
    Energy(EnergyArgs),
    /// Reliability exponents versus key rate and SNR
    Exponents(ExponentsArgs),
    /// Reliability and secrecy exponents versus public message rate
    Tradeoff(TradeoffArgs),
    /// Simulate random-binning key agreement on a binary source (JSON report)
    Simulate(SimulateArgs),
}

/// SNR selection shared by the SNR-swept commands.
#[derive(Debug, Clone, Args)]
pub struct SnrArgs {
    /// Single linear SNR
    #[arg(long, conflicts_with_all = ["snr_db", "snr_range", "snr_db_range"])]
    pub snr: Option<f64>,

    /// Single SNR in dB
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["snr_range", "snr_db_range"])]
    pub snr_db: Option<f64>,

    /// Linear SNR range start:stop
    #[arg(long, conflicts_with = "snr_db_range")]
    pub snr_range: Option<Range>,

    /// SNR range in dB, start:stop (grid spacing follows --scale in linear SNR)
    #[arg(long, allow_hyphen_values = true)]
    pub snr_db_range: Option<Range>,

    /// Number of SNR grid points
    #[arg(long, default_value_t = 100)]
    pub points: usize,

    /// SNR grid spacing
    #[arg(long, value_enum, default_value_t = Scale::Log)]
    pub scale: Scale,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[command(flatten)]
    pub snr: SnrArgs,
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub snr: SnrArgs,

    /// Key size in bits; adds the finite-block energy columns
    #[arg(long)]
    pub b_key: Option<f64>,

    /// Target disagreement probability for the finite-block columns
    #[arg(long, default_value_t = 0.01, requires = "b_key")]
    pub epsilon: f64,
}

#[derive(Debug, Args)]
pub struct ExponentsArgs {
    #[command(flatten)]
    pub snr: SnrArgs,

    /// Single key rate
    #[arg(long, conflicts_with = "r_sk_range")]
    pub r_sk: Option<f64>,

    /// Key rate range start:stop (linear spacing)
    #[arg(long)]
    pub r_sk_range: Option<Range>,

    /// Number of key rate grid points
    #[arg(long, default_value_t = 50)]
    pub rate_points: usize,

    /// Add the on-off exponent and its duty cycle
    #[arg(long)]
    pub onoff: bool,
}

#[derive(Debug, Args)]
pub struct TradeoffArgs {
    /// Crossover between Alice and Bob
    #[arg(long, default_value_t = 0.01, conflicts_with = "model_file")]
    pub theta: f64,

    /// Crossover between Alice and Eve (0.5 = independent)
    #[arg(long, default_value_t = 0.3, conflicts_with = "model_file")]
    pub w: f64,

    /// Finite model (JSON) evaluated instead of the binary source
    #[arg(long)]
    pub model_file: Option<PathBuf>,

    /// Comma-separated state distribution for --model-file (default uniform)
    #[arg(long, value_delimiter = ',', requires = "model_file")]
    pub mass: Option<Vec<f64>>,

    /// Single key rate
    #[arg(long, conflicts_with = "r_sk_range")]
    pub r_sk: Option<f64>,

    /// Key rate range start:stop; emits the full surface grid
    #[arg(long)]
    pub r_sk_range: Option<Range>,

    /// Message rate range start:stop (default 0 to 1 bit)
    #[arg(long)]
    pub r_m_range: Option<Range>,

    /// Grid points per rate range
    #[arg(long, default_value_t = 101)]
    pub rate_points: usize,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Block length
    #[arg(long)]
    pub n: usize,

    /// Key rate
    #[arg(long)]
    pub r_sk: f64,

    /// Public message rate
    #[arg(long)]
    pub r_m: f64,

    /// Crossover between Alice and Bob
    #[arg(long)]
    pub theta: f64,

    /// Crossover between Alice and Eve (0.5 = independent)
    #[arg(long, default_value_t = 0.5)]
    pub w: f64,

    /// Monte Carlo trials
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,

    /// Also enumerate the exact error probability and leakage; fails if the block is too long
    #[arg(long)]
    pub exact: bool,
}
