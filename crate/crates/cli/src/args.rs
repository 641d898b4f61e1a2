use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "pvote",
    version,
    about = "Probabilistic voter synthesis and fault-masking analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print symbol counts and error probabilities of a function
    Profile(SourceArgs),
    /// Synthesize and print a voter for k replicas of a function
    Synth(SynthArgs),
    /// Monte Carlo fault injection sweep over flip probabilities
    Simulate(SimulateArgs),
    /// Exact availability curves and crossover report
    Analytic(AnalyticArgs),
    /// Emit a gnuplot script and data file from a sweep CSV
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Truth table file (.tt)
    #[arg(long, conflicts_with = "expr")]
    pub table: Option<PathBuf>,
    /// Boolean expression, e.g. "a&b + !c"
    #[arg(long)]
    pub expr: Option<String>,
    /// Comma-separated variable order for --expr (MSB first)
    #[arg(long, value_delimiter = ',', requires = "expr")]
    pub vars: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VoterKind {
    Prob,
    Majority,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
}

#[derive(Debug, Clone, Args)]
pub struct VoterArgs {
    /// Number of replicas
    #[arg(short = 'k', long = "replicas", default_value_t = 3)]
    pub replicas: u32,
    /// Tie resolution for majority voting over an even replica count
    #[arg(long)]
    pub tie_policy: Option<TieArg>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub voter: VoterArgs,
    #[arg(long, value_enum, default_value = "prob")]
    pub kind: VoterKind,
    /// Also print the symbolic cost table for k replicas
    #[arg(long)]
    pub dump_generic: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Flip probabilities (repeatable or comma-separated); decimals or a/b
    #[arg(long, value_delimiter = ',')]
    pub pe: Vec<String>,
    /// Trials per flip probability
    #[arg(long, default_value_t = pvote_core::sim::DEFAULT_TRIALS)]
    pub trials: u64,
    /// Output CSV path (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub voter: VoterArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Master seed, decimal or 0x-prefixed hex
    #[arg(long, default_value = "0xC0FFEE", value_parser = parse_seed)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub voter: VoterArgs,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// CSV written by `simulate` or `analytic`
    pub csv: PathBuf,
    /// Output gnuplot script path; the data file is written next to it
    #[arg(long)]
    pub out: PathBuf,
}

pub fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}
