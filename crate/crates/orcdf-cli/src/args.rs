//! Command-line definitions.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "orcdf",
    about = "Observed-range estimation for interval-censored data",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the distribution function at points or over the full grid.
    Cdf(CdfArgs),
    /// Evaluate the smoothed density estimator.
    Kde(KdeArgs),
    /// Select a bandwidth by cross-validation and report the score table.
    Bandwidth(BandwidthArgs),
    /// Censored Nadaraya-Watson regression predictions.
    Regress(RegressArgs),
    /// Censored multinomial parameter estimation.
    Multinomial(MultinomialArgs),
    /// Censored 2x2 contingency-table analysis.
    Contingency(ContingencyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelId {
    Gaussian,
    Epanechnikov,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
    /// Output format. CSV is available for grid- or point-valued results.
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Run brute-force oracles alongside the closed forms and report the
    /// largest deviation in the diagnostics.
    #[arg(long)]
    pub self_check: bool,
}

#[derive(Debug, Args)]
pub struct CdfArgs {
    /// CSV file of censored observations.
    #[arg(long)]
    pub input: std::path::PathBuf,
    /// Evaluation points, comma-separated coordinates; repeat the flag or
    /// separate points with ';' for several.
    #[arg(long, value_delimiter = ';')]
    pub points: Vec<String>,
    /// Evaluate over the full endpoint grid instead of points.
    #[arg(long)]
    pub grid: bool,
    /// Cap on the number of grid points.
    #[arg(long, default_value_t = orcdf::DEFAULT_MAX_GRID_POINTS)]
    pub max_grid_points: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct KdeArgs {
    #[arg(long)]
    pub input: std::path::PathBuf,
    #[arg(long, value_enum, default_value = "gaussian")]
    pub kernel: KernelId,
    /// Per-dimension bandwidths, comma-separated.
    #[arg(long)]
    pub bandwidth: String,
    #[arg(long, value_delimiter = ';')]
    pub points: Vec<String>,
    /// Evaluate the density at every grid point instead.
    #[arg(long)]
    pub grid: bool,
    #[arg(long, default_value_t = orcdf::DEFAULT_MAX_GRID_POINTS)]
    pub max_grid_points: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct BandwidthArgs {
    #[arg(long)]
    pub input: std::path::PathBuf,
    #[arg(long, value_enum, default_value = "gaussian")]
    pub kernel: KernelId,
    /// Number of log-spaced candidates per dimension.
    #[arg(long, default_value_t = 32)]
    pub candidates: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct RegressArgs {
    /// CSV file whose final l/r pair is the response.
    #[arg(long)]
    pub input: std::path::PathBuf,
    #[arg(long, value_enum, default_value = "gaussian")]
    pub kernel: KernelId,
    /// Covariate bandwidths, comma-separated.
    #[arg(long)]
    pub bandwidth: String,
    /// Covariate points to predict at.
    #[arg(long, value_delimiter = ';')]
    pub points: Vec<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct MultinomialArgs {
    /// Observed per-type counts, comma-separated.
    #[arg(long)]
    pub counts: String,
    /// Number of trials with unobserved outcomes.
    #[arg(long, default_value_t = 0)]
    pub unobserved: u64,
    /// Per-type caps on the unobserved counts, comma-separated.
    #[arg(long)]
    pub per_type_u: Option<String>,
    /// Observation probabilities, comma-separated; write `?` for an
    /// unknown entry (two types only, exactly one unknown in position 1).
    #[arg(long)]
    pub q: Option<String>,
    /// Seed for the randomized restarts of the exact maximizer.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct ContingencyArgs {
    /// Cell counts in column-major order: c11,c21,c12,c22.
    #[arg(long)]
    pub counts: String,
    /// Which censored-table structure to fit.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub example: u8,
    /// Known column totals N1,N2 (structures 1 and 2).
    #[arg(long)]
    pub column_totals: Option<String>,
    /// Global unobserved count (structure 3).
    #[arg(long)]
    pub unobserved: Option<u64>,
    /// Fit under the null constraint of equal column probabilities.
    #[arg(long)]
    pub null: bool,
    /// Seed for the randomized restarts of the simplex maximizer.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}
