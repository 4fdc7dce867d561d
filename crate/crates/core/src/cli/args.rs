//! Command-line grammar.

use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::harmonics::BuildMode;

#[derive(Debug, Parser)]
#[command(
    name = "compseries",
    version,
    about = "Branching coefficients, intertwining spectra and boundedness criteria for complementary series of SO(n,1)",
    long_about = None
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Worker threads for table builds and per-row evaluation. Output does
    /// not depend on this value.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the artifact atomically to this path instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Suppress the timestamp in artifact headers (`--deterministic false`
    /// adds one).
    #[arg(long, global = true, default_value_t = true, action = ArgAction::Set)]
    pub deterministic: bool,
    /// JSON file with command parameters under the same names as the flags;
    /// flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Largest mmax accepted by exact computations.
    #[arg(long, global = true, default_value_t = 60)]
    pub exact_cap: usize,
    /// Largest number of table cells (m, l) a command may allocate.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    pub max_cells: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parameter arithmetic: windows, the branching map, chains, endpoints.
    #[command(subcommand)]
    Params(ParamsCommand),
    #[command(name = "params-window", about = "Branching window for (n, i)")]
    ParamsWindow(WindowArgs),
    #[command(name = "params-map", about = "Branching map u -> u'")]
    ParamsMap(PointArgs),
    #[command(name = "params-chain", about = "Iterated restriction chain")]
    ParamsChain(ChainArgs),
    #[command(name = "params-endpoint", about = "Window endpoint and its image")]
    ParamsEndpoint(WindowArgs),
    /// Build a table of branching coefficients C(m, l, 0).
    BranchTable(TableArgs),
    /// Check the fast coefficient path against the exact oracle.
    BranchVerify(VerifyArgs),
    /// Intertwining eigenvalues lambda_m(u).
    Spectrum(SpectrumArgs),
    /// Boundedness criterion: single evaluations and endpoint scans.
    #[command(subcommand)]
    Criterion(CriterionCommand),
    #[command(name = "criterion-check", about = "Evaluate the criterion at one point")]
    CriterionCheck(CheckArgs),
    #[command(name = "criterion-scan", about = "Sweep the criterion toward the window endpoint")]
    CriterionScan(ScanArgs),
    /// Estimate the comparison constant between a ramified and a spherical table.
    CompareTables(CompareArgs),
}

#[derive(Debug, Subcommand)]
pub enum ParamsCommand {
    /// Branching window for (n, i).
    Window(WindowArgs),
    /// Branching map u -> u'.
    Map(PointArgs),
    /// Iterated restriction chain.
    Chain(ChainArgs),
    /// Window endpoint and its image under the branching map.
    Endpoint(WindowArgs),
}

#[derive(Debug, Subcommand)]
pub enum CriterionCommand {
    /// Evaluate the criterion at one point.
    Check(CheckArgs),
    /// Sweep the criterion toward the window endpoint.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct WindowArgs {
    /// Rank parameter of SO(n,1), n >= 3.
    #[arg(long)]
    pub n: Option<u32>,
    /// Exterior degree i (default 0).
    #[arg(long)]
    pub i: Option<u32>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct PointArgs {
    #[arg(long)]
    pub n: Option<u32>,
    /// Exterior degree i (default 0).
    #[arg(long)]
    pub i: Option<u32>,
    /// Complementary series parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub u: Option<f64>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ChainArgs {
    #[arg(long)]
    pub n: Option<u32>,
    /// Exterior degree i (default 0).
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub u: Option<f64>,
    /// Maximum number of restriction steps (default 64).
    #[arg(long)]
    pub max_steps: Option<usize>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct TableArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub mmax: Option<usize>,
    #[arg(long)]
    pub lmax: Option<usize>,
    /// Exact rationals (small tables) or the Gamma-ratio closed form (default).
    #[arg(long, value_enum)]
    pub mode: Option<BuildMode>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub mmax: Option<usize>,
    /// Relative tolerance for even-parity slots (default 1e-10).
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct SpectrumArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub u: Option<f64>,
    #[arg(long)]
    pub mmax: Option<usize>,
}

/// Optional overrides of the verdict thresholds.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ThresholdArgs {
    /// Fitted exponents must lie below this for a bounded verdict (default -1).
    #[arg(long, allow_negative_numbers = true)]
    pub bounded_below: Option<f64>,
    /// A fitted exponent at or above this means divergence (default -0.9).
    #[arg(long, allow_negative_numbers = true)]
    pub diverging_at: Option<f64>,
    /// Minimum nonzero terms in a tail fit window (default 10).
    #[arg(long)]
    pub min_fit_points: Option<usize>,
    /// Largest accepted growth slope of the bounds over the last quartile of l (default 0.5).
    #[arg(long, allow_negative_numbers = true)]
    pub trend_max_slope: Option<f64>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct CheckArgs {
    #[arg(long)]
    pub n: Option<u32>,
    /// Exterior degree i (default 0). Without --table, i >= 1 is handled by
    /// the comparison bound with --gamma.
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub u: Option<f64>,
    #[arg(long)]
    pub lmax: Option<usize>,
    #[arg(long)]
    pub mmax: Option<usize>,
    /// Coefficient table (CSV or JSON) to use instead of the internal one.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Comparison constant for i >= 1 without a table (default 1).
    #[arg(long)]
    pub gamma: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub thresholds: ThresholdArgs,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ScanArgs {
    #[arg(long)]
    pub n: Option<u32>,
    /// Exterior degree i (default 0).
    #[arg(long)]
    pub i: Option<u32>,
    /// Number of points approaching the endpoint (default 8).
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub lmax: Option<usize>,
    #[arg(long)]
    pub mmax: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub thresholds: ThresholdArgs,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct CompareArgs {
    /// Table with i >= 1 in its header.
    #[arg(long)]
    pub ramified: Option<PathBuf>,
    /// Spherical table; built internally (fast mode) when omitted.
    #[arg(long)]
    pub unramified: Option<PathBuf>,
}
