use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "primerace",
    version,
    about = "Prime number races and their limiting distributions",
    args_override_self = true
)]
pub struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// TOML file with `command = "..."` plus flag values.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Accumulate a race trajectory and report its statistics.
    Race(RaceArgs),
    /// Locate zeros of zeta or a real Dirichlet L-function.
    Zeros(ZerosArgs),
    /// Rebuild the limiting distribution from a zero file.
    Dist(DistArgs),
    /// Compare a trajectory with the truncated explicit formula.
    Compare(CompareArgs),
    /// Density of the limiting distribution by Fourier inversion.
    Density(DensityArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Zeta,
    Dirichlet,
    Qr,
    Sum2sq,
    Gauss,
    Ec,
    EcPair,
}

#[derive(Debug, Args, Serialize)]
pub struct RaceArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub a: Option<u64>,
    #[arg(long)]
    pub b: Option<u64>,
    /// D in a² + D b² (1 to 4).
    #[arg(long = "D")]
    #[serde(rename = "D")]
    pub d: Option<u64>,
    /// Keep p = 2 in the sum-of-squares races.
    #[arg(long)]
    pub factor2: bool,
    /// Weight a Dirichlet race by φ(q).
    #[arg(long)]
    pub phi_q_scaling: bool,
    /// Preset name (E0, E0prime, E1, E2) or `[a1,a2,a3,a4,a6]`.
    #[arg(long)]
    pub curve: Option<String>,
    #[arg(long)]
    pub curve2: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    pub beta0: f64,
    #[arg(long)]
    pub xmax: f64,
    /// Start of the statistics window in log x (default log 2).
    #[arg(long)]
    pub y0: Option<f64>,
    /// Trajectory CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON report (default: standard output).
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ZerosArgs {
    /// `zeta` or `dirichlet:D` for a fundamental discriminant D.
    #[arg(long)]
    pub lfunc: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub tmin: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub tmax: f64,
    /// Fixed Euler–Maclaurin term count; by default the smallest that covers tmax.
    #[arg(long)]
    pub em_terms: Option<usize>,
    #[arg(long, default_value_t = primerace::zeros::DEFAULT_PRECISION)]
    pub precision: f64,
    /// Component weight a_f written to the file.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub weight: f64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub central_order: i32,
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    pub second_moment_pole: i32,
    /// Component label (default: the L-function label).
    #[arg(long)]
    pub label: Option<String>,
    /// Zero file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// How a zero file is read and reweighted.
#[derive(Debug, Args, Serialize)]
pub struct ZeroInput {
    #[arg(long)]
    pub zeros: PathBuf,
    /// Expected SHA-256 of the zero file.
    #[arg(long)]
    pub zeros_sha256: Option<String>,
    /// The file is a bare list of ordinates (one per line).
    #[arg(long)]
    pub plain: bool,
    /// β₀ for plain lists.
    #[arg(long, default_value_t = 0.5)]
    pub plain_beta0: f64,
    /// Replace every component weight.
    #[arg(long, allow_negative_numbers = true)]
    pub weight: Option<f64>,
    /// Mean of the distribution (default: computed from the file metadata).
    #[arg(long, allow_negative_numbers = true)]
    pub mean: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodArg {
    Montecarlo,
    FourierInversion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelArg {
    Li,
    TimeAverage,
}

#[derive(Debug, Args, Serialize)]
pub struct DistArgs {
    #[command(flatten)]
    pub input: ZeroInput,
    /// Truncation height (default: the largest ordinate in the file).
    #[arg(long)]
    pub tmax: Option<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Montecarlo)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = ModelArg::Li)]
    pub model: ModelArg,
    /// Upper end of the y range for the time-average model.
    #[arg(long)]
    pub y_max: Option<f64>,
    /// Fall back to Monte Carlo when inversion is refused.
    #[arg(long)]
    pub allow_fallback: bool,
    /// Summary document (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fourier profile CSV `xi,re,im`.
    #[arg(long)]
    pub profile_out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CompareArgs {
    #[arg(long)]
    pub trajectory: PathBuf,
    #[command(flatten)]
    pub input: ZeroInput,
    /// Truncation heights; repeat for several.
    #[arg(long, required = true)]
    pub tmax: Vec<f64>,
    /// Window in log x (default: the whole trajectory).
    #[arg(long)]
    pub y0: Option<f64>,
    #[arg(long)]
    pub y1: Option<f64>,
    #[arg(long, default_value_t = primerace::limit::DEFAULT_POINTS)]
    pub points: usize,
    /// Report (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct DensityArgs {
    #[command(flatten)]
    pub input: ZeroInput,
    #[arg(long)]
    pub tmax: Option<f64>,
    /// Grid for φ (default: mean ± 8 standard deviations).
    #[arg(long, allow_negative_numbers = true)]
    pub t_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_step: Option<f64>,
    /// Density CSV `t,phi` (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub profile_out: Option<PathBuf>,
}
