use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "fuzznorm",
    version,
    about = "Fuzzy norm generators, alpha-cut decompositions and axiom checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check axioms on a norm spec.
    Check(CheckArgs),
    /// Tabulate alpha-cut norms p_alpha(x) as CSV.
    Decompose(DecomposeArgs),
    /// Tabulate t -> N(x, t) as CSV.
    Curve(CurveArgs),
    /// Compare fuzzy and crisp convergence of a sequence.
    Converge(ConvergeArgs),
    /// Verify the generator/norm round trips exactly.
    Roundtrip(RoundtripArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub spec: PathBuf,
    /// Comma-separated labels or ranges, e.g. "N1..N5,N6',A0".
    #[arg(long, default_value = "N1..N7,A0..A3")]
    pub axioms: String,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    /// Overridden by FUZZNORM_SEED when set.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Level used for the crisp-* labels.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub spec: PathBuf,
    /// Comma-separated, strictly increasing levels in (0, 1).
    #[arg(long, default_value = "0.25,0.5,0.75")]
    pub alphas: String,
    /// CSV with header x1,...,xd.
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    pub spec: PathBuf,
    /// Comma-separated coordinates of x.
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    #[arg(long, default_value_t = 0.0)]
    pub tmin: f64,
    #[arg(long, default_value_t = 10.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    pub spec: PathBuf,
    /// inverse_n, constant or alternating.
    #[arg(long)]
    pub sequence: String,
    /// Comma-separated coordinates of the base vector.
    #[arg(long, allow_hyphen_values = true)]
    pub vector: String,
    #[arg(long, default_value_t = 10_000)]
    pub nmax: usize,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    pub spec: PathBuf,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    /// Overridden by FUZZNORM_SEED when set.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
