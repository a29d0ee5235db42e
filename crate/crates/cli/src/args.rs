use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "jbcone",
    version,
    about = "Jordan algebras, symmetric cones and their Finsler geometry"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a Jordan algebra operation.
    Eval(EvalArgs),
    /// Classify an element as interior, boundary or exterior to the cone.
    Classify(ClassifyArgs),
    /// Thompson distance between two interior points.
    Dist(DistArgs),
    /// Tangent norms and Riemannian metrics at a base point.
    Metric(MetricArgs),
    /// Symmetry `s_x(y) = P(x) y⁻¹`.
    Symmetry(SymmetryArgs),
    /// Point of the geodesic from p to q.
    Geodesic(GeodesicArgs),
    /// Run verification suites and emit a JSON report.
    Verify(VerifyArgs),
}

/// Algebra selection: shorthand `kind:n` or a JSON descriptor file.
#[derive(Debug, Args)]
pub struct AlgArgs {
    /// Algebra shorthand: orthant:n, sym:n or spin:n.
    #[arg(long, conflicts_with = "alg_file")]
    pub alg: Option<String>,
    /// JSON algebra descriptor (required for direct sums).
    #[arg(long)]
    pub alg_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Write the JSON result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Suppress diagnostics on standard error.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Identity,
    Product,
    Square,
    Power,
    Triple,
    LeftMult,
    Quadratic,
    Spectral,
    Inverse,
    Sqrt,
    Log,
    Exp,
    Norm,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub alg: AlgArgs,
    #[arg(long, value_enum)]
    pub op: Op,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Base point of the order-unit norm (defaults to the identity).
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Exponent for `power`.
    #[arg(long)]
    pub n: Option<u32>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub alg: AlgArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Also run the state-functional test with this many sampled states.
    #[arg(long)]
    pub functionals: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub alg: AlgArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    /// JSON query `{"alg": …, "x": […], "y": […]}` in place of the other flags.
    #[arg(long, conflicts_with_all = ["alg", "alg_file", "x", "y"])]
    pub input: Option<PathBuf>,
    /// Also report the Carathéodory lower bound over this many sampled extreme states.
    #[arg(long)]
    pub functionals: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct MetricArgs {
    #[command(flatten)]
    pub alg: AlgArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub u: String,
    /// Second tangent vector (defaults to u).
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct SymmetryArgs {
    #[command(flatten)]
    pub alg: AlgArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct GeodesicArgs {
    #[command(flatten)]
    pub alg: AlgArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
    pub t: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Algebra to verify (defaults to the standard instance set).
    #[command(flatten)]
    pub alg: AlgArgs,
    /// `all`, `list`, or a comma-separated list of suite ids.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}
