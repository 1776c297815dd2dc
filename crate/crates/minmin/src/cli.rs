use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::params::Family;

#[derive(Debug, Parser)]
#[command(name = "minmin", version, about = "Mean curvature and minimality checks in 2m-norm spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample points on an example surface and check that H vanishes.
    Verify(VerifyArgs),
    /// Integrate profile curves of separated translation surfaces.
    Ode(OdeArgs),
    /// Expand the minimality identity for an X-profile family.
    Ansatz(AnsatzArgs),
    /// Export a surface grid as OBJ or CSV.
    Mesh(MeshArgs),
    /// Compare closed-form H against the finite-difference oracle on random configurations.
    OracleCompare(OracleArgs),
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Threads used for point batches.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Append wall-clock time to the report (makes it non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// 6.1 … 6.6, i-2, iii-2 or iii-3.
    #[arg(long)]
    pub example: String,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Block size for 6.2 and 6.4.
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    /// Bound on |H| at each point.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Relative bound on |H - H_oracle| and on the tangency defect.
    #[arg(long, default_value_t = 1e-6)]
    pub oracle_tol: f64,
    /// Replace the coefficient of Example 6.4.
    #[arg(long)]
    pub perturb_coef: Option<f64>,
    /// Per-point CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OdeArgs {
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Coefficient of the quadratic term; defaults to 1, or n - 1 with --n.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub c0: f64,
    /// Initial slope; with --n, profile i starts at (-1)^i y0.
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub y0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub u0: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_steps: usize,
    /// Assemble a translation surface from n profiles with k = n - 1.
    #[arg(long)]
    pub n: Option<usize>,
    /// Residual grid points per axis (assembly only).
    #[arg(long, default_value_t = 20)]
    pub grid: usize,
    /// Pass threshold; 1e-6 for a single profile, 1e-7 for an assembly.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Profile CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AnsatzArgs {
    #[arg(long, value_enum)]
    pub kind: Option<Family>,
    /// TOML file with p, q, r.
    #[arg(long, conflicts_with = "example")]
    pub params: Option<PathBuf>,
    /// Built-in parameters: 6.1, 6.3, 6.5, 6.6, i-2, iii-2, iii-3.
    #[arg(long)]
    pub example: Option<String>,
    /// Relative bound on every coefficient.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceKind {
    /// Euclidean Scherk surface, m = 1.
    Scherk,
    /// Separated translation surface from the profile ODE (cylinder for n > 2).
    Ode,
    /// Separable patch from X-profiles (--example or --params).
    Patch,
}

#[derive(Debug, Clone, Args)]
pub struct MeshArgs {
    #[arg(long, value_enum, default_value_t = SurfaceKind::Patch)]
    pub surface: SurfaceKind,
    #[arg(long)]
    pub example: Option<String>,
    #[arg(long, conflicts_with = "example")]
    pub params: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Total dimension n for --surface ode.
    #[arg(long)]
    pub n: Option<usize>,
    /// Points per axis.
    #[arg(long, default_value_t = 50)]
    pub grid: usize,
    /// The two parameter axes varied (1-based); the rest stay fixed.
    #[arg(long, default_value = "1,2")]
    pub slice: String,
    /// Ambient coordinates written as OBJ vertices (1-based).
    #[arg(long, default_value = "1,2,3")]
    pub coords: String,
    /// Half-width of the parameter window of a patch.
    #[arg(long, default_value_t = 1.0)]
    pub spread: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub c0: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub y0: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_steps: usize,
    /// Output file; the format follows the extension (.obj or .csv).
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Translation,
    Separable,
    /// m = 1 translation graphs against classical Euclidean H.
    Euclidean,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum, default_value_t = OracleKind::Translation)]
    pub kind: OracleKind,
    /// Fixed m; cycles through 1, 2, 3 when absent.
    #[arg(long)]
    pub m: Option<u32>,
    /// Fixed n; cycles through 2, 3, 4 when absent.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Relative agreement bound; 1e-6, or 1e-9 for euclidean.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Per-point CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

impl Command {
    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::Verify(a) => &a.common,
            Command::Ode(a) => &a.common,
            Command::Ansatz(a) => &a.common,
            Command::Mesh(a) => &a.common,
            Command::OracleCompare(a) => &a.common,
        }
    }
}
