//! Command-line front end: argument types, body/set specs and the five
//! subcommands. `main.rs` only maps the outcome to an exit status.

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pextremal::{ConvexBody, Exponent, ReinhardtCompact};

use crate::output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Library(#[from] pextremal::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

/// Exit status for a finished run.
pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "pextremal", version, about = "P-extremal functions and Monge-Ampère masses of Reinhardt compacts in C^2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate V_{P,K} at a point or over a log-polar grid.
    Eval(EvalArgs),
    /// Sector masses of the toric Monge-Ampère measure against 8π²·Vol(P).
    Mass(MassArgs),
    /// Density of the measure with respect to surface measure on the sphere.
    Density(DensityArgs),
    /// Envelope-vs-closed-form error for a list of degrees.
    Converge(ConvergeArgs),
    /// Run the built-in invariant suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct BodyArgs {
    /// Exponent of P_q; `inf` for the square.
    #[arg(long, value_parser = parse_exponent)]
    pub q: Option<Exponent>,
    /// File holding a body spec such as `polytope d=2 verts=[[0,0],[1,0],[0,1]]`.
    #[arg(long, value_name = "FILE")]
    pub polytope: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[group(required = false, multiple = false)]
pub struct SetArgs {
    /// Radius of the Euclidean ball K (default 1).
    #[arg(long, value_name = "RADIUS")]
    pub ball: Option<f64>,
    /// CSV of `psi,r1,r2` rows describing the boundary of K.
    #[arg(long, value_name = "CSV")]
    pub profile: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub body: BodyArgs,
    #[command(flatten)]
    pub set: SetArgs,
    /// Envelope degree when no closed form applies.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Use the monomial envelope even when a closed form exists.
    #[arg(long)]
    pub envelope: bool,
    /// Moduli `r1,r2` of a single point.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub point: Option<(f64, f64)>,
    /// Number of ψ cells in (0, π/2).
    #[arg(long, default_value_t = 100)]
    pub psi_grid: usize,
    /// Number of ρ = log|z| cells.
    #[arg(long, default_value_t = 100)]
    pub rho_grid: usize,
    /// Range `lo,hi` of ρ.
    #[arg(long, value_parser = parse_pair, default_value = "0,1", allow_hyphen_values = true)]
    pub rho_range: (f64, f64),
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub body: BodyArgs,
    #[command(flatten)]
    pub set: SetArgs,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Raster side length in pixels.
    #[arg(long, default_value_t = 2048)]
    pub raster: usize,
}

#[derive(Debug, Clone, Args)]
pub struct MassArgs {
    #[command(flatten)]
    pub measure: MeasureArgs,
    #[arg(long, default_value_t = 32)]
    pub sectors: usize,
    /// Allowed relative error of the total mass.
    #[arg(long, default_value_t = 1e-2)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub measure: MeasureArgs,
    /// Number of ψ cells in (0, π/2); default is 20 points on [π/8, 3π/8].
    #[arg(long)]
    pub psi_grid: Option<usize>,
    /// Width of the averaging window in radians.
    #[arg(long, default_value_t = pextremal::monge_ampere::DEFAULT_DENSITY_STEP)]
    pub step: f64,
    /// Fail if a known reference density differs by more than this.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub body: BodyArgs,
    /// Envelope degrees.
    #[arg(long, value_delimiter = ',', default_value = "4,8,16,32,64")]
    pub n: Vec<u32>,
    /// Bound on the error at the largest degree.
    #[arg(long, default_value_t = 0.05)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_exponent(s: &str) -> Result<Exponent, String> {
    s.parse().map_err(|e: pextremal::Error| e.to_string())
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got {s:?}"))?;
    let p = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

impl BodyArgs {
    pub fn resolve(&self) -> Result<ConvexBody, CliError> {
        match (&self.q, &self.polytope) {
            (Some(q), None) => Ok(ConvexBody::planar(*q)),
            (None, Some(path)) => config::read_body(path),
            _ => Err(CliError::Config("give exactly one of --q, --polytope".into())),
        }
    }
}

impl SetArgs {
    pub fn resolve(&self) -> Result<ReinhardtCompact, CliError> {
        match (self.ball, &self.profile) {
            (Some(r), None) => Ok(ReinhardtCompact::ball(r)?),
            (None, Some(path)) => config::read_profile(path),
            (None, None) => Ok(ReinhardtCompact::unit_ball()),
            _ => Err(CliError::Config("give at most one of --ball, --profile".into())),
        }
    }
}

/// A finished run: the artifact text and whether its checks passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub artifact: String,
    pub passed: bool,
}

/// Runs one command and writes its artifact to `--out` or returns it for stdout.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let (outcome, out) = match &cli.command {
        Command::Eval(a) => (commands::eval(a)?, &a.output.out),
        Command::Mass(a) => (commands::mass(a)?, &a.output.out),
        Command::Density(a) => (commands::density(a)?, &a.output.out),
        Command::Converge(a) => (commands::converge(a)?, &a.output.out),
        Command::Verify(a) => (commands::verify(a), &a.output.out),
    };
    if let Some(path) = out {
        std::fs::write(path, &outcome.artifact)?;
    }
    Ok(outcome)
}
