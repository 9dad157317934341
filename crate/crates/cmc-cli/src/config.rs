//! Command-line flags and their validation into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cmc_core::{Branch, Dimension, ProfileParams, Signature};

use crate::error::{CliError, CliResult};
use crate::output::Format;

/// Default tolerance for closed-form (analytic) residuals.
pub const ANALYTIC_TOL: f64 = 1e-8;
/// Default tolerance for finite-difference residuals.
pub const FD_TOL: f64 = 1e-4;
/// Default absolute tolerance of the adaptive quadrature.
pub const QUAD_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(name = "cmc", version)]
#[command(about = "Constant-mean-curvature radial graphs over hyperbolic space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate r, I_{m-1}, u, w, phi, w' and the ODE residual of a radial family
    Profile(ProfileArgs),
    /// Sample gradient norms, mean curvature and Hessian norms of a graph
    Curvature(CurvatureArgs),
    /// Run verification suites and print a JSON report
    Verify(VerifyArgs),
    /// Compare the mean curvature with the area/volume bound on geodesic balls
    Isoperimetric(IsoperimetricArgs),
    /// Sample leaves of the foliations by radial graphs
    Foliation(FoliationArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignatureArg {
    Riemannian,
    Lorentzian,
}

impl From<SignatureArg> for Signature {
    fn from(s: SignatureArg) -> Self {
        match s {
            SignatureArg::Riemannian => Signature::Riemannian,
            SignatureArg::Lorentzian => Signature::Lorentzian,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Radial,
    Slice,
    ExpDemo,
    Hyperboloid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ode,
    Bounds,
    Curvature,
    Section2,
    Isoperimetric,
    Foliation,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FoliationModeArg {
    VaryD,
    VaryC,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Dimension of the hyperbolic base
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// Divergence constant c_div (mean curvature norm is |c_div|/m)
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, value_enum, default_value_t = SignatureArg::Riemannian)]
    pub signature: SignatureArg,
    #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
    pub branch: BranchArg,
    /// Largest radius sampled
    #[arg(long, default_value_t = 5.0)]
    pub r_max: f64,
    /// Number of intervals of the sample grid
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CurvatureArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = FamilyArg::Radial)]
    pub family: FamilyArg,
    /// Rank of the hyperboloid (number of coordinates it depends on)
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Finite-difference step override
    #[arg(long)]
    pub fd_step: Option<f64>,
    /// Use finite-difference gradients even where closed forms exist
    #[arg(long)]
    pub fd_gradient: bool,
    /// Tolerance on the deviation of constant-curvature families
    #[arg(long, default_value_t = FD_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Restrict the families to this dimension
    #[arg(long)]
    pub m: Option<usize>,
    /// Restrict the families to this divergence constant
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Tolerance of finite-difference residuals
    #[arg(long, default_value_t = FD_TOL)]
    pub tol: f64,
    /// Tolerance of analytic residuals
    #[arg(long, default_value_t = ANALYTIC_TOL)]
    pub analytic_tol: f64,
    /// Absolute tolerance of the adaptive quadrature
    #[arg(long, default_value_t = QUAD_TOL)]
    pub quad_tol: f64,
    /// Finite-difference step override
    #[arg(long)]
    pub fd_step: Option<f64>,
    /// Radial samples per family
    #[arg(long, default_value_t = 40)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct IsoperimetricArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Radial samples used to find max ‖∇f‖
    #[arg(long, default_value_t = 200)]
    pub grid: usize,
}

#[derive(Debug, Clone, Args)]
pub struct FoliationArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = FoliationModeArg::VaryD)]
    pub mode: FoliationModeArg,
    /// Offset d of every leaf in vary-c mode
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub d: f64,
    /// Number of leaves
    #[arg(long, default_value_t = 9)]
    pub grid: usize,
    /// Smallest value of the varying parameter
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    /// Largest value of the varying parameter
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub dim: Dimension,
    pub c_div: f64,
    pub signature: Signature,
    pub branch: Branch,
    pub r_max: f64,
    pub steps: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Validates the shared flags. Family parameters are only checked when
    /// `needs_profile` is set, since non-radial families ignore them.
    pub fn from_common(args: &CommonArgs, needs_profile: bool) -> CliResult<Self> {
        let dim = Dimension::new(args.m)?;
        if !(args.r_max.is_finite() && args.r_max > 0.0) {
            return Err(CliError::Config(format!("--r-max must be positive and finite, got {}", args.r_max)));
        }
        if args.steps == 0 {
            return Err(CliError::Config("--steps must be at least 1".into()));
        }
        let cfg = RunConfig {
            dim,
            c_div: args.c,
            signature: args.signature.into(),
            branch: args.branch.into(),
            r_max: args.r_max,
            steps: args.steps,
            format: args.format,
            out: args.out.clone(),
        };
        if needs_profile {
            cfg.params()?;
        }
        Ok(cfg)
    }

    pub fn params(&self) -> CliResult<ProfileParams> {
        Ok(ProfileParams::new(self.dim, self.c_div, self.signature, self.branch)?)
    }

    /// `steps + 1` evenly spaced radii in `[0, r_max]`.
    pub fn radii(&self) -> Vec<f64> {
        grid(0.0, self.r_max, self.steps)
    }
}

/// `steps + 1` evenly spaced points from `a` to `b`.
pub fn grid(a: f64, b: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|k| a + (b - a) * k as f64 / steps as f64).collect()
}

pub fn check_step(h: Option<f64>) -> CliResult<Option<f64>> {
    match h {
        Some(h) if !(h.is_finite() && h > 0.0) => {
            Err(CliError::Config(format!("--fd-step must be positive and finite, got {h}")))
        }
        _ => Ok(h),
    }
}

pub fn check_tol(name: &str, tol: f64) -> CliResult<f64> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        Err(CliError::Config(format!("{name} must be a non-negative number, got {tol}")))
    }
}
