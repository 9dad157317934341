//! The table-producing subcommands.

use cmc_core::curvature::{hyperboloid_field, FdConfig, GradientSource};
use cmc_core::global::{foliation_check, theorem11_check, theorem15_check, BoundSource, FoliationMode};
use cmc_core::{BallPoint, Base, GeodesicBall, GraphField, RadialProfile, Signature};

use crate::config::{
    check_step, check_tol, grid, CurvatureArgs, FamilyArg, FoliationArgs, FoliationModeArg, IsoperimetricArgs,
    ProfileArgs, RunConfig, ANALYTIC_TOL,
};
use crate::error::{CliError, CliResult, EXIT_FAIL, EXIT_PASS};
use crate::output::{Cell, Table};

/// A finished table plus the exit code and any summary lines for stderr.
#[derive(Debug)]
pub struct CommandOutput {
    pub table: Table,
    pub notes: Vec<String>,
    pub exit_code: i32,
}

impl CommandOutput {
    fn ok(table: Table) -> Self {
        CommandOutput { table, notes: Vec::new(), exit_code: EXIT_PASS }
    }
}

/// Rows `(r, I_{m-1}, u, w, phi, w_prime, ode_residual)`; the residual is
/// relative and taken as its limit 0 at `r = 0`.
pub fn profile(args: &ProfileArgs) -> CliResult<(RunConfig, CommandOutput)> {
    let cfg = RunConfig::from_common(&args.common, true)?;
    let prof = RadialProfile::new(cfg.params()?);
    let mut table = Table::new(&["r", "integral", "u", "w", "phi", "w_prime", "ode_residual"]);
    for r in cfg.radii() {
        let e = prof.evaluate(r);
        let residual = if r > 0.0 { prof.ode_residual(r)?.relative() } else { 0.0 };
        table.push(vec![
            e.r.into(),
            e.integral.into(),
            e.u.into(),
            e.w.into(),
            e.phi.into(),
            e.w_prime.into(),
            residual.into(),
        ]);
    }
    Ok((cfg, CommandOutput::ok(table)))
}

fn axis_point(m: usize, t: f64) -> Vec<f64> {
    let mut x = vec![0.0; m];
    x[0] = t;
    x
}

/// Rows `(x_1..x_m, grad_norm, b_eig, b_grad, mc_scalar, h_norm, hess_norm)`.
///
/// Ball families are sampled along the first axis at hyperbolic radii in
/// `[0, r_max]`; euclidean families at `x_1` in `[-r_max, r_max]`.
pub fn curvature(args: &CurvatureArgs) -> CliResult<(RunConfig, CommandOutput)> {
    let needs_profile = args.family == FamilyArg::Radial;
    let cfg = RunConfig::from_common(&args.common, needs_profile)?;
    let step = check_step(args.fd_step)?;
    let tol = check_tol("--tol", args.tol)?;
    let m = cfg.dim.get();
    let (field, expected) = match args.family {
        FamilyArg::Radial => {
            let params = cfg.params()?;
            (GraphField::radial(params), Some(params.divergence_constant()))
        }
        FamilyArg::Slice => (GraphField::slice(cfg.dim, 0.0, Base::HyperbolicBall, cfg.signature), Some(0.0)),
        FamilyArg::ExpDemo => {
            if m != 2 {
                return Err(CliError::Config(format!("exp-demo is a graph over R^2, got --m {m}")));
            }
            (GraphField::exp_demo(cfg.signature), None)
        }
        FamilyArg::Hyperboloid => {
            if cfg.signature != Signature::Lorentzian {
                return Err(CliError::Config("hyperboloid requires --signature lorentzian".into()));
            }
            (hyperboloid_field(args.k, cfg.dim, cfg.c_div)?, Some(cfg.c_div.abs()))
        }
    };
    let fd = FdConfig {
        step,
        gradient_step: step,
        gradient: if args.fd_gradient { GradientSource::FiniteDifference } else { GradientSource::Auto },
    };
    let points: Vec<Vec<f64>> = match field.base() {
        Base::HyperbolicBall => cfg
            .radii()
            .into_iter()
            .map(|r| if r == 0.0 { Ok(vec![0.0; m]) } else { Ok(BallPoint::at_distance(&axis_point(m, 1.0), r)?.coords().to_vec()) })
            .collect::<CliResult<_>>()?,
        Base::Euclidean => grid(-cfg.r_max, cfg.r_max, cfg.steps).into_iter().map(|t| axis_point(m, t)).collect(),
    };

    let mut columns: Vec<String> = (1..=m).map(|i| format!("x_{i}")).collect();
    columns.extend(["grad_norm", "b_eig", "b_grad", "mc_scalar", "h_norm", "hess_norm"].map(String::from));
    let mut table = Table { columns, rows: Vec::new() };
    let mut deviation = 0.0f64;
    for x in &points {
        let s = field.sample(x, &fd)?;
        if let Some(c) = expected {
            deviation = deviation.max((s.mc_scalar - c).abs());
        }
        let mut row: Vec<Cell> = x.iter().map(|v| Cell::Num(*v)).collect();
        row.extend([s.grad_norm, s.b_eig, s.b_grad, s.mc_scalar, s.h_norm, s.hess_norm].map(Cell::Num));
        table.push(row);
    }
    let mut out = CommandOutput::ok(table);
    if let Some(c) = expected {
        let pass = deviation <= tol;
        out.notes.push(format!(
            "max |mc_scalar - c_div| = {deviation:.3e} (c_div = {c}, tolerance {tol:e}): {}",
            if pass { "pass" } else { "FAIL" }
        ));
        if !pass {
            out.exit_code = EXIT_FAIL;
        }
    }
    Ok((cfg, out))
}

/// Rows `(radius, area, volume, ratio, c_norm, lhs, rhs, slack, b_d)` over
/// the radii `r_max·k/steps`, `k = 1..=steps`.
pub fn isoperimetric(args: &IsoperimetricArgs) -> CliResult<(RunConfig, CommandOutput)> {
    let cfg = RunConfig::from_common(&args.common, true)?;
    let mut table = Table::new(&["radius", "area", "volume", "ratio", "c_norm", "lhs", "rhs", "slack", "b_d"]);
    let mut pass = true;
    for &radius in &cfg.radii()[1..] {
        let rep = match cfg.signature {
            Signature::Riemannian => theorem11_check(cfg.dim, cfg.c_div, radius)?,
            Signature::Lorentzian => {
                theorem15_check(cfg.dim, cfg.c_div, radius, BoundSource::Analytic { grid: args.grid.max(1) })?
            }
        };
        pass &= match cfg.signature {
            Signature::Riemannian => rep.slack > 0.0,
            Signature::Lorentzian => rep.slack >= -ANALYTIC_TOL * rep.rhs.abs().max(1.0),
        };
        let ball = GeodesicBall::new(radius, cfg.dim)?;
        table.push(vec![
            radius.into(),
            ball.area().into(),
            ball.volume().into(),
            rep.ratio.into(),
            rep.c_norm.into(),
            rep.lhs.into(),
            rep.rhs.into(),
            rep.slack.into(),
            rep.b_d.into(),
        ]);
    }
    let mut out = CommandOutput::ok(table);
    if !pass {
        out.notes.push("isoperimetric inequality violated".into());
        out.exit_code = EXIT_FAIL;
    }
    Ok((cfg, out))
}

/// Leaf samples `(c, d, r, x, f, separation, dfdc)` through the points
/// `x = tanh(r/2) e_1` at radii in `[0, r_max]`.
///
/// `separation` is the height above the previous leaf at the same point;
/// `dfdc` the central difference of the height in `c` (vary-c only).
pub fn foliation(args: &FoliationArgs) -> CliResult<(RunConfig, CommandOutput)> {
    let cfg = RunConfig::from_common(&args.common, args.mode == FoliationModeArg::VaryD)?;
    if args.grid < 2 {
        return Err(CliError::Config("--grid must be at least 2 leaves".into()));
    }
    let mf = cfg.dim.get() as f64;
    let (mode, fixed, lo, hi) = match args.mode {
        FoliationModeArg::VaryD => (FoliationMode::VaryD, cfg.c_div, -2.0, 2.0),
        FoliationModeArg::VaryC => {
            let (lo, hi) = match cfg.signature {
                Signature::Riemannian => (1.0 - mf, mf - 1.0),
                Signature::Lorentzian => (-2.0 * mf, 2.0 * mf),
            };
            (FoliationMode::VaryC, args.d, lo, hi)
        }
    };
    let from = args.from.unwrap_or(lo);
    let to = args.to.unwrap_or(hi);
    if !(from < to) {
        return Err(CliError::Config(format!("--from must be below --to, got {from} and {to}")));
    }
    let params = grid(from, to, args.grid - 1);
    let rep = foliation_check(cfg.dim, cfg.signature, mode, fixed, &cfg.radii(), &params)?;

    let mut table = Table::new(&["c", "d", "r", "x", "f", "separation", "dfdc"]);
    let mut prev: Option<(f64, f64)> = None;
    for s in &rep.samples {
        let separation = match prev {
            Some((r, h)) if r == s.r => Some(s.height - h),
            _ => None,
        };
        prev = Some((s.r, s.height));
        table.push(vec![
            s.c.into(),
            s.d.into(),
            s.r.into(),
            (0.5 * s.r).tanh().into(),
            s.height.into(),
            separation.into(),
            s.c_derivative.into(),
        ]);
    }
    let pass = match mode {
        FoliationMode::VaryD => rep.monotone && rep.separation_error <= 4.0 && rep.coverage_error <= 2.0,
        FoliationMode::VaryC => rep.monotone && rep.min_c_derivative >= 1e-3,
    };
    let mut out = CommandOutput::ok(table);
    out.notes.push(format!(
        "{}: monotone {}, min separation {:.3e}, min df/dc {:.3e}",
        mode.as_str(),
        rep.monotone,
        rep.min_separation,
        rep.min_c_derivative
    ));
    if !pass {
        out.exit_code = EXIT_FAIL;
    }
    Ok((cfg, out))
}
