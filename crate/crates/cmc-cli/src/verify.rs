//! Verification suites. Every check reports a non-negative residual and
//! passes iff that residual is at most its tolerance.

use cmc_core::ball::cheeger_ratio;
use cmc_core::curvature::{
    exp_demo_mean_curvature, hyperboloid_field, lemma22_check, section2_sample, theorem14_pointwise, FdConfig,
    GradientSource,
};
use cmc_core::global::{
    cheeger_excess, foliation_check, theorem11_check, theorem14_global_check, theorem15_check, BoundSource,
    FoliationMode,
};
use cmc_core::profile::{sinh_power_integral, sinh_power_integral_recurrence, NormalizedIntegral};
use cmc_core::quadrature::integrate;
use cmc_core::{BallPoint, Base, Branch, Dimension, GraphField, ProfileParams, RadialProfile, Signature};
use serde::Serialize;

use crate::config::{check_step, check_tol, grid, Suite, VerifyArgs};
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Table};

/// Tolerance of inequality checks, relative to `max(1, |bound|)`.
pub const INEQUALITY_TOL: f64 = 1e-10;
/// Tolerance of the vary-d foliation check, in units in the last place.
pub const ULP_TOL: f64 = 4.0;
/// Smallest accepted `∂f/∂c` in the vary-c foliation check.
pub const MIN_C_DERIVATIVE: f64 = 1e-3;
/// Smallest accepted convergence order of the finite-difference curvature.
pub const MIN_ORDER: f64 = 1.8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub pass: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    pub samples: usize,
    /// Divergence-form constant of the family, when the check has one.
    pub c_div: Option<f64>,
    /// `‖H‖ = |c_div| / m`.
    pub c_norm: Option<f64>,
    /// Largest `‖∇f‖²` seen.
    pub b_eig: Option<f64>,
    /// Largest `‖∇f‖` seen.
    pub b_grad: Option<f64>,
}

impl VerificationReport {
    fn new(check: String, max_residual: f64, tolerance: f64, samples: usize) -> Self {
        VerificationReport {
            check,
            pass: max_residual <= tolerance,
            max_residual,
            tolerance,
            samples,
            c_div: None,
            c_norm: None,
            b_eig: None,
            b_grad: None,
        }
    }

    fn family(mut self, params: &ProfileParams) -> Self {
        self.c_div = Some(params.c_div());
        self.c_norm = Some(params.c_norm());
        self
    }

    fn gradient(mut self, b_grad: f64) -> Self {
        self.b_grad = Some(b_grad);
        self.b_eig = Some(b_grad * b_grad);
        self
    }
}

pub fn reports_table(reports: &[VerificationReport]) -> Table {
    let mut t = Table::new(&[
        "check",
        "pass",
        "max_residual",
        "tolerance",
        "samples",
        "c_div",
        "c_norm",
        "b_eig",
        "b_grad",
    ]);
    for r in reports {
        t.push(vec![
            Cell::Text(r.check.clone()),
            Cell::Text(r.pass.to_string()),
            r.max_residual.into(),
            r.tolerance.into(),
            Cell::Int(r.samples as u64),
            r.c_div.into(),
            r.c_norm.into(),
            r.b_eig.into(),
            r.b_grad.into(),
        ]);
    }
    t
}

/// Validated settings of a verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub dims: Vec<usize>,
    pub c: Option<f64>,
    pub fd_tol: f64,
    pub analytic_tol: f64,
    pub quad_tol: f64,
    pub fd_step: Option<f64>,
    pub grid: usize,
}

impl VerifyConfig {
    pub fn from_args(args: &VerifyArgs) -> CliResult<Self> {
        let dims = match args.m {
            Some(m) => vec![Dimension::new(m)?.get()],
            None => vec![2, 3, 5],
        };
        if let (Some(c), Some(m)) = (args.c, args.m) {
            if args.suite != Suite::Section2 && c.abs() > (m - 1) as f64 {
                // riemannian suites would have no admissible family
                ProfileParams::riemannian(m, c)?;
            }
        }
        if let Some(c) = args.c {
            if !c.is_finite() {
                return Err(CliError::Config(format!("--c must be finite, got {c}")));
            }
        }
        if args.grid < 2 {
            return Err(CliError::Config("--grid must be at least 2".into()));
        }
        Ok(VerifyConfig {
            suite: args.suite,
            dims,
            c: args.c,
            fd_tol: check_tol("--tol", args.tol)?,
            analytic_tol: check_tol("--analytic-tol", args.analytic_tol)?,
            quad_tol: check_tol("--quad-tol", args.quad_tol)?,
            fd_step: check_step(args.fd_step)?,
            grid: args.grid,
        })
    }

    fn cs(&self, m: usize, signature: Signature) -> Vec<f64> {
        let a = (m - 1) as f64;
        match self.c {
            Some(c) if signature == Signature::Riemannian && c.abs() > a => Vec::new(),
            Some(c) => vec![c],
            None => {
                let mut cs = vec![0.0, 0.5 * a, -0.5 * a, a, -a];
                if signature == Signature::Lorentzian {
                    cs.extend([2.0 * m as f64, -2.0 * m as f64]);
                }
                cs
            }
        }
    }

    fn families(&self, signature: Signature) -> Vec<ProfileParams> {
        let mut out = Vec::new();
        for &m in &self.dims {
            for c in self.cs(m, signature) {
                let dim = Dimension::new(m).expect("validated dimension");
                out.push(ProfileParams::new(dim, c, signature, Branch::Plus).expect("admissible family"));
            }
        }
        out
    }

    fn all_families(&self) -> Vec<ProfileParams> {
        let mut f = self.families(Signature::Riemannian);
        f.extend(self.families(Signature::Lorentzian));
        f
    }

    fn fd(&self) -> FdConfig {
        FdConfig { step: self.fd_step, gradient_step: self.fd_step, gradient: GradientSource::FiniteDifference }
    }
}

fn label(check: &str, params: &ProfileParams) -> String {
    format!("{check}[{} m={} c={}]", params.signature().as_str(), params.dim().get(), params.c_div())
}

fn direction(m: usize) -> Vec<f64> {
    (0..m).map(|i| 1.0 / (1.0 + i as f64)).collect()
}

fn violation(slack: f64, bound: f64) -> f64 {
    (-slack / bound.abs().max(1.0)).max(0.0)
}

pub fn run(cfg: &VerifyConfig) -> CliResult<Vec<VerificationReport>> {
    let suites: &[Suite] = match cfg.suite {
        Suite::All => &[Suite::Ode, Suite::Bounds, Suite::Curvature, Suite::Section2, Suite::Isoperimetric, Suite::Foliation],
        ref s => std::slice::from_ref(s),
    };
    let mut reports = Vec::new();
    for suite in suites {
        match suite {
            Suite::Ode => ode(cfg, &mut reports)?,
            Suite::Bounds => bounds(cfg, &mut reports)?,
            Suite::Curvature => curvature(cfg, &mut reports)?,
            Suite::Section2 => section2(cfg, &mut reports)?,
            Suite::Isoperimetric => isoperimetric(cfg, &mut reports)?,
            Suite::Foliation => foliation(cfg, &mut reports)?,
            Suite::All => unreachable!("expanded above"),
        }
    }
    Ok(reports)
}

fn ode(cfg: &VerifyConfig, out: &mut Vec<VerificationReport>) -> CliResult<()> {
    let radii = grid(0.01, 20.0, 199);
    for params in cfg.all_families() {
        let prof = RadialProfile::new(params);
        let (mut analytic, mut fd, mut b) = (0.0f64, 0.0f64, 0.0f64);
        for &r in &radii {
            let res = prof.ode_residual(r)?;
            analytic = analytic.max(res.relative());
            let h = 1e-5 * r;
            let wp = (prof.w(r + h) - prof.w(r - h)) / (2.0 * h);
            fd = fd.max((wp - res.rhs).abs() / res.scale);
            b = b.max(prof.w(r).abs());
        }
        out.push(
            VerificationReport::new(label("ode_residual", &params), analytic, cfg.analytic_tol, radii.len())
                .family(&params)
                .gradient(b),
        );
        out.push(
            VerificationReport::new(label("ode_residual_fd", &params), fd, cfg.fd_tol, radii.len())
                .family(&params)
                .gradient(b),
        );
    }
    Ok(())
}

fn bounds(cfg: &VerifyConfig, out: &mut Vec<VerificationReport>) -> CliResult<()> {
    const RADII: [f64; 7] = [0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0];
    for &m in &cfg.dims {
        let dim = Dimension::new(m)?;
        let p = m - 1;
        let u = NormalizedIntegral::new(p);
        let n = 10_000;
        let violations = (1..=n)
            .filter(|k| {
                let (v, comp) = u.value_and_complement(40.0 * *k as f64 / n as f64);
                !(comp > 0.0 && v <= 1.0 / p as f64)
            })
            .count();
        out.push(VerificationReport::new(format!("u_strict_bound[m={m}]"), violations as f64, 0.0, n));
        let limit = (u.value(40.0) - 1.0 / p as f64).abs();
        out.push(VerificationReport::new(format!("u_limit[m={m}]"), limit, cfg.analytic_tol, 1));

        let excess: Vec<f64> = RADII.iter().map(|&r| cheeger_excess(r, dim)).collect();
        let ratios: Vec<f64> = RADII.iter().map(|&r| cheeger_ratio(r, dim)).collect();
        let bad = excess.windows(2).filter(|w| !(w[1] < w[0])).count()
            + ratios.windows(2).filter(|w| !(w[1] <= w[0])).count()
            + excess.iter().filter(|e| !(**e > 0.0)).count();
        out.push(VerificationReport::new(format!("cheeger_monotone[m={m}]"), bad as f64, 0.0, RADII.len()));
        let limit = (ratios[RADII.len() - 1] - p as f64).abs();
        out.push(VerificationReport::new(format!("cheeger_limit[m={m}]"), limit, cfg.analytic_tol, 1));
    }

    let (mut rec, mut deriv, mut samples) = (0.0f64, 0.0f64, 0usize);
    for p in 0..=12usize {
        for r in grid(0.1, 10.0, 33) {
            let scale = (r * r.sinh().powi(p as i32)).max(1.0);
            let quad = integrate(|t: f64| t.sinh().powi(p as i32), 0.0, r, cfg.quad_tol * scale).value;
            rec = rec.max((sinh_power_integral_recurrence(p, r) - quad).abs() / quad.abs().max(1.0));
            let h = 1e-5;
            let d = (sinh_power_integral(p, r + h) - sinh_power_integral(p, r - h)) / (2.0 * h);
            let s = r.sinh().powi(p as i32);
            deriv = deriv.max((d - s).abs() / s.max(1.0));
            samples += 1;
        }
    }
    out.push(VerificationReport::new("sinh_power_recurrence".into(), rec, cfg.analytic_tol, samples));
    out.push(VerificationReport::new("sinh_power_derivative".into(), deriv, cfg.fd_tol, samples));
    Ok(())
}

fn curvature(cfg: &VerifyConfig, out: &mut Vec<VerificationReport>) -> CliResult<()> {
    let fd = cfg.fd();
    let radii = grid(0.1, 5.0, cfg.grid - 1);
    for params in cfg.all_families() {
        let m = params.dim().get();
        let field = GraphField::radial(params);
        let (mut dev, mut b) = (0.0f64, 0.0f64);
        for &r in &radii {
            let x = BallPoint::at_distance(&direction(m), r)?;
            let s = field.sample(x.coords(), &fd)?;
            dev = dev.max((s.mc_scalar - params.divergence_constant()).abs());
            b = b.max(s.b_grad);
        }
        out.push(
            VerificationReport::new(label("mean_curvature", &params), dev, cfg.fd_tol, radii.len())
                .family(&params)
                .gradient(b),
        );
        if params.c_div() != 0.0 && cfg.fd_step.is_none() {
            // second order: errors at halved steps shrink by ~4
            let x = BallPoint::at_distance(&direction(m), 1.0)?;
            let scale = 1.0 - x.norm();
            let errs = [0.04, 0.02, 0.01]
                .iter()
                .map(|s| {
                    let h = field.mean_curvature_scalar(x.coords(), &fd.with_step(s * scale))?;
                    Ok((h - params.c_div()).abs())
                })
                .collect::<CliResult<Vec<f64>>>()?;
            let order = errs.windows(2).map(|w| (w[0] / w[1]).log2()).fold(f64::INFINITY, f64::min);
            out.push(
                VerificationReport::new(label("fd_order_deficit", &params), (MIN_ORDER - order).max(0.0), 0.0, 3)
                    .family(&params),
            );
        }
    }

    let c_div = cfg.c.filter(|c| *c != 0.0).unwrap_or(1.5);
    for (k, m) in [(2, 2), (1, 3), (3, 3)] {
        let field = hyperboloid_field(k, Dimension::new(m)?, c_div)?;
        let (mut dev, mut b) = (0.0f64, 0.0f64);
        for t in grid(-1.0, 1.0, 4) {
            let x: Vec<f64> = (0..m).map(|i| t * (1.0 - 0.3 * i as f64)).collect();
            let s = field.sample(&x, &FdConfig::default())?;
            dev = dev.max((s.mc_scalar - c_div.abs()).abs());
            b = b.max(s.b_grad);
        }
        let mut rep = VerificationReport::new(format!("hyperboloid[k={k} m={m} c={c_div}]"), dev, cfg.fd_tol, 5)
            .gradient(b);
        rep.c_div = Some(c_div);
        rep.c_norm = Some(c_div.abs() / m as f64);
        out.push(rep);
    }

    let field = GraphField::exp_demo(Signature::Riemannian);
    let xs = grid(-5.0, 3.0, 80);
    let (mut dev, mut b) = (0.0f64, 0.0f64);
    for &x in &xs {
        let s = field.sample(&[x, 0.0], &fd)?;
        dev = dev.max((s.mc_scalar - exp_demo_mean_curvature(x)).abs());
        b = b.max(s.b_grad);
    }
    out.push(VerificationReport::new("exp_demo".into(), dev, cfg.fd_tol, xs.len()).gradient(b));

    let slice = GraphField::slice(Dimension::new(3)?, 1.0, Base::HyperbolicBall, Signature::Lorentzian);
    let h = slice.mean_curvature_scalar(&[0.2, -0.1, 0.3], &fd)?;
    out.push(VerificationReport::new("slice".into(), h.abs(), cfg.fd_tol, 1).gradient(0.0));
    Ok(())
}

fn section2(cfg: &VerifyConfig, out: &mut Vec<VerificationReport>) -> CliResult<()> {
    for params in cfg.families(Signature::Lorentzian) {
        let m = params.dim().get();
        let c2 = params.c_div() * params.c_div();
        let radii = grid(0.0, 3.0, 19);
        let (mut div, mut lemma, mut b) = (0.0f64, 0.0f64, 0.0f64);
        for &r in &radii {
            let x = if r == 0.0 { BallPoint::origin(params.dim()) } else { BallPoint::at_distance(&direction(m), r)? };
            let s = section2_sample(&params, &x, cfg.fd_step)?;
            div = div.max((s.div_z - c2).abs());
            let rep = lemma22_check(&s, s.b_eig, params.dim(), INEQUALITY_TOL);
            lemma = lemma.max(violation(rep.z_slack, rep.z_bound)).max(violation(rep.w_slack, rep.w_bound));
            b = b.max(s.grad_norm);
        }
        out.push(
            VerificationReport::new(label("div_z", &params), div, cfg.fd_tol, radii.len())
                .family(&params)
                .gradient(b),
        );
        out.push(
            VerificationReport::new(label("z_w_bounds", &params), lemma, INEQUALITY_TOL, radii.len())
                .family(&params)
                .gradient(b),
        );

        let radii = grid(0.1, 5.0, cfg.grid - 1);
        let (mut pointwise, mut b) = (0.0f64, 0.0f64);
        for &r in &radii {
            let rep = theorem14_pointwise(&params, r)?;
            pointwise = pointwise.max(violation(rep.lhs - rep.rhs, rep.rhs));
            b = b.max(rep.b_eig.sqrt());
        }
        out.push(
            VerificationReport::new(label("hessian_pointwise", &params), pointwise, INEQUALITY_TOL, radii.len())
                .family(&params)
                .gradient(b),
        );
        let at0 = theorem14_pointwise(&params, 0.0)?;
        out.push(
            VerificationReport::new(label("hessian_origin", &params), (at0.lhs - at0.rhs).abs(), cfg.analytic_tol, 1)
                .family(&params)
                .gradient(0.0),
        );
        let mut global = 0.0f64;
        for r in [0.5, 1.0, 3.0] {
            let rep = theorem14_global_check(params.dim(), params.c_div(), r, 400)?;
            global = global.max(violation(rep.rhs - rep.lhs, rep.rhs));
        }
        out.push(VerificationReport::new(label("hessian_global", &params), global, INEQUALITY_TOL, 3).family(&params));
    }
    Ok(())
}

fn isoperimetric(cfg: &VerifyConfig, out: &mut Vec<VerificationReport>) -> CliResult<()> {
    const RADII: [f64; 7] = [0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0];
    for params in cfg.families(Signature::Riemannian) {
        let bad = RADII
            .iter()
            .map(|&r| theorem11_check(params.dim(), params.c_div(), r))
            .collect::<Result<Vec<_>, _>>()?
            .iter()
            .filter(|rep| !(rep.slack > 0.0))
            .count();
        out.push(
            VerificationReport::new(label("isoperimetric_strict", &params), bad as f64, 0.0, RADII.len())
                .family(&params),
        );
    }
    for params in cfg.families(Signature::Lorentzian) {
        let (mut gap, mut flux, mut b) = (0.0f64, 0.0f64, 0.0f64);
        for r in [0.5, 1.0, 3.0] {
            let rep = theorem15_check(params.dim(), params.c_div(), r, BoundSource::Analytic { grid: 200 })?;
            gap = gap.max((rep.lhs - rep.rhs).abs());
            b = b.max(rep.b_d.unwrap_or(0.0));
            let t14 = theorem14_global_check(params.dim(), params.c_div(), r, 10)?;
            flux = flux.max(t14.flux_deviation);
        }
        out.push(
            VerificationReport::new(label("isoperimetric_saturation", &params), gap, cfg.analytic_tol, 3)
                .family(&params)
                .gradient(b),
        );
        out.push(
            VerificationReport::new(label("boundary_flux", &params), flux, cfg.fd_tol, 3)
                .family(&params)
                .gradient(b),
        );
    }
    Ok(())
}

fn foliation(cfg: &VerifyConfig, out: &mut Vec<VerificationReport>) -> CliResult<()> {
    let radii = [0.5, 1.0, 2.0];
    for &m in &cfg.dims {
        let dim = Dimension::new(m)?;
        let mf = m as f64;
        for signature in [Signature::Riemannian, Signature::Lorentzian] {
            let c = cfg.c.filter(|c| signature == Signature::Lorentzian || c.abs() <= mf - 1.0).unwrap_or(0.5 * (mf - 1.0));
            let rep = foliation_check(dim, signature, FoliationMode::VaryD, c, &radii, &grid(-2.0, 2.0, 8))?;
            let ulps = rep.separation_error.max(rep.coverage_error) + if rep.monotone { 0.0 } else { f64::INFINITY };
            out.push(VerificationReport::new(
                format!("foliation_vary_d[{} m={m} c={c}]", signature.as_str()),
                ulps,
                ULP_TOL,
                rep.samples.len(),
            ));

            let cs = match signature {
                Signature::Riemannian => grid(1.0 - mf, mf - 1.0, 8),
                Signature::Lorentzian => grid(-2.0 * mf, 2.0 * mf, 8),
            };
            let rep = foliation_check(dim, signature, FoliationMode::VaryC, 0.0, &radii, &cs)?;
            let deficit = (MIN_C_DERIVATIVE - rep.min_c_derivative).max(0.0) + if rep.monotone { 0.0 } else { 1.0 };
            out.push(VerificationReport::new(
                format!("foliation_vary_c[{} m={m}]", signature.as_str()),
                deficit,
                0.0,
                rep.samples.len(),
            ));
        }
    }
    Ok(())
}
