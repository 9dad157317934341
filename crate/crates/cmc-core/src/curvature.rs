//! Divergence-form mean curvature of graphs `Γ_f` over a conformally flat
//! base, for Riemannian (`g + dt²`) and Lorentzian (`g - dt²`) products:
//!
//! `m⟨H, ν⟩ = div_g(∇f / sqrt(1 ± ‖∇f‖²))`.
//!
//! For the Lorentzian case with one-dimensional target this module also
//! computes `W = tr_{g̃} ∇df` and `Z = W ∇f / (1 - ‖∇f‖²)`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::ball::{BallPoint, Dimension, GeodesicBall};
use crate::error::{Error, Result};
use crate::metric::{self, Base, Bilinear};
use crate::profile::{ProfileParams, RadialProfile, Signature};

/// Stencil points with `‖∇f‖_g >= 1 - SPACELIKE_EPS` are rejected.
pub const SPACELIKE_EPS: f64 = 1e-9;

pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum Family {
    /// `f = φ(r)` over the ball.
    Radial(ProfileParams),
    /// `f = sqrt(a² + x_1² + … + x_k²)` over `R^m`, `a = k / |c_div|`.
    Hyperboloid { k: usize, c_div: f64 },
    /// `f(x, y) = e^x` over `R²`.
    ExpDemo,
    /// `f ≡ level`.
    Slice { level: f64 },
    Custom(ScalarFn),
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Radial(p) => f.debug_tuple("Radial").field(p).finish(),
            Family::Hyperboloid { k, c_div } => {
                f.debug_struct("Hyperboloid").field("k", k).field("c_div", c_div).finish()
            }
            Family::ExpDemo => f.write_str("ExpDemo"),
            Family::Slice { level } => f.debug_struct("Slice").field("level", level).finish(),
            Family::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// Where gradients of `f` come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GradientSource {
    /// Analytic when the family provides one, finite differences otherwise.
    #[default]
    Auto,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FdConfig {
    /// Overrides the outer (divergence / Hessian) step.
    pub step: Option<f64>,
    /// Overrides the step of finite-difference gradients.
    pub gradient_step: Option<f64>,
    pub gradient: GradientSource,
}

impl FdConfig {
    pub fn finite_difference() -> Self {
        FdConfig { gradient: GradientSource::FiniteDifference, ..Default::default() }
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.step = Some(h);
        self.gradient_step = Some(h);
        self
    }
}

/// A scalar graph function on a base domain.
#[derive(Debug, Clone)]
pub struct GraphField {
    family: Family,
    base: Base,
    signature: Signature,
    dim: Dimension,
    profile: Option<RadialProfile>,
}

impl GraphField {
    pub fn radial(params: ProfileParams) -> Self {
        GraphField {
            family: Family::Radial(params),
            base: Base::HyperbolicBall,
            signature: params.signature(),
            dim: params.dim(),
            profile: Some(RadialProfile::new(params)),
        }
    }

    pub fn slice(dim: Dimension, level: f64, base: Base, signature: Signature) -> Self {
        GraphField { family: Family::Slice { level }, base, signature, dim, profile: None }
    }

    /// `f(x, y) = e^x` on the euclidean plane.
    pub fn exp_demo(signature: Signature) -> Self {
        GraphField {
            family: Family::ExpDemo,
            base: Base::Euclidean,
            signature,
            dim: Dimension::new(2).expect("2 is a valid dimension"),
            profile: None,
        }
    }

    pub fn custom(dim: Dimension, base: Base, signature: Signature, f: ScalarFn) -> Self {
        GraphField { family: Family::Custom(f), base, signature, dim, profile: None }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn has_analytic_gradient(&self) -> bool {
        !matches!(self.family, Family::Custom(_))
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim.get() {
            return Err(Error::DimensionMismatch { expected: self.dim.get(), found: x.len() });
        }
        Ok(())
    }

    pub fn value(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        self.base.check_point(x)?;
        Ok(match &self.family {
            Family::Radial(_) => {
                let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                self.profile.as_ref().expect("radial profile").phi(2.0 * n.atanh())
            }
            Family::Hyperboloid { k, c_div } => {
                let a = *k as f64 / c_div.abs();
                (a * a + x[..*k].iter().map(|v| v * v).sum::<f64>()).sqrt()
            }
            Family::ExpDemo => x[0].exp(),
            Family::Slice { level } => *level,
            Family::Custom(f) => f(x),
        })
    }

    /// Coordinate partials `∂_i f` when the family has them in closed form.
    pub fn analytic_differential(&self, x: &[f64]) -> Option<Vec<f64>> {
        match &self.family {
            Family::Radial(_) => Some(self.profile.as_ref()?.graph_differential(x)),
            Family::Hyperboloid { k, .. } => {
                let f = self.value(x).ok()?;
                Some(x.iter().enumerate().map(|(i, v)| if i < *k { v / f } else { 0.0 }).collect())
            }
            Family::ExpDemo => Some(alloc::vec![x[0].exp(), 0.0]),
            Family::Slice { .. } => Some(alloc::vec![0.0; x.len()]),
            Family::Custom(_) => None,
        }
    }

    /// Coordinate partials from the requested source.
    pub fn differential(&self, x: &[f64], source: GradientSource, h: Option<f64>) -> Result<Vec<f64>> {
        self.check_len(x)?;
        self.base.check_point(x)?;
        if source == GradientSource::Auto {
            if let Some(df) = self.analytic_differential(x) {
                return Ok(df);
            }
        }
        let h = h.unwrap_or_else(|| self.base.default_nested_step(x));
        metric::gradient_fd(self.base, |y| self.value(y), x, Some(h))
    }

    /// `‖∇f‖_g`, failing if a Lorentzian graph is not spacelike at `x`.
    fn checked_grad_norm(&self, x: &[f64], df: &[f64]) -> Result<f64> {
        let n = self.base.covector_norm(x, df);
        if self.signature == Signature::Lorentzian && !(n < 1.0 - SPACELIKE_EPS) {
            return Err(Error::Spacelike { grad_norm: n });
        }
        Ok(n)
    }

    /// `∇f / sqrt(1 ± ‖∇f‖²)` in coordinates.
    pub fn normalized_gradient(&self, x: &[f64], cfg: &FdConfig) -> Result<Vec<f64>> {
        let df = self.differential(x, cfg.gradient, cfg.gradient_step)?;
        let n = self.checked_grad_norm(x, &df)?;
        let q = match self.signature {
            Signature::Riemannian => 1.0 + n * n,
            Signature::Lorentzian => 1.0 - n * n,
        };
        let s = q.sqrt();
        Ok(self.base.raise(x, &df).into_iter().map(|v| v / s).collect())
    }

    fn outer_step(&self, x: &[f64], cfg: &FdConfig) -> f64 {
        cfg.step.unwrap_or_else(|| {
            if cfg.gradient == GradientSource::FiniteDifference || !self.has_analytic_gradient() {
                self.base.default_nested_step(x)
            } else {
                self.base.default_step(x)
            }
        })
    }

    /// `div_g(∇f / sqrt(1 ± ‖∇f‖²))` at `x`.
    pub fn mean_curvature_scalar(&self, x: &[f64], cfg: &FdConfig) -> Result<f64> {
        self.check_len(x)?;
        let h = self.outer_step(x, cfg);
        metric::divergence_g(self.base, |y| self.normalized_gradient(y, cfg), x, Some(h))
    }

    /// Covariant Hessian of `f`; differences of the analytic differential
    /// when available.
    pub fn hessian(&self, x: &[f64], cfg: &FdConfig) -> Result<Bilinear> {
        self.check_len(x)?;
        let analytic = cfg.gradient == GradientSource::Auto && self.has_analytic_gradient();
        if analytic {
            let h = cfg.step.unwrap_or_else(|| self.base.default_step(x));
            metric::covariant_hessian_from_gradient(
                self.base,
                |y| self.differential(y, GradientSource::Auto, None),
                x,
                Some(h),
            )
        } else {
            metric::covariant_hessian(self.base, |y| self.value(y), x, cfg.step)
        }
    }

    pub fn sample(&self, x: &[f64], cfg: &FdConfig) -> Result<CurvatureSample> {
        let df = self.differential(x, cfg.gradient, cfg.gradient_step)?;
        let grad_norm = self.checked_grad_norm(x, &df)?;
        let mc_scalar = self.mean_curvature_scalar(x, cfg)?;
        let lambda = self.base.conformal_factor(x);
        let hess_norm = self.hessian(x, cfg)?.g_norm(lambda);
        Ok(CurvatureSample {
            x: x.to_vec(),
            grad_norm,
            b_eig: grad_norm * grad_norm,
            b_grad: grad_norm,
            mc_scalar,
            h_norm: mc_scalar.abs() / self.dim.as_f64(),
            hess_norm,
        })
    }
}

/// `f(x) = sqrt(k²/(m² c²) + x_1² + … + x_k²)` with `c = c_div / m`, a
/// spacelike graph in Minkowski space `R^m × -R` with `div = |c_div|`.
pub fn hyperboloid_field(k: usize, m: Dimension, c_div: f64) -> Result<GraphField> {
    if k == 0 || k > m.get() {
        return Err(Error::Parameter(format!("hyperboloid rank k must be in 1..={}, got {k}", m.get())));
    }
    if c_div == 0.0 || !c_div.is_finite() {
        return Err(Error::Parameter(format!("hyperboloid needs a finite non-zero c, got {c_div}")));
    }
    Ok(GraphField {
        family: Family::Hyperboloid { k, c_div },
        base: Base::Euclidean,
        signature: Signature::Lorentzian,
        dim: m,
        profile: None,
    })
}

/// `d/dx (e^x / sqrt(1 + e^{2x})) = e^x (1 + e^{2x})^{-3/2}`.
pub fn exp_demo_mean_curvature(x: f64) -> f64 {
    let e = x.exp();
    e / (1.0 + e * e).powf(1.5)
}

/// Pointwise quantities of a graph at one base point.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSample {
    pub x: Vec<f64>,
    /// `‖∇f‖_g`.
    pub grad_norm: f64,
    /// `‖∇f‖²`, the largest eigenvalue of `f*h`.
    pub b_eig: f64,
    /// `‖∇f‖`, the bound used for `b_D`.
    pub b_grad: f64,
    /// `m⟨H, ν⟩`.
    pub mc_scalar: f64,
    /// `‖H‖ = |mc_scalar| / m`.
    pub h_norm: f64,
    /// `‖∇df‖`.
    pub hess_norm: f64,
}

/// `‖∇df‖` of a radial graph in closed form.
pub fn hessian_norm_radial(params: &ProfileParams, r: f64) -> f64 {
    RadialProfile::new(*params).hessian_norm(r)
}

/// Tolerance for reporting an inequality as holding: `lhs >= rhs - tol·max(1, |rhs|)`.
pub const INEQUALITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HessianBoundPointwise {
    pub r: f64,
    /// `‖∇df‖`.
    pub lhs: f64,
    /// `√m · c_norm · (1 - b_eig)²`.
    pub rhs: f64,
    pub b_eig: f64,
    pub c_norm: f64,
    pub holds: bool,
}

/// `‖∇df‖ >= √m ‖H‖ (1 - b)²` for a Lorentzian radial graph at radius `r`.
pub fn theorem14_pointwise(params: &ProfileParams, r: f64) -> Result<HessianBoundPointwise> {
    if params.signature() != Signature::Lorentzian {
        return Err(Error::Parameter("the Hessian lower bound is stated for spacelike graphs".into()));
    }
    let prof = RadialProfile::new(*params);
    let w = prof.w(r.max(0.0));
    let b_eig = w * w;
    let lhs = prof.hessian_norm(r);
    let rhs = params.dim().as_f64().sqrt() * params.c_norm() * (1.0 - b_eig).powi(2);
    Ok(HessianBoundPointwise {
        r,
        lhs,
        rhs,
        b_eig,
        c_norm: params.c_norm(),
        holds: lhs >= rhs - INEQUALITY_TOL * rhs.abs().max(1.0),
    })
}

/// `W`, `Z` and related norms of a Lorentzian radial graph at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionTwoSample {
    /// `W = tr_{g̃} ∇df`.
    pub w_trace: f64,
    /// Coordinate components of `Z = W ∇f / (1 - ‖∇f‖²)`.
    pub z: Vec<f64>,
    pub div_z: f64,
    pub z_norm: f64,
    pub w_norm: f64,
    pub hess_norm: f64,
    pub grad_norm: f64,
    pub b_eig: f64,
}

struct PointQuantities {
    w_trace: f64,
    z: Vec<f64>,
    hess_norm: f64,
    grad_norm: f64,
}

fn section2_point(field: &GraphField, y: &[f64], h: f64) -> Result<PointQuantities> {
    let base = field.base();
    let df = field.differential(y, GradientSource::Auto, None)?;
    let grad_norm = field.checked_grad_norm(y, &df)?;
    let s = 1.0 - grad_norm * grad_norm;
    let grad = base.raise(y, &df);
    let hess = field.hessian(y, &FdConfig { step: Some(h), ..Default::default() })?;
    let lambda = base.conformal_factor(y);
    // g̃^{ij} = g^{ij} + ∇^i f ∇^j f / (1 - ‖∇f‖²)
    let m = y.len();
    let mut w_trace = hess.g_trace(lambda);
    for i in 0..m {
        for j in 0..m {
            w_trace += grad[i] * grad[j] / s * hess.get(i, j);
        }
    }
    let z = grad.iter().map(|g| w_trace * g / s).collect();
    Ok(PointQuantities { w_trace, z, hess_norm: hess.g_norm(lambda), grad_norm })
}

/// `W`, `Z`, `div_g Z` for a Lorentzian radial family at `x`.
///
/// `∇df` comes from differences of the analytic differential and `div_g Z`
/// from differences of that, so the default step is the nested one.
pub fn section2_sample(params: &ProfileParams, x: &BallPoint, h: Option<f64>) -> Result<SectionTwoSample> {
    if params.signature() != Signature::Lorentzian {
        return Err(Error::Parameter("W and Z are computed for spacelike graphs".into()));
    }
    let field = GraphField::radial(*params);
    let xs = x.coords();
    let h = h.unwrap_or_else(|| Base::HyperbolicBall.default_nested_step(xs));
    let at = section2_point(&field, xs, h)?;
    let div_z = metric::divergence_g(Base::HyperbolicBall, |y| Ok(section2_point(&field, y, h)?.z), xs, Some(h))?;
    Ok(SectionTwoSample {
        w_trace: at.w_trace,
        z_norm: Base::HyperbolicBall.vector_norm(xs, &at.z),
        z: at.z,
        div_z,
        w_norm: at.w_trace.abs(),
        hess_norm: at.hess_norm,
        grad_norm: at.grad_norm,
        b_eig: at.grad_norm * at.grad_norm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZWBoundsReport {
    pub b_eig: f64,
    pub z_norm: f64,
    /// `sqrt(b) / (1 - b) · ‖W‖`.
    pub z_bound: f64,
    pub w_norm: f64,
    /// `√m / (1 - b) · ‖∇df‖`.
    pub w_bound: f64,
    pub z_slack: f64,
    pub w_slack: f64,
    pub holds: bool,
}

/// `‖Z‖ <= sqrt(b)/(1-b) ‖W‖` and `‖W‖ <= √m/(1-b) ‖∇df‖` with `b = b_eig`.
///
/// For a one-dimensional target `Z = W ∇f / (1 - ‖∇f‖²)`, so the first
/// inequality is an identity and its slack is zero up to rounding.
pub fn lemma22_check(sample: &SectionTwoSample, b_eig: f64, m: Dimension, tol: f64) -> ZWBoundsReport {
    let z_bound = b_eig.sqrt() / (1.0 - b_eig) * sample.w_norm;
    let w_bound = m.as_f64().sqrt() / (1.0 - b_eig) * sample.hess_norm;
    let z_slack = z_bound - sample.z_norm;
    let w_slack = w_bound - sample.w_norm;
    let holds = z_slack >= -tol * z_bound.max(1.0) && w_slack >= -tol * w_bound.max(1.0);
    ZWBoundsReport {
        b_eig,
        z_norm: sample.z_norm,
        z_bound,
        w_norm: sample.w_norm,
        w_bound,
        z_slack,
        w_slack,
        holds,
    }
}

/// `b_D = max ‖∇f‖_g` over sample points of the closed geodesic ball.
///
/// Points lie on `grid + 1` radii along the coordinate axes (both signs) and
/// the two main diagonals. On a euclidean base the ball radius is taken as
/// a euclidean radius.
pub fn spacelike_bound(field: &GraphField, ball: &GeodesicBall, grid: usize) -> Result<f64> {
    if field.signature() != Signature::Lorentzian {
        return Err(Error::Parameter("spacelike bound requires a lorentzian graph".into()));
    }
    let m = field.dim().get();
    let outer = match field.base() {
        Base::HyperbolicBall => ball.euclidean_radius(),
        Base::Euclidean => ball.radius(),
    };
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for i in 0..m {
        for s in [1.0, -1.0] {
            let mut d = alloc::vec![0.0; m];
            d[i] = s;
            dirs.push(d);
        }
    }
    let inv = 1.0 / (m as f64).sqrt();
    dirs.push(alloc::vec![inv; m]);
    dirs.push((0..m).map(|i| if i % 2 == 0 { inv } else { -inv }).collect());

    let grid = grid.max(1);
    let mut best = 0.0f64;
    let mut y = alloc::vec![0.0; m];
    for k in 0..=grid {
        let t = outer * k as f64 / grid as f64;
        for d in &dirs {
            for (yi, di) in y.iter_mut().zip(d) {
                *yi = di * t;
            }
            let df = field.differential(&y, GradientSource::Auto, None)?;
            best = best.max(field.checked_grad_norm(&y, &df)?);
        }
    }
    Ok(best)
}

/// `b_D` of a radial family on `B_R` from the profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSpacelikeBound {
    /// Largest `|w|` on the sampled radii of `[0, R]`.
    pub sampled: f64,
    /// `|w(R)|`.
    pub at_boundary: f64,
    /// Whether `|w|` was nondecreasing on the samples.
    pub monotone: bool,
}

impl RadialSpacelikeBound {
    /// `|w(R)|` when monotonicity was observed, the sampled maximum otherwise.
    pub fn value(&self) -> f64 {
        if self.monotone {
            self.at_boundary
        } else {
            self.sampled
        }
    }
}

pub fn radial_spacelike_bound(params: &ProfileParams, radius: f64, grid: usize) -> RadialSpacelikeBound {
    let prof = RadialProfile::new(*params);
    let grid = grid.max(1);
    let mut prev = 0.0f64;
    let mut sampled = 0.0f64;
    let mut monotone = true;
    for k in 0..=grid {
        let v = prof.w(radius * k as f64 / grid as f64).abs();
        if v < prev {
            monotone = false;
        }
        prev = v;
        sampled = sampled.max(v);
    }
    RadialSpacelikeBound { sampled, at_boundary: prof.w(radius).abs(), monotone }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Branch;

    fn dim(m: usize) -> Dimension {
        Dimension::new(m).unwrap()
    }

    fn point(m: usize, r: f64) -> Vec<f64> {
        let dir: Vec<f64> = (0..m).map(|i| if i % 2 == 0 { 1.0 } else { 0.5 }).collect();
        BallPoint::at_distance(&dir, r).unwrap().coords().to_vec()
    }

    #[test]
    fn slice_is_minimal() {
        for base in [Base::HyperbolicBall, Base::Euclidean] {
            let field = GraphField::slice(dim(3), 2.5, base, Signature::Lorentzian);
            let s = field.sample(&[0.1, -0.2, 0.3], &FdConfig::default()).unwrap();
            assert_eq!(s.mc_scalar, 0.0);
            assert_eq!(s.grad_norm, 0.0);
            assert_eq!(s.hess_norm, 0.0);
        }
    }

    #[test]
    fn radial_families_have_constant_divergence() {
        for (params, tol) in [
            (ProfileParams::riemannian(3, 1.0).unwrap(), 1e-6),
            (ProfileParams::lorentzian(3, 2.0).unwrap(), 1e-6),
            (ProfileParams::lorentzian(2, -4.0).unwrap(), 1e-6),
        ] {
            let field = GraphField::radial(params);
            for r in [0.3, 1.0, 3.0] {
                let x = point(params.dim().get(), r);
                let h = field.mean_curvature_scalar(&x, &FdConfig::default()).unwrap();
                assert!((h - params.c_div()).abs() < tol, "{params:?} r={r}: {h}");
            }
        }
    }

    #[test]
    fn minus_branch_flips_divergence() {
        let params = ProfileParams::new(dim(3), 1.0, Signature::Riemannian, Branch::Minus).unwrap();
        let field = GraphField::radial(params);
        let h = field.mean_curvature_scalar(&point(3, 1.2), &FdConfig::default()).unwrap();
        assert!((h - params.divergence_constant()).abs() < 1e-6);
        assert_eq!(params.divergence_constant(), -1.0);
    }

    #[test]
    fn analytic_and_fd_gradients_agree() {
        let field = GraphField::radial(ProfileParams::lorentzian(3, 2.0).unwrap());
        let x = point(3, 1.5);
        let a = field.differential(&x, GradientSource::Auto, None).unwrap();
        let n = field.differential(&x, GradientSource::FiniteDifference, None).unwrap();
        for (ai, ni) in a.iter().zip(&n) {
            assert!((ai - ni).abs() <= 1e-7 * ai.abs().max(1.0), "{a:?} {n:?}");
        }
    }

    #[test]
    fn hyperboloid_has_constant_divergence() {
        for (k, m) in [(2, 2), (1, 3), (3, 3)] {
            let field = hyperboloid_field(k, dim(m), 1.5).unwrap();
            for t in [-1.0, 0.0, 0.7] {
                let x = alloc::vec![t; m];
                let h = field.mean_curvature_scalar(&x, &FdConfig::default()).unwrap();
                assert!((h - 1.5).abs() < 1e-6, "k={k} m={m}: {h}");
            }
        }
        assert!(hyperboloid_field(0, dim(2), 1.0).is_err());
        assert!(hyperboloid_field(3, dim(2), 1.0).is_err());
        assert!(hyperboloid_field(1, dim(2), 0.0).is_err());
    }

    #[test]
    fn exp_demo_matches_closed_form() {
        let field = GraphField::exp_demo(Signature::Riemannian);
        let h = field.mean_curvature_scalar(&[0.0, 0.0], &FdConfig::finite_difference()).unwrap();
        assert!((h - 0.353_553_390_593_273_8).abs() < 1e-6);
        assert!((exp_demo_mean_curvature(0.0) - 0.5f64.powf(1.5)).abs() < 1e-15);
    }

    #[test]
    fn exp_demo_is_not_spacelike() {
        let field = GraphField::exp_demo(Signature::Lorentzian);
        let err = field.sample(&[0.5, 0.0], &FdConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Spacelike { .. }), "{err:?}");
    }

    #[test]
    fn custom_matches_builtin() {
        let params = ProfileParams::riemannian(2, 1.0).unwrap();
        let f: ScalarFn = Arc::new(|x: &[f64]| {
            let n2: f64 = x.iter().map(|v| v * v).sum();
            2.0 / (1.0 - n2).sqrt() - 2.0
        });
        let custom = GraphField::custom(dim(2), Base::HyperbolicBall, Signature::Riemannian, f);
        let builtin = GraphField::radial(params);
        let x = [0.3, 0.2];
        assert!((custom.value(&x).unwrap() - builtin.value(&x).unwrap()).abs() < 1e-12);
        let h = custom.mean_curvature_scalar(&x, &FdConfig::default()).unwrap();
        assert!((h - 1.0).abs() < 1e-5, "{h}");
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let field = GraphField::radial(ProfileParams::riemannian(3, 1.0).unwrap());
        assert!(matches!(
            field.value(&[0.1, 0.1]),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn hessian_bound_is_tight_at_origin() {
        let params = ProfileParams::lorentzian(3, 2.0).unwrap();
        let at0 = theorem14_pointwise(&params, 0.0).unwrap();
        assert!((at0.lhs - at0.rhs).abs() < 1e-8 && at0.holds, "{at0:?}");
        for r in [0.1, 1.0, 4.0] {
            let rep = theorem14_pointwise(&params, r).unwrap();
            assert!(rep.holds && rep.lhs > rep.rhs, "{rep:?}");
        }
        assert!(theorem14_pointwise(&ProfileParams::riemannian(3, 1.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn z_divergence_and_bounds() {
        let params = ProfileParams::lorentzian(3, 2.0).unwrap();
        let x = BallPoint::at_distance(&[1.0, 0.0, 0.0], 1.0).unwrap();
        let s = section2_sample(&params, &x, None).unwrap();
        assert!((s.div_z - 4.0).abs() < 1e-4, "{s:?}");
        let rep = lemma22_check(&s, s.b_eig, params.dim(), 1e-10);
        assert!(rep.holds && rep.w_slack > 0.0, "{rep:?}");
        assert!(rep.z_slack.abs() <= 1e-12 * rep.z_bound.max(1.0));
    }

    #[test]
    fn radial_bound_is_boundary_value() {
        let params = ProfileParams::lorentzian(3, 2.0).unwrap();
        let b = radial_spacelike_bound(&params, 2.0, 100);
        assert!(b.monotone && b.value() < 1.0);
        let ball = GeodesicBall::new(2.0, params.dim()).unwrap();
        let sampled = spacelike_bound(&GraphField::radial(params), &ball, 20).unwrap();
        assert!((sampled - b.value()).abs() < 1e-9, "{sampled} {b:?}");
    }
}
