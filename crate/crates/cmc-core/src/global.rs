//! Domain-level checks on geodesic balls `B_R` about the origin:
//! isoperimetric bounds on the mean curvature, the flux inequality behind
//! the Hessian bound, and the two foliations of `H^m × R` by radial leaves.

use alloc::format;
use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::ball::{ball_area, ball_volume, BallPoint, Dimension, GeodesicBall};
use crate::curvature::{radial_spacelike_bound, section2_sample, spacelike_bound, GraphField};
use crate::error::{Error, Result};
use crate::metric::Base;
use crate::profile::{Branch, NormalizedIntegral, ProfileParams, RadialProfile, Signature};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoperimetricReport {
    pub m: Dimension,
    pub c_div: f64,
    pub c_norm: f64,
    pub signature: Signature,
    pub radius: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `A(∂B_R) / V(B_R)`.
    pub ratio: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    /// `b_D`, for the Lorentzian bound.
    pub b_d: Option<f64>,
}

/// `‖H‖ <= A(∂B_R) / (m V(B_R))` for the Riemannian family of constant `c_div`.
///
/// Since `A/V = 1/u(R)` and `u < 1/(m-1)`, the slack is positive for every
/// admissible `c_div` and finite `R`. It is evaluated as
/// `((m - 1 - |c_div|) + excess) / m` with [`cheeger_excess`], which keeps it
/// resolvable at large `R`.
pub fn theorem11_check(m: Dimension, c_div: f64, radius: f64) -> Result<IsoperimetricReport> {
    let params = ProfileParams::new(m, c_div, Signature::Riemannian, Branch::Plus)?;
    let ball = GeodesicBall::new(radius, m)?;
    let ratio = ball.cheeger_ratio();
    let mf = m.get() as f64;
    let lhs = params.c_norm();
    let rhs = ratio / mf;
    let slack = ((mf - 1.0 - c_div.abs()) + cheeger_excess(radius, m)) / mf;
    Ok(IsoperimetricReport {
        m,
        c_div,
        c_norm: lhs,
        signature: Signature::Riemannian,
        radius,
        lhs,
        rhs,
        ratio,
        slack,
        b_d: None,
    })
}

impl IsoperimetricReport {
    /// Strict inequality, as expected on finite balls.
    pub fn strict(&self) -> bool {
        self.slack > 0.0
    }
}

/// How `b_D = max ‖∇f‖` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSource {
    /// `|w(R)|` after checking monotonicity of `|w|` on `grid` radii.
    Analytic { grid: usize },
    /// Maximum of `‖∇f‖_g` over sampled points of the closed ball.
    Sampled { grid: usize },
}

/// `min ‖H‖ <= (1/m) b_D / sqrt(1 - b_D²) · A/V` for the Lorentzian family.
///
/// The radial family attains equality on `B_R`: `b_D / sqrt(1 - b_D²) =
/// |c| u(R)` and `A/V = 1/u(R)`.
pub fn theorem15_check(m: Dimension, c_div: f64, radius: f64, source: BoundSource) -> Result<IsoperimetricReport> {
    let params = ProfileParams::new(m, c_div, Signature::Lorentzian, Branch::Plus)?;
    let ball = GeodesicBall::new(radius, m)?;
    let b_d = match source {
        BoundSource::Analytic { grid } => radial_spacelike_bound(&params, radius, grid).value(),
        BoundSource::Sampled { grid } => spacelike_bound(&GraphField::radial(params), &ball, grid)?,
    };
    let ratio = ball.cheeger_ratio();
    let mf = m.get() as f64;
    let lhs = params.c_norm();
    let rhs = b_d / (1.0 - b_d * b_d).sqrt() * ratio / mf;
    Ok(IsoperimetricReport {
        m,
        c_div,
        c_norm: lhs,
        signature: Signature::Lorentzian,
        radius,
        lhs,
        rhs,
        ratio,
        slack: rhs - lhs,
        b_d: Some(b_d),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HessianFluxReport {
    pub m: Dimension,
    pub c_div: f64,
    pub c_norm: f64,
    pub radius: f64,
    /// `m² ‖H‖² V(B_R) = c_div² V(B_R)`.
    pub lhs: f64,
    /// `A(∂B_R) · sup_{B_R} sqrt(m b)/(1 - b)² ‖∇df‖` with `b = b_eig`.
    pub rhs: f64,
    pub sup_factor: f64,
    /// `∫_{∂B_R} g(Z, n)` from finite-difference `Z`.
    pub flux: f64,
    /// `|flux - lhs| / max(1, lhs)`.
    pub flux_deviation: f64,
    pub holds: bool,
}

/// The flux inequality `c² V(D) = ∫_{∂D} g(Z, n) <= A(∂D) sup sqrt(mb)/(1-b)² ‖∇df‖`
/// on `D = B_R` for the Lorentzian radial family.
///
/// The supremum is taken over `grid + 1` radii of `[0, R]` using the closed
/// forms. `Z` is radial and the integrand is constant on `∂B_R`, so the flux
/// is the mean of `g(Z, n)` over the `2m` axis points times the area.
pub fn theorem14_global_check(m: Dimension, c_div: f64, radius: f64, grid: usize) -> Result<HessianFluxReport> {
    let params = ProfileParams::new(m, c_div, Signature::Lorentzian, Branch::Plus)?;
    GeodesicBall::new(radius, m)?;
    let prof = RadialProfile::new(params);
    let mf = m.get() as f64;
    let grid = grid.max(1);
    let sup_factor = (0..=grid)
        .map(|k| {
            let r = radius * k as f64 / grid as f64;
            let b = prof.w(r).powi(2);
            (mf * b).sqrt() / (1.0 - b).powi(2) * prof.hessian_norm(r)
        })
        .fold(0.0f64, f64::max);
    let area = ball_area(radius, m);
    let volume = ball_volume(radius, m);
    let lhs = c_div * c_div * volume;
    let rhs = area * sup_factor;

    let mut flux_sum = 0.0;
    let mut count = 0usize;
    for i in 0..m.get() {
        for s in [1.0, -1.0] {
            let mut dir = alloc::vec![0.0; m.get()];
            dir[i] = s;
            let x = BallPoint::at_distance(&dir, radius)?;
            let sample = section2_sample(&params, &x, None)?;
            // outward unit normal is ∇r = λ^{-1} x/|x|, so g(Z, n) = λ Z·x/|x|
            let lambda = Base::HyperbolicBall.conformal_factor(x.coords());
            let radial: f64 = sample.z.iter().zip(x.coords()).map(|(z, xi)| z * xi).sum::<f64>() / x.norm();
            flux_sum += lambda * radial;
            count += 1;
        }
    }
    let flux = area * flux_sum / count as f64;
    Ok(HessianFluxReport {
        m,
        c_div,
        c_norm: params.c_norm(),
        radius,
        lhs,
        rhs,
        sup_factor,
        flux,
        flux_deviation: (flux - lhs).abs() / lhs.abs().max(1.0),
        holds: lhs <= rhs * (1.0 + 1e-12),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoliationMode {
    /// Fixed `c`, leaves `Γ_{f_c + d}` for varying `d`.
    VaryD,
    /// Fixed `d`, leaves `Γ_{f_c + d}` for varying `c`.
    VaryC,
}

impl FoliationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FoliationMode::VaryD => "vary_d",
            FoliationMode::VaryC => "vary_c",
        }
    }
}

/// One leaf height `f_c(x) + d` at hyperbolic radius `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeafSample {
    pub c: f64,
    pub d: f64,
    pub r: f64,
    pub height: f64,
    /// `∂f_c/∂c` at this point (vary-c mode only).
    pub c_derivative: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoliationReport {
    pub mode: FoliationMode,
    pub signature: Signature,
    pub samples: Vec<LeafSample>,
    /// Heights strictly increasing along the parameter grid at every radius.
    pub monotone: bool,
    /// Smallest height gap between neighbouring leaves.
    pub min_separation: f64,
    /// Vary-d: largest `| |Δheight| - |Δd| |`; vary-c: 0.
    pub separation_error: f64,
    /// Vary-d: largest error recovering `d = t - f_c(x)` from a height `t`.
    pub coverage_error: f64,
    /// Vary-c: smallest central-difference `∂f_c/∂c`.
    pub min_c_derivative: f64,
}

/// Relative step for central differences in `c`.
pub const C_STEP: f64 = 1e-4;

/// Samples the leaves through the points at radii `radii` and checks the
/// foliation property of `mode`.
///
/// `fixed` is `c` for [`FoliationMode::VaryD`] and `d` for
/// [`FoliationMode::VaryC`]; `grid` holds the varying parameter and must be
/// strictly increasing.
pub fn foliation_check(
    m: Dimension,
    signature: Signature,
    mode: FoliationMode,
    fixed: f64,
    radii: &[f64],
    grid: &[f64],
) -> Result<FoliationReport> {
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Parameter("foliation parameter grid must be strictly increasing".into()));
    }
    if let Some(r) = radii.iter().find(|r| !(**r >= 0.0)) {
        return Err(Error::Parameter(format!("sample radii must be non-negative, got {r}")));
    }
    let mut samples = Vec::with_capacity(radii.len() * grid.len());
    let mut monotone = true;
    let mut min_separation = f64::INFINITY;
    let mut separation_error = 0.0f64;
    let mut coverage_error = 0.0f64;
    let mut min_c_derivative = f64::INFINITY;

    match mode {
        FoliationMode::VaryD => {
            let prof = RadialProfile::new(ProfileParams::new(m, fixed, signature, Branch::Plus)?);
            for &r in radii {
                let f = prof.phi(r);
                let mut prev: Option<(f64, f64)> = None;
                for &d in grid {
                    let t = f + d;
                    // the unique offset through (x, t)
                    let recovered = t - f;
                    coverage_error = coverage_error.max((recovered - d).abs() / ulp(t.abs().max(f.abs())));
                    if let Some((pd, pt)) = prev {
                        let gap = t - pt;
                        monotone &= gap > 0.0;
                        min_separation = min_separation.min(gap);
                        separation_error = separation_error.max((gap - (d - pd)).abs() / ulp(t.abs().max(pt.abs())));
                    }
                    prev = Some((d, t));
                    samples.push(LeafSample { c: fixed, d, r, height: t, c_derivative: None });
                }
            }
            min_c_derivative = 0.0;
        }
        FoliationMode::VaryC => {
            let base = ProfileParams::new(m, grid.first().copied().unwrap_or(0.0), signature, Branch::Plus)?;
            let c_max = match signature {
                Signature::Riemannian => m.get() as f64 - 1.0,
                Signature::Lorentzian => f64::INFINITY,
            };
            let profiles: Vec<RadialProfile> =
                grid.iter().map(|&c| base.with_c(c).map(RadialProfile::new)).collect::<Result<_>>()?;
            for &r in radii {
                let mut prev: Option<f64> = None;
                for (prof, &c) in profiles.iter().zip(grid) {
                    let t = prof.phi(r) + fixed;
                    let delta = C_STEP * c.abs().max(1.0);
                    let hi = (c + delta).min(c_max);
                    let lo = (c - delta).max(-c_max);
                    let dc = (RadialProfile::new(base.with_c(hi)?).phi(r)
                        - RadialProfile::new(base.with_c(lo)?).phi(r))
                        / (hi - lo);
                    if r > 0.0 {
                        min_c_derivative = min_c_derivative.min(dc);
                    }
                    if let Some(pt) = prev {
                        let gap = t - pt;
                        if r > 0.0 {
                            monotone &= gap > 0.0;
                            min_separation = min_separation.min(gap);
                        }
                    }
                    prev = Some(t);
                    samples.push(LeafSample { c, d: fixed, r, height: t, c_derivative: Some(dc) });
                }
            }
        }
    }

    Ok(FoliationReport {
        mode,
        signature,
        samples,
        monotone,
        min_separation,
        separation_error,
        coverage_error,
        min_c_derivative,
    })
}

/// Unit in the last place of `x` (of 1 when `x` is 0).
fn ulp(x: f64) -> f64 {
    let x = if x == 0.0 { 1.0 } else { x.abs() };
    f64::from_bits(x.to_bits() + 1) - x
}

/// The Cheeger ratio of `B_R` minus the Cheeger constant `m - 1` of `H^m`.
///
/// Computed as `(1 - (m-1)u) / u` from the directly evaluated complement, so
/// it stays relative-accurate (and positive) long after `A/V` has rounded to
/// `m - 1`.
pub fn cheeger_excess(radius: f64, m: Dimension) -> f64 {
    let (u, comp) = NormalizedIntegral::new(m.get() - 1).value_and_complement(radius);
    comp / u
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn dim(m: usize) -> Dimension {
        Dimension::new(m).unwrap()
    }

    #[test]
    fn riemannian_bound_examples() {
        let rep = theorem11_check(dim(2), 1.0, 2.0).unwrap();
        let coth1 = 1.0 / 1.0f64.tanh();
        assert_relative_eq!(rep.slack, 0.5 * (coth1 - 1.0), max_relative = 1e-13);
        assert_relative_eq!(rep.slack, 0.156_517_642_749_665_5, max_relative = 1e-12);
        let zero = theorem11_check(dim(3), 0.0, 5.0).unwrap();
        assert_eq!(zero.lhs, 0.0);
        assert!(zero.strict());
        assert!(theorem11_check(dim(2), 1.5, 1.0).is_err());
    }

    #[test]
    fn lorentzian_bound_saturates() {
        for &(m, c) in &[(3, 2.0), (2, 5.0), (5, -0.5)] {
            for &r in &[0.5, 1.0, 3.0] {
                let rep = theorem15_check(dim(m), c, r, BoundSource::Analytic { grid: 200 }).unwrap();
                assert!((rep.lhs - rep.rhs).abs() <= 1e-8, "{m} {c} {r}: {rep:?}");
            }
        }
        let zero = theorem15_check(dim(2), 0.0, 1.0, BoundSource::Analytic { grid: 10 }).unwrap();
        assert_eq!(zero.lhs, 0.0);
        assert_eq!(zero.b_d, Some(0.0));
    }

    #[test]
    fn hessian_flux_example() {
        let rep = theorem14_global_check(dim(3), 1.0, 2.0, 400).unwrap();
        assert!(rep.holds && rep.rhs > rep.lhs, "{rep:?}");
        assert!(rep.flux_deviation < 1e-5, "{rep:?}");
        let zero = theorem14_global_check(dim(3), 0.0, 2.0, 10).unwrap();
        assert_eq!(zero.lhs, 0.0);
        assert!(zero.holds);
    }

    #[test]
    fn vary_d_leaves_are_parallel() {
        let rep = foliation_check(
            dim(3),
            Signature::Riemannian,
            FoliationMode::VaryD,
            1.0,
            &[0.0, 0.5, 2.0],
            &[-1.0, -0.25, 0.0, 0.75, 3.0],
        )
        .unwrap();
        assert!(rep.monotone);
        assert!(rep.separation_error <= 4.0 && rep.coverage_error <= 2.0, "{rep:?}");
        assert_eq!(rep.samples.len(), 15);
    }

    #[test]
    fn vary_c_is_monotone() {
        let rep = foliation_check(
            dim(3),
            Signature::Lorentzian,
            FoliationMode::VaryC,
            0.0,
            &[1.0],
            &[-2.0, -1.0, 0.0, 1.0, 2.0],
        )
        .unwrap();
        assert!(rep.monotone && rep.min_c_derivative > 1e-3, "{rep:?}");
        let riem = foliation_check(
            dim(2),
            Signature::Riemannian,
            FoliationMode::VaryC,
            0.0,
            &[1.0],
            &[-1.0, 0.0, 1.0],
        )
        .unwrap();
        assert!(riem.monotone && riem.min_c_derivative > 1e-3);
    }

    #[test]
    fn foliation_rejects_bad_grids() {
        let err = foliation_check(dim(2), Signature::Lorentzian, FoliationMode::VaryC, 0.0, &[1.0], &[1.0, 0.0]);
        assert!(matches!(err, Err(Error::Parameter(_))));
        let err = foliation_check(dim(2), Signature::Riemannian, FoliationMode::VaryC, 0.0, &[1.0], &[0.0, 2.0]);
        assert!(matches!(err, Err(Error::Parameter(_))));
    }

    #[test]
    fn cheeger_excess_shrinks() {
        let mut prev = f64::INFINITY;
        for &r in &[0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0] {
            let e = cheeger_excess(r, dim(3));
            assert!(e > 0.0 && e < prev);
            prev = e;
        }
        // m = 3: excess = 1/u - 2 ≈ 4r e^{-2r}
        assert_relative_eq!(cheeger_excess(40.0, dim(3)), 160.0 * (-80.0f64).exp(), max_relative = 1e-2);
        let direct = crate::ball::cheeger_ratio(2.0, dim(3)) - 2.0;
        assert_relative_eq!(cheeger_excess(2.0, dim(3)), direct, max_relative = 1e-12);
    }
}
