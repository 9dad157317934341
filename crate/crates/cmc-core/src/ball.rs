//! The Poincaré ball model of `H^m`: the unit ball with metric
//! `g = λ(x)² |dx|²`, `λ(x) = 2 / (1 - |x|²)`.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::profile;

/// Points with `|x| >= 1 - BOUNDARY_MARGIN` are rejected.
pub const BOUNDARY_MARGIN: f64 = 1e-6;

/// Above this value of `(m - 1)·R`, areas and volumes go through logarithms.
pub const LOG_SPACE_THRESHOLD: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidDimension(m));
        }
        Ok(Dimension(m))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub(crate) fn as_f64(self) -> f64 {
        self.0 as f64
    }
}

/// A point of the ball model, strictly inside `|x| < 1 - BOUNDARY_MARGIN`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    coords: Vec<f64>,
    norm: f64,
}

impl BallPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        Dimension::new(coords.len())?;
        let norm = euclidean_norm(&coords);
        if !norm.is_finite() || norm >= 1.0 - BOUNDARY_MARGIN {
            return Err(Error::OutsideBall { norm });
        }
        Ok(BallPoint { coords, norm })
    }

    pub fn origin(m: Dimension) -> Self {
        BallPoint { coords: alloc::vec![0.0; m.get()], norm: 0.0 }
    }

    /// The point at hyperbolic distance `r` from the origin along the unit
    /// euclidean direction `dir` (normalized here).
    pub fn at_distance(dir: &[f64], r: f64) -> Result<Self> {
        let n = euclidean_norm(dir);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Parameter("direction must be a non-zero finite vector".into()));
        }
        if r < 0.0 || r.is_nan() {
            return Err(Error::Parameter("hyperbolic distance must be non-negative".into()));
        }
        let t = (0.5 * r).tanh();
        BallPoint::new(dir.iter().map(|d| d / n * t).collect())
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn dim(&self) -> Dimension {
        Dimension(self.coords.len())
    }
}

pub(crate) fn euclidean_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `λ(x) = 2 / (1 - |x|²)`; the metric tensor is `λ² δ_ij`.
pub fn conformal_factor(x: &BallPoint) -> f64 {
    2.0 / (1.0 - x.norm * x.norm)
}

/// Hyperbolic distance to the origin, `r = log((1+|x|)/(1-|x|)) = 2 atanh|x|`.
pub fn radial_distance(x: &BallPoint) -> f64 {
    2.0 * x.norm.atanh()
}

/// Coordinate components of the `g`-gradient of `r`: `(1-|x|²)/2 · x/|x|`.
pub fn grad_r(x: &BallPoint) -> Result<Vec<f64>> {
    if x.norm == 0.0 {
        return Err(Error::SingularPoint("gradient of the distance function"));
    }
    let s = 0.5 * (1.0 - x.norm * x.norm) / x.norm;
    Ok(x.coords.iter().map(|c| c * s).collect())
}

/// `Δr = (m - 1) coth r`.
pub fn laplacian_r(r: f64, m: Dimension) -> Result<f64> {
    if r <= 0.0 {
        return Err(Error::SingularPoint("laplacian of the distance function"));
    }
    Ok((m.as_f64() - 1.0) / r.tanh())
}

/// Christoffel symbols of `λ²|dx|²`, stored as `[k][i][j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Christoffel {
    dim: usize,
    data: Vec<f64>,
}

impl Christoffel {
    /// Symbols of a conformally flat metric from `∂_i log λ`.
    pub fn from_log_gradient(dlog: &[f64]) -> Self {
        let m = dlog.len();
        let mut data = alloc::vec![0.0; m * m * m];
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    let mut v = 0.0;
                    if i == k {
                        v += dlog[j];
                    }
                    if j == k {
                        v += dlog[i];
                    }
                    if i == j {
                        v -= dlog[k];
                    }
                    data[(k * m + i) * m + j] = v;
                }
            }
        }
        Christoffel { dim: m, data }
    }

    /// `Γ^k_ij`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.data[(k * self.dim + i) * self.dim + j]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

pub fn christoffel(x: &BallPoint) -> Christoffel {
    let s = 2.0 / (1.0 - x.norm * x.norm);
    let dlog: Vec<f64> = x.coords.iter().map(|c| c * s).collect();
    Christoffel::from_log_gradient(&dlog)
}

/// Area `ω_n` of the unit sphere `S^n ⊂ R^{n+1}`, via `ω_n = 2π/(n-1) · ω_{n-2}`.
pub fn unit_sphere_area(n: usize) -> f64 {
    let mut w = if n % 2 == 0 { 2.0 } else { 2.0 * PI };
    let mut k = if n % 2 == 0 { 2 } else { 3 };
    while k <= n {
        w *= 2.0 * PI / (k as f64 - 1.0);
        k += 2;
    }
    w
}

/// Geodesic ball of hyperbolic radius `radius` about the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicBall {
    radius: f64,
    dim: Dimension,
}

impl GeodesicBall {
    pub fn new(radius: f64, dim: Dimension) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Parameter("geodesic ball radius must be positive and finite".into()));
        }
        Ok(GeodesicBall { radius, dim })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    /// Euclidean radius of the ball in model coordinates, `tanh(R/2)`.
    pub fn euclidean_radius(&self) -> f64 {
        (0.5 * self.radius).tanh()
    }

    pub fn area(&self) -> f64 {
        ball_area(self.radius, self.dim)
    }

    pub fn volume(&self) -> f64 {
        ball_volume(self.radius, self.dim)
    }

    pub fn cheeger_ratio(&self) -> f64 {
        cheeger_ratio(self.radius, self.dim)
    }
}

fn ln_sinh(r: f64) -> f64 {
    // log sinh r = r + log((1 - e^{-2r}) / 2)
    r + (-(-2.0 * r).exp_m1()).ln() - core::f64::consts::LN_2
}

/// `log A(∂B_R)`; finite wherever `R` is.
pub fn ln_ball_area(radius: f64, m: Dimension) -> f64 {
    unit_sphere_area(m.get() - 1).ln() + (m.as_f64() - 1.0) * ln_sinh(radius)
}

/// `log V(B_R)`, using `V = A · u(R)`.
pub fn ln_ball_volume(radius: f64, m: Dimension) -> f64 {
    ln_ball_area(radius, m) + profile::u_profile(m, radius).ln()
}

/// `A(∂B_R) = ω_{m-1} sinh^{m-1} R`.
pub fn ball_area(radius: f64, m: Dimension) -> f64 {
    if (m.as_f64() - 1.0) * radius > LOG_SPACE_THRESHOLD {
        return ln_ball_area(radius, m).exp();
    }
    unit_sphere_area(m.get() - 1) * radius.sinh().powi(m.get() as i32 - 1)
}

/// `V(B_R) = ω_{m-1} I_{m-1}(R)`.
pub fn ball_volume(radius: f64, m: Dimension) -> f64 {
    if (m.as_f64() - 1.0) * radius > LOG_SPACE_THRESHOLD {
        return ln_ball_volume(radius, m).exp();
    }
    unit_sphere_area(m.get() - 1) * profile::sinh_power_integral(m.get() - 1, radius)
}

/// `A(∂B_R) / V(B_R)` for the geodesic ball of radius `R`.
///
/// Decreases toward the Cheeger constant `m - 1` of `H^m`.
pub fn cheeger_ratio(radius: f64, m: Dimension) -> f64 {
    if (m.as_f64() - 1.0) * radius > LOG_SPACE_THRESHOLD {
        return 1.0 / profile::u_profile(m, radius);
    }
    ball_area(radius, m) / ball_volume(radius, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_relative_eq;

    fn dim(m: usize) -> Dimension {
        Dimension::new(m).unwrap()
    }

    #[test]
    fn dimension_and_point_validation() {
        assert_eq!(Dimension::new(1), Err(Error::InvalidDimension(1)));
        assert!(BallPoint::new(vec![0.5]).is_err());
        assert!(matches!(BallPoint::new(vec![1.0 - 1e-7, 0.0]), Err(Error::OutsideBall { .. })));
        assert!(BallPoint::new(vec![1.0 - 2e-6, 0.0]).is_ok());
        assert!(BallPoint::new(vec![f64::NAN, 0.0]).is_err());
    }

    #[test]
    fn conformal_factor_values() {
        assert_eq!(conformal_factor(&BallPoint::origin(dim(3))), 2.0);
        let x = BallPoint::new(vec![0.3, 0.4]).unwrap();
        assert_relative_eq!(conformal_factor(&x), 8.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn radial_distance_values() {
        assert_eq!(radial_distance(&BallPoint::origin(dim(2))), 0.0);
        let x = BallPoint::new(vec![0.5, 0.0]).unwrap();
        assert_relative_eq!(radial_distance(&x), 3.0f64.ln(), max_relative = 1e-15);
        let y = BallPoint::new(vec![0.0, 0.5f64.tanh()]).unwrap();
        assert_relative_eq!(radial_distance(&y), 1.0, max_relative = 1e-15);
        let z = BallPoint::at_distance(&[1.0, 1.0, 1.0], 2.5).unwrap();
        assert_relative_eq!(radial_distance(&z), 2.5, max_relative = 1e-14);
    }

    #[test]
    fn grad_r_values() {
        let x = BallPoint::new(vec![0.5, 0.0]).unwrap();
        let g = grad_r(&x).unwrap();
        assert_relative_eq!(g[0], 0.375, max_relative = 1e-15);
        assert_eq!(g[1], 0.0);
        assert!(matches!(grad_r(&BallPoint::origin(dim(2))), Err(Error::SingularPoint(_))));
    }

    #[test]
    fn laplacian_r_values() {
        assert_relative_eq!(laplacian_r(1.0, dim(2)).unwrap(), 1.0f64.cosh() / 1.0f64.sinh());
        assert_relative_eq!(laplacian_r(1.0, dim(2)).unwrap(), 1.313_035_285_499_331, max_relative = 1e-14);
        assert_relative_eq!(laplacian_r(60.0, dim(3)).unwrap(), 2.0);
        assert!(laplacian_r(0.0, dim(2)).is_err());
        assert!(laplacian_r(1e-8, dim(2)).unwrap() > 1e7);
    }

    #[test]
    fn christoffel_values() {
        let c0 = christoffel(&BallPoint::origin(dim(3)));
        assert!(c0.data.iter().all(|&v| v == 0.0));
        let x = BallPoint::new(vec![0.5, 0.0]).unwrap();
        let c = christoffel(&x);
        assert_relative_eq!(c.get(0, 0, 0), 4.0 / 3.0, max_relative = 1e-15);
        // Γ^1_00 = -∂_1 log λ = 0, Γ^0_11 = -4/3, Γ^1_01 = ∂_0 log λ = 4/3
        assert_eq!(c.get(1, 0, 0), 0.0);
        assert_relative_eq!(c.get(0, 1, 1), -4.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(c.get(1, 0, 1), 4.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn sphere_areas() {
        assert_relative_eq!(unit_sphere_area(0), 2.0);
        assert_relative_eq!(unit_sphere_area(1), 2.0 * PI);
        assert_relative_eq!(unit_sphere_area(2), 4.0 * PI);
        assert_relative_eq!(unit_sphere_area(3), 2.0 * PI * PI);
        assert_relative_eq!(unit_sphere_area(4), 8.0 * PI * PI / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn area_volume_m2_closed_forms() {
        for &r in &[0.1, 1.0, 2.0, 7.5] {
            assert_relative_eq!(ball_area(r, dim(2)), 2.0 * PI * r.sinh(), max_relative = 1e-14);
            assert_relative_eq!(ball_volume(r, dim(2)), 2.0 * PI * (r.cosh() - 1.0), max_relative = 1e-13);
        }
        assert_relative_eq!(cheeger_ratio(2.0, dim(2)), 1.0 / 1.0f64.tanh(), max_relative = 1e-14);
    }

    #[test]
    fn log_space_matches_direct_near_threshold() {
        let m = dim(3);
        let r = 149.0; // (m-1) R = 298, direct branch
        assert_relative_eq!(ln_ball_area(r, m), ball_area(r, m).ln(), max_relative = 1e-14);
        assert_relative_eq!(ln_ball_volume(r, m), ball_volume(r, m).ln(), max_relative = 1e-14);
        let big = ball_area(200.0, m);
        assert!(big.is_finite() && big > 0.0);
        assert_relative_eq!(cheeger_ratio(400.0, m), 2.0, max_relative = 1e-15);
    }

    #[test]
    fn geodesic_ball_accessors() {
        assert!(GeodesicBall::new(0.0, dim(2)).is_err());
        let b = GeodesicBall::new(1.0, dim(2)).unwrap();
        assert_relative_eq!(b.euclidean_radius(), 0.5f64.tanh());
        assert_relative_eq!(b.area() / b.volume(), b.cheeger_ratio());
    }
}
