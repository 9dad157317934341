//! Finite-difference differential operators on a conformally flat base
//! `(U, λ(x)² |dx|²)`: the Poincaré ball or flat euclidean space.
//!
//! Vector fields are given by their coordinate components `X^i`; functions
//! by values. Gradients returned by [`gradient_fd`] are coordinate partials
//! `∂_i f`; [`Base::raise`] turns them into `g`-gradient components.

use alloc::format;
use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::ball::{euclidean_norm, Christoffel, BOUNDARY_MARGIN};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    /// `H^m` as the unit ball with `λ = 2 / (1 - |x|²)`.
    HyperbolicBall,
    /// `R^m` with `λ = 1`.
    Euclidean,
}

/// Step exponent `1/3`: optimal for one central difference.
pub fn first_order_step_scale() -> f64 {
    f64::EPSILON.cbrt()
}

/// Step exponent `1/4`: optimal for nested or second differences.
pub fn second_order_step_scale() -> f64 {
    f64::EPSILON.sqrt().sqrt()
}

impl Base {
    pub fn conformal_factor(&self, x: &[f64]) -> f64 {
        match self {
            Base::HyperbolicBall => 2.0 / (1.0 - x.iter().map(|v| v * v).sum::<f64>()),
            Base::Euclidean => 1.0,
        }
    }

    /// `∂_i log λ`.
    pub fn log_factor_gradient(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Base::HyperbolicBall => {
                let s = 2.0 / (1.0 - x.iter().map(|v| v * v).sum::<f64>());
                x.iter().map(|c| c * s).collect()
            }
            Base::Euclidean => alloc::vec![0.0; x.len()],
        }
    }

    pub fn christoffel(&self, x: &[f64]) -> Christoffel {
        Christoffel::from_log_gradient(&self.log_factor_gradient(x))
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Base::HyperbolicBall => euclidean_norm(x) < 1.0 - BOUNDARY_MARGIN,
            Base::Euclidean => x.iter().all(|v| v.is_finite()),
        }
    }

    pub fn check_point(&self, x: &[f64]) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutsideBall { norm: euclidean_norm(x) })
        }
    }

    /// Length scale of the coordinates at `x`: `1 - |x|` on the ball (the
    /// distance to the boundary), `max(1, |x|)` on flat space.
    pub fn coordinate_scale(&self, x: &[f64]) -> f64 {
        match self {
            Base::HyperbolicBall => 1.0 - euclidean_norm(x),
            Base::Euclidean => euclidean_norm(x).max(1.0),
        }
    }

    /// Default step for a single central difference at `x`.
    pub fn default_step(&self, x: &[f64]) -> f64 {
        first_order_step_scale() * self.coordinate_scale(x)
    }

    /// Default step for second or nested differences at `x`.
    pub fn default_nested_step(&self, x: &[f64]) -> f64 {
        second_order_step_scale() * self.coordinate_scale(x)
    }

    /// `g`-gradient components `λ^{-2} ∂_i f` from coordinate partials.
    pub fn raise(&self, x: &[f64], df: &[f64]) -> Vec<f64> {
        let l2 = self.conformal_factor(x).powi(2);
        df.iter().map(|d| d / l2).collect()
    }

    /// `‖df‖_g = λ^{-1} |∂f|`.
    pub fn covector_norm(&self, x: &[f64], df: &[f64]) -> f64 {
        euclidean_norm(df) / self.conformal_factor(x)
    }

    /// `‖X‖_g = λ |X|` for coordinate components `X^i`.
    pub fn vector_norm(&self, x: &[f64], v: &[f64]) -> f64 {
        euclidean_norm(v) * self.conformal_factor(x)
    }

    fn stencil_point(&self, x: &[f64], offsets: &[(usize, f64)], buf: &mut Vec<f64>) -> Result<()> {
        buf.clear();
        buf.extend_from_slice(x);
        for &(i, d) in offsets {
            buf[i] += d;
        }
        if self.contains(buf) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "finite-difference stencil leaves the domain (|y| = {})",
                euclidean_norm(buf)
            )))
        }
    }
}

fn resolve_step(base: Base, x: &[f64], h: Option<f64>, nested: bool) -> Result<f64> {
    let h = match h {
        Some(h) => h,
        None if nested => base.default_nested_step(x),
        None => base.default_step(x),
    };
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Parameter(format!("finite-difference step must be positive, got {h}")));
    }
    Ok(h)
}

/// Coordinate partials `∂_i f` by central differences.
pub fn gradient_fd<F>(base: Base, mut f: F, x: &[f64], h: Option<f64>) -> Result<Vec<f64>>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    base.check_point(x)?;
    let h = resolve_step(base, x, h, false)?;
    let mut y = Vec::with_capacity(x.len());
    let mut out = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        base.stencil_point(x, &[(i, h)], &mut y)?;
        let fp = f(&y)?;
        base.stencil_point(x, &[(i, -h)], &mut y)?;
        let fm = f(&y)?;
        out.push((fp - fm) / (2.0 * h));
    }
    Ok(out)
}

/// `div_g X = λ^{-m} Σ_i ∂_i(λ^m X^i)` by central differences.
pub fn divergence_g<F>(base: Base, mut field: F, x: &[f64], h: Option<f64>) -> Result<f64>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    base.check_point(x)?;
    let h = resolve_step(base, x, h, false)?;
    let m = x.len() as i32;
    let mut y = Vec::with_capacity(x.len());
    let mut acc = 0.0;
    for i in 0..x.len() {
        base.stencil_point(x, &[(i, h)], &mut y)?;
        let plus = base.conformal_factor(&y).powi(m) * component(&field(&y)?, i, x.len())?;
        base.stencil_point(x, &[(i, -h)], &mut y)?;
        let minus = base.conformal_factor(&y).powi(m) * component(&field(&y)?, i, x.len())?;
        acc += (plus - minus) / (2.0 * h);
    }
    Ok(acc / base.conformal_factor(x).powi(m))
}

fn component(v: &[f64], i: usize, m: usize) -> Result<f64> {
    if v.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: v.len() });
    }
    Ok(v[i])
}

/// A symmetric bilinear form in coordinates, `B(∂_i, ∂_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bilinear {
    dim: usize,
    data: Vec<f64>,
}

impl Bilinear {
    pub fn zeros(dim: usize) -> Self {
        Bilinear { dim, data: alloc::vec![0.0; dim * dim] }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Norm w.r.t. `g = λ²δ`: `λ^{-2} (Σ B_ij²)^{1/2}`.
    pub fn g_norm(&self, lambda: f64) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt() / (lambda * lambda)
    }

    /// `g`-trace, `λ^{-2} Σ B_ii`.
    pub fn g_trace(&self, lambda: f64) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum::<f64>() / (lambda * lambda)
    }

    /// Largest entry-wise asymmetry `|B_ij - B_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }
}

fn subtract_connection(base: Base, x: &[f64], df: &[f64], hess: &mut Bilinear) {
    let gamma = base.christoffel(x);
    let m = x.len();
    for i in 0..m {
        for j in 0..m {
            let corr: f64 = (0..m).map(|k| gamma.get(k, i, j) * df[k]).sum();
            hess.set(i, j, hess.get(i, j) - corr);
        }
    }
}

/// `Hess f(∂_i, ∂_j) = ∂_i∂_j f - Γ^k_ij ∂_k f` from second differences of `f`.
pub fn covariant_hessian<F>(base: Base, mut f: F, x: &[f64], h: Option<f64>) -> Result<Bilinear>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    base.check_point(x)?;
    let h = resolve_step(base, x, h, true)?;
    let m = x.len();
    let mut y = Vec::with_capacity(m);
    let f0 = f(x)?;
    let mut hess = Bilinear::zeros(m);
    let mut df = Vec::with_capacity(m);
    for i in 0..m {
        base.stencil_point(x, &[(i, h)], &mut y)?;
        let fp = f(&y)?;
        base.stencil_point(x, &[(i, -h)], &mut y)?;
        let fm = f(&y)?;
        df.push((fp - fm) / (2.0 * h));
        hess.set(i, i, (fp - 2.0 * f0 + fm) / (h * h));
        for j in 0..i {
            let mut corner = |si: f64, sj: f64| -> Result<f64> {
                base.stencil_point(x, &[(i, si * h), (j, sj * h)], &mut y)?;
                f(&y)
            };
            let v = (corner(1.0, 1.0)? - corner(1.0, -1.0)? - corner(-1.0, 1.0)? + corner(-1.0, -1.0)?)
                / (4.0 * h * h);
            hess.set(i, j, v);
            hess.set(j, i, v);
        }
    }
    subtract_connection(base, x, &df, &mut hess);
    Ok(hess)
}

/// Covariant Hessian from an analytic differential: central differences of
/// the partials `∂_j f`, symmetrized, minus the connection term.
pub fn covariant_hessian_from_gradient<F>(base: Base, mut df: F, x: &[f64], h: Option<f64>) -> Result<Bilinear>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    base.check_point(x)?;
    let h = resolve_step(base, x, h, false)?;
    let m = x.len();
    let mut y = Vec::with_capacity(m);
    let mut jac = Bilinear::zeros(m);
    for i in 0..m {
        base.stencil_point(x, &[(i, h)], &mut y)?;
        let gp = df(&y)?;
        base.stencil_point(x, &[(i, -h)], &mut y)?;
        let gm = df(&y)?;
        if gp.len() != m || gm.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: gp.len().min(gm.len()) });
        }
        for j in 0..m {
            jac.set(i, j, (gp[j] - gm[j]) / (2.0 * h));
        }
    }
    let mut hess = Bilinear::zeros(m);
    for i in 0..m {
        for j in 0..m {
            hess.set(i, j, 0.5 * (jac.get(i, j) + jac.get(j, i)));
        }
    }
    let d0 = df(x)?;
    subtract_connection(base, x, &d0, &mut hess);
    Ok(hess)
}
