//! Radial profiles `f = φ(r)` of constant divergence-form mean curvature.
//!
//! With `u = u_{m-1}` the regular solution of `u' = 1 - (m-1) coth(r) u`,
//! `u(r) = sinh^{1-m}(r) ∫_0^r sinh^{m-1}`, and `A = c·u`, the slope is
//!
//! * Riemannian: `w = ±A / sqrt(1 - A²)`, admissible for `|c| <= m - 1`,
//! * Lorentzian: `w = A / sqrt(1 + A²)`, any `c`, always `|w| < 1`,
//!
//! and the height is `φ(r) = ∫_0^r w`.
//!
//! Numerically, `u_p = I_p / sinh^p` is evaluated by its Maclaurin series for
//! `r < SERIES_RADIUS` (the sinh-power recurrence cancels badly there) and by
//! the recurrence divided through by `sinh^p` beyond, which stays finite for
//! any `r`. The complement `1 - p·u_p` is carried separately because it
//! decays like `r e^{-2r}` and is needed for `1 - A²` at `|c| = m - 1`.

use alloc::format;
use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::ball::{radial_distance, BallPoint, Dimension};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_panels, QUAD_TOL};

/// Below this radius `φ` uses its Taylor polynomial.
pub const SERIES_SWITCH: f64 = 1e-2;

/// Below this radius `u_p` is summed from its Maclaurin series.
pub const SERIES_RADIUS: f64 = 1.0;

/// Panel width of the fixed quadrature breakpoints for `φ`.
pub const PHI_PANEL: f64 = 0.5;

const SERIES_TERMS: usize = 24;

// Maclaurin coefficients of r·coth(r) in powers of r², from
// (r coth r)(sinh r / r) = cosh r.
const R_COTH_R: [f64; SERIES_TERMS] = r_coth_r_coefficients();

const fn r_coth_r_coefficients() -> [f64; SERIES_TERMS] {
    let mut fact = [1.0f64; 2 * SERIES_TERMS + 2];
    let mut i = 1;
    while i < fact.len() {
        fact[i] = fact[i - 1] * i as f64;
        i += 1;
    }
    let mut k = [0.0f64; SERIES_TERMS];
    k[0] = 1.0;
    let mut n = 1;
    while n < SERIES_TERMS {
        let mut v = 1.0 / fact[2 * n];
        let mut j = 0;
        while j < n {
            v -= k[j] / fact[2 * (n - j) + 1];
            j += 1;
        }
        k[n] = v;
        n += 1;
    }
    k
}

/// Coefficients `a_n` with `u_p(r) = Σ a_n r^{2n+1}`, from
/// `r u' + p (r coth r) u = r`.
fn normalized_series(p: usize) -> [f64; SERIES_TERMS] {
    let pf = p as f64;
    let mut a = [0.0; SERIES_TERMS];
    for n in 0..SERIES_TERMS {
        let mut v = if n == 0 { 1.0 } else { 0.0 };
        for j in 1..=n {
            v -= pf * R_COTH_R[j] * a[n - j];
        }
        a[n] = v / (2.0 * n as f64 + 1.0 + pf);
    }
    a
}

fn eval_series(a: &[f64; SERIES_TERMS], r: f64) -> (f64, f64) {
    // value Σ a_n r^{2n+1} and derivative Σ (2n+1) a_n r^{2n}
    let r2 = r * r;
    let mut v = 0.0;
    let mut d = 0.0;
    for n in (0..SERIES_TERMS).rev() {
        v = v * r2 + a[n];
        d = d * r2 + (2.0 * n as f64 + 1.0) * a[n];
    }
    (v * r, d)
}

/// `u_p(r)` and `1 - p·u_p(r)` for `r >= SERIES_RADIUS` by the normalized
/// recurrence `u_p = coth/p - ((p-1)/p) u_{p-2} / sinh²`.
fn normalized_recurrence(p: usize, r: f64) -> (f64, f64) {
    let inv_sinh2 = 1.0 / r.sinh().powi(2);
    let coth = 1.0 / r.tanh();
    // coth r - 1, without cancellation
    let coth_m1 = 2.0 / (2.0 * r).exp_m1();
    if p == 0 {
        return (r, 1.0);
    }
    let (mut cur, mut comp, mut q) = if p % 2 == 1 {
        // u_1 = tanh(r/2), 1 - u_1 = 2 / (e^r + 1)
        ((0.5 * r).tanh(), 2.0 / (r.exp() + 1.0), 1)
    } else {
        (0.5 * coth - 0.5 * r * inv_sinh2, -coth_m1 + r * inv_sinh2, 2)
    };
    while q < p {
        q += 2;
        let qf = q as f64;
        let prev = cur;
        cur = coth / qf - (qf - 1.0) / qf * prev * inv_sinh2;
        comp = -coth_m1 + (qf - 1.0) * prev * inv_sinh2;
    }
    (cur, comp)
}

/// `I_p(r) = ∫_0^r sinh^p t dt` by the integration-by-parts recurrence
/// `I_p = cosh r sinh^{p-1} r / p - ((p-1)/p) I_{p-2}`, `I_0 = r`,
/// `I_1 = cosh r - 1`.
pub fn sinh_power_integral_recurrence(p: usize, r: f64) -> f64 {
    let (s, c) = (r.sinh(), r.cosh());
    let half = (0.5 * r).sinh();
    let (mut acc, mut q) = if p % 2 == 0 { (r, 0) } else { (2.0 * half * half, 1) };
    while q < p {
        q += 2;
        let qf = q as f64;
        acc = c * s.powi(q as i32 - 1) / qf - (qf - 1.0) / qf * acc;
    }
    acc
}

/// `I_p(r)`, relative-accurate for all `r >= 0`: series-based below
/// `SERIES_RADIUS`, recurrence above.
pub fn sinh_power_integral(p: usize, r: f64) -> f64 {
    if r < SERIES_RADIUS {
        let (u, _) = eval_series(&normalized_series(p), r);
        u * r.sinh().powi(p as i32)
    } else {
        sinh_power_integral_recurrence(p, r)
    }
}

/// `u(r) = sinh^{1-m}(r) ∫_0^r sinh^{m-1}`; `0 <= u < 1/(m-1)`.
pub fn u_profile(m: Dimension, r: f64) -> f64 {
    NormalizedIntegral::new(m.get() - 1).value(r)
}

/// Two-term expansion `(r/m)(1 - ((m-1)/(m+2)) r²/3)`, accurate to `O(r⁵)`
/// for small `r` (intended range `0 <= r <= 0.1`).
pub fn u_series(m: Dimension, r: f64) -> f64 {
    let mf = m.as_f64();
    r / mf * (1.0 - (mf - 1.0) / (mf + 2.0) * r * r / 3.0)
}

/// `u_p = I_p / sinh^p` with its series coefficients cached.
#[derive(Debug, Clone)]
pub struct NormalizedIntegral {
    p: usize,
    series: [f64; SERIES_TERMS],
}

impl NormalizedIntegral {
    pub fn new(p: usize) -> Self {
        NormalizedIntegral { p, series: normalized_series(p) }
    }

    pub fn value(&self, r: f64) -> f64 {
        self.value_and_complement(r).0
    }

    /// `(u_p, 1 - p·u_p)`.
    pub fn value_and_complement(&self, r: f64) -> (f64, f64) {
        if r < SERIES_RADIUS {
            let (u, _) = eval_series(&self.series, r);
            (u, 1.0 - self.p as f64 * u)
        } else {
            let (u, comp) = normalized_recurrence(self.p, r);
            if comp < 0.5 && self.p > 0 {
                // rounding is monotone, so this never exceeds fl(1/p)
                ((1.0 - comp) / self.p as f64, comp)
            } else {
                (u, comp)
            }
        }
    }

    /// `u_p'(r) = 1 - p coth(r) u_p`.
    pub fn derivative(&self, r: f64) -> f64 {
        if r < SERIES_RADIUS {
            eval_series(&self.series, r).1
        } else {
            let (_, comp) = normalized_recurrence(self.p, r);
            // 1 - coth (1 - comp) = (1 - coth) + coth·comp
            -2.0 / (2.0 * r).exp_m1() + comp / r.tanh()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signature {
    /// Graph in `H^m × R` with the product metric.
    Riemannian,
    /// Spacelike graph in `H^m × R` with metric `g - dt²`.
    Lorentzian,
}

impl Signature {
    pub fn as_str(self) -> &'static str {
        match self {
            Signature::Riemannian => "riemannian",
            Signature::Lorentzian => "lorentzian",
        }
    }
}

/// Sign choice `w = ±A/sqrt(1 - A²)` of the Riemannian slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

/// Parameters of a radial family.
///
/// `c_div` is the constant in `div_g(∇f / sqrt(1 ± ‖∇f‖²)) = c`; the norm of
/// the mean curvature is `c_norm = |c_div| / m`. On the Riemannian minus
/// branch the graph's divergence is `-c_div` (see
/// [`ProfileParams::divergence_constant`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileParams {
    m: Dimension,
    c_div: f64,
    signature: Signature,
    branch: Branch,
}

impl ProfileParams {
    pub fn new(m: Dimension, c_div: f64, signature: Signature, branch: Branch) -> Result<Self> {
        if !c_div.is_finite() {
            return Err(Error::Parameter(format!("c must be finite, got {c_div}")));
        }
        let bound = m.as_f64() - 1.0;
        if signature == Signature::Riemannian && c_div.abs() > bound {
            return Err(Error::Parameter(format!(
                "riemannian profile requires c in [1-m, m-1] = [{}, {}], got {c_div}",
                -bound, bound
            )));
        }
        Ok(ProfileParams { m, c_div, signature, branch })
    }

    pub fn riemannian(m: usize, c_div: f64) -> Result<Self> {
        Self::new(Dimension::new(m)?, c_div, Signature::Riemannian, Branch::Plus)
    }

    pub fn lorentzian(m: usize, c_div: f64) -> Result<Self> {
        Self::new(Dimension::new(m)?, c_div, Signature::Lorentzian, Branch::Plus)
    }

    pub fn dim(&self) -> Dimension {
        self.m
    }

    pub fn c_div(&self) -> f64 {
        self.c_div
    }

    /// `‖H‖ = |c_div| / m`.
    pub fn c_norm(&self) -> f64 {
        self.c_div.abs() / self.m.as_f64()
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// The value of `div_g(∇f / sqrt(1 ± ‖∇f‖²))` on the graph:
    /// `branch·c_div` (Riemannian) or `c_div` (Lorentzian).
    pub fn divergence_constant(&self) -> f64 {
        match self.signature {
            Signature::Riemannian => self.branch.sign() * self.c_div,
            Signature::Lorentzian => self.c_div,
        }
    }

    pub fn with_c(&self, c_div: f64) -> Result<Self> {
        Self::new(self.m, c_div, self.signature, self.branch)
    }
}

/// Values of the profile at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialProfileEval {
    pub r: f64,
    /// `I_{m-1}(r)`.
    pub integral: f64,
    pub u: f64,
    pub w: f64,
    pub phi: f64,
    pub w_prime: f64,
}

/// Both sides of the radial ODE at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeResidual {
    /// `w'(r)` from the linear equation for `u`.
    pub lhs: f64,
    /// `c (1 ± w²)^{3/2} - (m-1) coth r · w (1 ± w²)`.
    pub rhs: f64,
    /// Largest magnitude among `1`, `w'` and the two right-hand terms.
    pub scale: f64,
}

impl OdeResidual {
    pub fn absolute(&self) -> f64 {
        self.lhs - self.rhs
    }

    /// `|lhs - rhs| / scale`; this is the floating-point meaningful residual
    /// when the right-hand terms grow like `w³`.
    pub fn relative(&self) -> f64 {
        self.absolute().abs() / self.scale
    }
}

/// Evaluator for one radial family.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    params: ProfileParams,
    base: NormalizedIntegral,
}

impl RadialProfile {
    pub fn new(params: ProfileParams) -> Self {
        RadialProfile { params, base: NormalizedIntegral::new(params.m.get() - 1) }
    }

    pub fn params(&self) -> &ProfileParams {
        &self.params
    }

    fn p(&self) -> f64 {
        self.params.m.as_f64() - 1.0
    }

    pub fn u(&self, r: f64) -> f64 {
        self.base.value(r)
    }

    pub fn u_prime(&self, r: f64) -> f64 {
        self.base.derivative(r)
    }

    /// `(A, 1 ∓ A²)` with `A = c·u`; the second entry is `1 - A²` for
    /// Riemannian and `1 + A²` for Lorentzian profiles.
    fn amplitude(&self, r: f64) -> (f64, f64) {
        let c = self.params.c_div;
        let (u, comp) = self.base.value_and_complement(r);
        let a = c * u;
        match self.params.signature {
            Signature::Lorentzian => (a, 1.0 + a * a),
            Signature::Riemannian => {
                // 1 - |c|u = ((p - |c|) + |c|(1 - p u)) / p, no cancellation
                let p = self.p();
                let one_minus = ((p - c.abs()) + c.abs() * comp) / p;
                (a, one_minus * (1.0 + a.abs()))
            }
        }
    }

    /// `w = φ'(r)`.
    pub fn w(&self, r: f64) -> f64 {
        let (a, q) = self.amplitude(r);
        match self.params.signature {
            Signature::Riemannian => self.params.branch.sign() * a / q.sqrt(),
            Signature::Lorentzian => a / q.sqrt(),
        }
    }

    /// `w'(r)`, from `u' = 1 - (m-1) coth(r) u` and `dw/dA = (1 ∓ A²)^{-3/2}`.
    pub fn w_prime(&self, r: f64) -> f64 {
        let (_, q) = self.amplitude(r);
        let da = self.params.c_div * self.u_prime(r);
        let sign = match self.params.signature {
            Signature::Riemannian => self.params.branch.sign(),
            Signature::Lorentzian => 1.0,
        };
        sign * da / (q * q.sqrt())
    }

    /// `∂w/∂c = u (1 ∓ A²)^{-3/2}` (times the branch sign).
    pub fn w_c_derivative(&self, r: f64) -> f64 {
        let (_, q) = self.amplitude(r);
        let sign = match self.params.signature {
            Signature::Riemannian => self.params.branch.sign(),
            Signature::Lorentzian => 1.0,
        };
        sign * self.u(r) / (q * q.sqrt())
    }

    fn series_quartic(&self) -> f64 {
        // coefficient of r⁴ in φ divided by c/m
        let m = self.params.m.as_f64();
        let c = self.params.c_div;
        let k = (m - 1.0) / (3.0 * (m + 2.0));
        let s = match self.params.signature {
            Signature::Riemannian => 1.0,
            Signature::Lorentzian => -1.0,
        };
        (s * c * c / (2.0 * m * m) - k) / 4.0
    }

    fn integrate_from_origin<F: FnMut(f64) -> f64>(&self, f: F, r: f64, scale: f64) -> f64 {
        let mut breaks: Vec<f64> = Vec::with_capacity((r / PHI_PANEL) as usize + 2);
        let mut t = 0.0;
        while t < r {
            breaks.push(t);
            t += PHI_PANEL;
        }
        breaks.push(r);
        integrate_panels(f, &breaks, QUAD_TOL * scale.max(1.0)).value
    }

    /// `φ(r) = ∫_0^r w`; Taylor polynomial below `SERIES_SWITCH`.
    pub fn phi(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        if r < SERIES_SWITCH {
            let c = self.params.divergence_constant();
            let m = self.params.m.as_f64();
            let r2 = r * r;
            // the quartic coefficient only depends on c²
            return c / m * (0.5 * r2 + self.series_quartic() * r2 * r2);
        }
        let scale = r * self.w(r).abs();
        self.integrate_from_origin(|s| self.w(s), r, scale)
    }

    /// `∂φ/∂c (r) = ∫_0^r ∂w/∂c`.
    pub fn phi_c_derivative(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let scale = r * self.w_c_derivative(r).abs();
        self.integrate_from_origin(|s| self.w_c_derivative(s), r, scale)
    }

    /// `f_c(x) = φ(r(x))`.
    pub fn graph_value(&self, x: &BallPoint) -> f64 {
        self.phi(radial_distance(x))
    }

    /// Coordinate partials `∂_i f = w(r) · λ x_i / |x|`; zero at the origin.
    pub fn graph_differential(&self, x: &[f64]) -> Vec<f64> {
        let n2: f64 = x.iter().map(|v| v * v).sum();
        let n = n2.sqrt();
        if n == 0.0 {
            return alloc::vec![0.0; x.len()];
        }
        let r = 2.0 * n.atanh();
        let s = self.w(r) * 2.0 / (1.0 - n2) / n;
        x.iter().map(|v| v * s).collect()
    }

    pub fn evaluate(&self, r: f64) -> RadialProfileEval {
        RadialProfileEval {
            r,
            integral: sinh_power_integral(self.params.m.get() - 1, r),
            u: self.u(r),
            w: self.w(r),
            phi: self.phi(r),
            w_prime: self.w_prime(r),
        }
    }

    /// Right-hand side of the radial ODE at `(r, w)`.
    pub fn ode_rhs(&self, r: f64, w: f64) -> (f64, f64) {
        let c = self.params.divergence_constant();
        let q = match self.params.signature {
            Signature::Riemannian => 1.0 + w * w,
            Signature::Lorentzian => 1.0 - w * w,
        };
        let forcing = c * q * q.sqrt();
        let damping = self.p() / r.tanh() * w * q;
        (forcing, damping)
    }

    pub fn ode_residual(&self, r: f64) -> Result<OdeResidual> {
        if !(r > 0.0) {
            return Err(Error::SingularPoint("radial ODE"));
        }
        let lhs = self.w_prime(r);
        let (forcing, damping) = self.ode_rhs(r, self.w(r));
        let scale = 1.0f64.max(lhs.abs()).max(forcing.abs()).max(damping.abs());
        Ok(OdeResidual { lhs, rhs: forcing - damping, scale })
    }

    /// `‖∇df‖ = sqrt(w'² + (m-1) w² coth² r)`; `|c|/√m` at the origin.
    pub fn hessian_norm(&self, r: f64) -> f64 {
        let m = self.params.m.as_f64();
        if r <= 0.0 {
            return self.params.c_div.abs() / m.sqrt();
        }
        let wp = self.w_prime(r);
        let t = self.w(r) / r.tanh();
        (wp * wp + (m - 1.0) * t * t).sqrt()
    }
}

pub fn w_profile(params: &ProfileParams, r: f64) -> f64 {
    RadialProfile::new(*params).w(r)
}

pub fn phi_profile(params: &ProfileParams, r: f64) -> f64 {
    RadialProfile::new(*params).phi(r)
}

pub fn graph_value(params: &ProfileParams, x: &BallPoint) -> f64 {
    RadialProfile::new(*params).graph_value(x)
}

/// `w'(r) - RHS(r, w(r))` of the radial ODE.
pub fn ode_residual(params: &ProfileParams, r: f64) -> Result<f64> {
    Ok(RadialProfile::new(*params).ode_residual(r)?.absolute())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;
    use approx::assert_relative_eq;

    fn dim(m: usize) -> Dimension {
        Dimension::new(m).unwrap()
    }

    #[test]
    fn coth_coefficients_match_known_values() {
        assert_eq!(R_COTH_R[0], 1.0);
        assert_relative_eq!(R_COTH_R[1], 1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(R_COTH_R[2], -1.0 / 45.0, max_relative = 1e-14);
        assert_relative_eq!(R_COTH_R[3], 2.0 / 945.0, max_relative = 1e-13);
        assert_relative_eq!(R_COTH_R[4], -1.0 / 4725.0, max_relative = 1e-12);
    }

    #[test]
    fn integral_base_cases() {
        for &r in &[0.0, 0.3, 2.0, 11.0] {
            assert_eq!(sinh_power_integral_recurrence(0, r), r);
        }
        assert_relative_eq!(sinh_power_integral_recurrence(1, 1.0), 0.543_080_634_815_243_7, max_relative = 1e-15);
        let i3 = 1.0f64.cosh() * 1.0f64.sinh().powi(2) / 3.0 - 2.0 / 3.0 * (1.0f64.cosh() - 1.0);
        assert_relative_eq!(sinh_power_integral_recurrence(3, 1.0), i3, max_relative = 1e-15);
        let q = integrate(|t| t.sinh().powi(3), 0.0, 1.0, 1e-14).value;
        assert!((i3 - q).abs() < 1e-12);
    }

    #[test]
    fn series_and_recurrence_agree_at_switch() {
        for p in 1..12 {
            let ni = NormalizedIntegral::new(p);
            let below = {
                let (u, _) = eval_series(&ni.series, SERIES_RADIUS);
                u
            };
            let (above, _) = normalized_recurrence(p, SERIES_RADIUS);
            assert_relative_eq!(below, above, max_relative = 1e-14);
            let d_series = eval_series(&ni.series, SERIES_RADIUS).1;
            let comp = normalized_recurrence(p, SERIES_RADIUS).1;
            let d_rec = -2.0 / (2.0f64).exp_m1() + comp / 1.0f64.tanh();
            assert_relative_eq!(d_series, d_rec, max_relative = 1e-12);
        }
    }

    #[test]
    fn u_closed_forms() {
        assert_eq!(u_profile(dim(4), 0.0), 0.0);
        for &r in &[0.05, 0.7, 2.0, 9.0] {
            assert_relative_eq!(u_profile(dim(2), r), (0.5 * r).tanh(), max_relative = 1e-14);
        }
        assert_relative_eq!(u_profile(dim(2), 2.0), 0.761_594_155_955_764_9, max_relative = 1e-15);
        // m = 3: I_2 = (cosh r sinh r - r)/2
        let r = 1.0f64;
        let closed = (r.cosh() * r.sinh() - r) / 2.0 / r.sinh().powi(2);
        assert_relative_eq!(u_profile(dim(3), r), closed, max_relative = 1e-14);
        assert_relative_eq!(u_profile(dim(3), r), 0.294_487, max_relative = 2e-6);
    }

    #[test]
    fn u_series_example() {
        assert_eq!(u_series(dim(3), 0.0), 0.0);
        let s = u_series(dim(2), 0.1);
        assert_relative_eq!(s, 0.05 * (1.0 - 0.25 * 0.01 / 3.0), max_relative = 1e-15);
        assert!((s - u_profile(dim(2), 0.1)).abs() < 1e-7);
    }

    #[test]
    fn complement_is_accurate_at_large_r() {
        // m = 3: 1 - 2u = 1 - coth r + r / sinh² r
        for &r in &[5.0f64, 20.0, 40.0] {
            let (_, comp) = NormalizedIntegral::new(2).value_and_complement(r);
            let exact = -2.0 / (2.0 * r).exp_m1() + r / r.sinh().powi(2);
            assert_relative_eq!(comp, exact, max_relative = 1e-13);
            assert!(comp > 0.0);
        }
    }

    #[test]
    fn params_validation() {
        assert!(ProfileParams::riemannian(2, 1.0).is_ok());
        assert!(ProfileParams::riemannian(2, -1.0).is_ok());
        let err = ProfileParams::riemannian(2, 3.0).unwrap_err();
        assert!(matches!(err, Error::Parameter(ref s) if s.contains("[1-m, m-1]")));
        assert!(ProfileParams::lorentzian(2, 30.0).is_ok());
        assert!(ProfileParams::lorentzian(2, f64::NAN).is_err());
        let p = ProfileParams::lorentzian(3, -2.0).unwrap();
        assert_relative_eq!(p.c_norm(), 2.0 / 3.0);
    }

    #[test]
    fn w_examples() {
        let zero = RadialProfile::new(ProfileParams::riemannian(3, 0.0).unwrap());
        assert_eq!(zero.w(1.3), 0.0);
        assert_eq!(zero.phi(2.0), 0.0);
        let m2 = RadialProfile::new(ProfileParams::riemannian(2, 1.0).unwrap());
        for &r in &[0.1, 1.0, 4.0, 15.0] {
            assert_relative_eq!(m2.w(r), (0.5 * r).sinh(), max_relative = 1e-13);
            assert_relative_eq!(m2.w_prime(r), 0.5 * (0.5 * r).cosh(), max_relative = 1e-12);
        }
    }

    #[test]
    fn phi_closed_form_m2() {
        let prof = RadialProfile::new(ProfileParams::riemannian(2, 1.0).unwrap());
        let r = 2.0 * 0.6f64.atanh();
        assert_relative_eq!(prof.phi(r), 0.5, max_relative = 1e-13);
        for &r in &[0.005, 0.02, 1.0, 3.0, 6.0] {
            assert_relative_eq!(prof.phi(r), 2.0 * (0.5 * r).cosh() - 2.0, max_relative = 1e-11);
        }
        assert_eq!(prof.phi(0.0), 0.0);
    }

    #[test]
    fn minus_branch_negates() {
        let plus = RadialProfile::new(ProfileParams::riemannian(3, 1.5).unwrap());
        let minus = RadialProfile::new(
            ProfileParams::new(dim(3), 1.5, Signature::Riemannian, Branch::Minus).unwrap(),
        );
        for &r in &[0.005, 0.5, 3.0] {
            assert_eq!(minus.w(r), -plus.w(r));
            assert_relative_eq!(minus.phi(r), -plus.phi(r), max_relative = 1e-14);
            assert!(minus.ode_residual(r.max(0.01)).unwrap().relative() < 1e-12);
        }
    }

    #[test]
    fn ode_residual_examples() {
        let prof = RadialProfile::new(ProfileParams::lorentzian(3, 2.0).unwrap());
        assert!(prof.ode_residual(0.0).is_err());
        let flat = RadialProfile::new(ProfileParams::lorentzian(4, 0.0).unwrap());
        let res = flat.ode_residual(1.0).unwrap();
        assert_eq!(res.lhs, 0.0);
        assert_eq!(res.rhs, 0.0);
        assert!(ode_residual(&ProfileParams::riemannian(2, 1.0).unwrap(), 3.0).unwrap().abs() < 1e-13);
    }

    #[test]
    fn hessian_norm_limit_at_origin() {
        let prof = RadialProfile::new(ProfileParams::lorentzian(3, 2.0).unwrap());
        let at0 = prof.hessian_norm(0.0);
        assert_relative_eq!(at0, 2.0 / 3.0f64.sqrt());
        assert_relative_eq!(prof.hessian_norm(1e-6), at0, max_relative = 1e-9);
    }

    #[test]
    fn graph_differential_matches_fd() {
        let prof = RadialProfile::new(ProfileParams::lorentzian(3, 2.0).unwrap());
        let x = [0.3, -0.2, 0.4];
        let an = prof.graph_differential(&x);
        let h = 1e-6;
        for i in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[i] += h;
            xm[i] -= h;
            let fd = (prof.graph_value(&BallPoint::new(xp.to_vec()).unwrap())
                - prof.graph_value(&BallPoint::new(xm.to_vec()).unwrap()))
                / (2.0 * h);
            assert!((fd - an[i]).abs() < 1e-8, "{i}: {fd} vs {}", an[i]);
        }
        assert_eq!(prof.graph_differential(&[0.0, 0.0, 0.0]), alloc::vec![0.0; 3]);
    }
}
