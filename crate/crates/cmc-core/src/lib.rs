//! Constant-mean-curvature graphs over the Poincaré ball.
//!
//! The crate builds the explicit radial graph families `f_c = φ(r)` over
//! hyperbolic space `H^m` (Riemannian product `H^m × R` and Lorentzian
//! product `H^m × -R`), the Euclidean hyperboloids of Minkowski space, and
//! the numerical machinery needed to check their curvature identities and
//! isoperimetric inequalities:
//!
//! * [`ball`]: the conformal ball model, geodesic balls and their area/volume.
//! * [`metric`]: finite-difference divergence, gradient and covariant Hessian
//!   on the ball or on flat space.
//! * [`profile`]: sinh-power integrals, the profile `u`, slope `w = φ'`,
//!   height `φ` and the radial ODE residual.
//! * [`curvature`]: the divergence-form mean curvature operator and the
//!   `W`/`Z` quantities of one-dimensional targets.
//! * [`global`]: domain-level inequalities and foliation checks.
//!
//! Without the default `std` feature the crate is `no_std` and only needs
//! `alloc`; float functions then come from `libm`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod ball;
pub mod curvature;
pub mod error;
pub mod global;
pub mod metric;
pub mod profile;
pub mod quadrature;

pub use ball::{BallPoint, Dimension, GeodesicBall};
pub use curvature::{CurvatureSample, Family, GraphField, SectionTwoSample};
pub use error::{Error, Result};
pub use metric::Base;
pub use profile::{Branch, ProfileParams, RadialProfile, RadialProfileEval, Signature};
