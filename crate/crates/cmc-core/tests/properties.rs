//! Property-based invariants of the geometry and the radial families.

use cmc_core::ball::{cheeger_ratio, grad_r, laplacian_r};
use cmc_core::metric::divergence_g;
use cmc_core::profile::{sinh_power_integral, NormalizedIntegral};
use cmc_core::{BallPoint, Base, Branch, Dimension, ProfileParams, RadialProfile, Signature};
use proptest::prelude::*;

fn direction(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, m).prop_filter("non-zero direction", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
}

fn point() -> impl Strategy<Value = (usize, Vec<f64>, f64)> {
    (2usize..=6).prop_flat_map(|m| (Just(m), direction(m), 0.05f64..6.0))
}

proptest! {
    #[test]
    fn grad_r_has_unit_length((_m, dir, r) in point()) {
        let x = BallPoint::at_distance(&dir, r).unwrap();
        let g = grad_r(&x).unwrap();
        let len = Base::HyperbolicBall.vector_norm(x.coords(), &g);
        prop_assert!((len - 1.0).abs() < 1e-12, "{}", len);
    }

    #[test]
    fn divergence_of_grad_r_is_laplacian((m, dir, r) in (2usize..=5).prop_flat_map(|m| (Just(m), direction(m), 0.5f64..2.5))) {
        let x = BallPoint::at_distance(&dir, r).unwrap();
        let base = Base::HyperbolicBall;
        let field = |y: &[f64]| {
            let p = BallPoint::new(y.to_vec())?;
            grad_r(&p)
        };
        let div = divergence_g(base, field, x.coords(), None).unwrap();
        let lap = laplacian_r(r, Dimension::new(m).unwrap()).unwrap();
        prop_assert!((div - lap).abs() < 1e-6, "{} vs {}", div, lap);
    }

    #[test]
    fn sinh_power_integral_differentiates_to_integrand(p in 0usize..=12, r in 0.1f64..8.0) {
        let h = 1e-5;
        let d = (sinh_power_integral(p, r + h) - sinh_power_integral(p, r - h)) / (2.0 * h);
        let s = r.sinh().powi(p as i32);
        prop_assert!((d - s).abs() <= 1e-7 * s.max(1.0), "{} vs {}", d, s);
    }

    #[test]
    fn u_stays_below_limit(m in 2usize..=10, r in 0.0f64..60.0) {
        let (u, comp) = NormalizedIntegral::new(m - 1).value_and_complement(r);
        prop_assert!(u >= 0.0 && u <= 1.0 / (m - 1) as f64);
        prop_assert!(comp > 0.0);
    }

    #[test]
    fn branch_and_sign_symmetry(m in 2usize..=6, t in -1.0f64..1.0, r in 0.01f64..8.0, lorentzian in any::<bool>()) {
        let dim = Dimension::new(m).unwrap();
        let (signature, c) = if lorentzian {
            (Signature::Lorentzian, 3.0 * m as f64 * t)
        } else {
            (Signature::Riemannian, (m - 1) as f64 * t)
        };
        let plus = RadialProfile::new(ProfileParams::new(dim, c, signature, Branch::Plus).unwrap());
        let minus = RadialProfile::new(ProfileParams::new(dim, c, signature, Branch::Minus).unwrap());
        let neg = RadialProfile::new(ProfileParams::new(dim, -c, signature, Branch::Plus).unwrap());
        // only the riemannian equation has two branches
        let flip = if lorentzian { 1.0 } else { -1.0 };
        prop_assert_eq!(minus.w(r), flip * plus.w(r));
        prop_assert_eq!(neg.w(r), -plus.w(r));
        prop_assert_eq!(neg.phi(r), -plus.phi(r));
    }

    #[test]
    fn cheeger_ratio_decreases(m in 2usize..=8, r in 0.05f64..15.0, dr in 0.01f64..2.0) {
        let dim = Dimension::new(m).unwrap();
        prop_assert!(cheeger_ratio(r + dr, dim) < cheeger_ratio(r, dim));
        prop_assert!(cheeger_ratio(r, dim) > (m - 1) as f64);
    }

    #[test]
    fn lorentzian_profiles_are_spacelike(m in 2usize..=6, c in -50.0f64..50.0, r in 0.0f64..30.0) {
        let prof = RadialProfile::new(ProfileParams::lorentzian(m, c).unwrap());
        prop_assert!(prof.w(r).abs() < 1.0);
    }
}
