use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::quadrature::{integrate, QuadratureSpec};
use crate::error::{Error, Result};
use crate::loewner::small_disk_to_half_plane;
use crate::params::KappaParams;

/// Probability that chordal SLE from 0 to ∞ in ℍ passes to the right of a
/// point with argument `theta`: `C_κ ∫₀^θ sin^λ(t) dt`.
///
/// Integrates over the shorter of `[0, θ]` and `[θ, π]`, so
/// `φ(θ) + φ(π − θ) = 1` holds to rounding.
pub fn phi(theta: f64, params: &KappaParams, quad: &QuadratureSpec) -> Result<f64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::arg(format!("theta must lie in [0, π], got {theta}")));
    }
    if params.lambda == 0.0 {
        return Ok(theta / PI);
    }
    let lambda = params.lambda;
    let partial = |upper: f64| -> Result<f64> {
        let r = integrate(|t: f64| t.sin().powf(lambda), 0.0, upper, quad)?;
        Ok(params.c_kappa * r.value)
    };
    let value = if theta <= FRAC_PI_2 {
        partial(theta)?
    } else {
        1.0 - partial(PI - theta)?
    };
    Ok(value.clamp(0.0, 1.0))
}

/// Probability that SLE from 0 to 1 in the disk `|z - 1/2| < 1/2` passes
/// below `x + iy`, i.e. `φ(arg(iz/(1 - z)))`.
pub fn below_probability(x: f64, y: f64, params: &KappaParams) -> Result<f64> {
    below_probability_with(x, y, params, &QuadratureSpec::default())
}

pub fn below_probability_with(x: f64, y: f64, params: &KappaParams, quad: &QuadratureSpec) -> Result<f64> {
    let z = Complex64::new(x, y);
    if (z - 0.5).norm() > 0.5 + 1e-12 {
        return Err(Error::arg(format!("{z} lies outside the disk |z - 1/2| ≤ 1/2")));
    }
    if z.norm() < 1e-15 || (z - 1.0).norm() < 1e-15 {
        return Err(Error::arg(format!("{z} is an endpoint of the curve")));
    }
    let w = small_disk_to_half_plane(z)?;
    // boundary points have Im w = ±0; clamp to the closed upper half-plane
    let theta = w.im.max(0.0).atan2(w.re);
    phi(theta, params, quad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_3;

    fn q() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn kappa_four_is_linear() {
        let p = KappaParams::new(4.0).unwrap();
        assert_eq!(phi(PI / 4.0, &p, &q()).unwrap(), 0.25);
    }

    #[test]
    fn lambda_one_closed_form() {
        let p = KappaParams::new(8.0 / 3.0).unwrap();
        for th in [0.1, FRAC_PI_3, 1.9, 3.0] {
            let exact = (1.0 - th.cos()) / 2.0;
            assert!((phi(th, &p, &q()).unwrap() - exact).abs() < 1e-13, "{th}");
        }
        assert!((phi(FRAC_PI_3, &p, &q()).unwrap() - 0.25).abs() < 1e-13);
    }

    #[test]
    fn midpoint_and_endpoints() {
        for kappa in [0.5, 1.0, 2.0, 3.3, 4.0] {
            let p = KappaParams::new(kappa).unwrap();
            assert!((phi(FRAC_PI_2, &p, &q()).unwrap() - 0.5).abs() < 1e-12);
            assert_eq!(phi(0.0, &p, &q()).unwrap(), 0.0);
            assert!((phi(PI, &p, &q()).unwrap() - 1.0).abs() < 1e-12);
        }
        let p = KappaParams::new(2.0).unwrap();
        assert!(phi(-0.1, &p, &q()).is_err());
        assert!(phi(3.2, &p, &q()).is_err());
    }

    #[test]
    fn below_probability_geometry() {
        for kappa in [1.0, 8.0 / 3.0, 4.0] {
            let p = KappaParams::new(kappa).unwrap();
            assert!((below_probability(0.5, 0.0, &p).unwrap() - 0.5).abs() < 1e-12);
            // near the lower arc the curve almost never passes below
            assert!(below_probability(0.5, -0.4999, &p).unwrap() < 0.01);
            assert!(below_probability(0.5, 0.4999, &p).unwrap() > 0.99);
        }
        let p = KappaParams::new(2.0).unwrap();
        assert!(below_probability(1.2, 0.0, &p).is_err());
        assert!(below_probability(0.0, 0.0, &p).is_err());
        assert!(below_probability(1.0, 0.0, &p).is_err());
    }
}
