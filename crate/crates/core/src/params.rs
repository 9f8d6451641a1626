use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// The SLE parameter together with the constants derived from it.
///
/// `a = 2/κ` is the Loewner speed, `lambda = 8/κ - 2` is the exponent in the
/// left-passage density, `beta = 4a - 1` is the per-crossing decay exponent,
/// `dim = 1 + κ/8` is the almost sure dimension of the trace and `c_kappa`
/// normalizes `sin^λ` to a probability density on `[0, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaParams {
    pub kappa: f64,
    pub a: f64,
    pub lambda: f64,
    pub beta: f64,
    pub dim: f64,
    pub c_kappa: f64,
}

impl KappaParams {
    pub fn new(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa <= 4.0) {
            return Err(Error::arg(format!("kappa must lie in (0, 4], got {kappa}")));
        }
        let a = 2.0 / kappa;
        let lambda = 4.0 * a - 2.0;
        Ok(KappaParams {
            kappa,
            a,
            lambda,
            beta: 4.0 * a - 1.0,
            dim: 1.0 + kappa / 8.0,
            c_kappa: sine_power_normalizer(lambda),
        })
    }
}

/// `1 / ∫₀^π sin^λ(t) dt = Γ((λ+2)/2) / (√π Γ((λ+1)/2))`.
pub fn sine_power_normalizer(lambda: f64) -> f64 {
    let log_ratio = ln_gamma((lambda + 2.0) / 2.0) - ln_gamma((lambda + 1.0) / 2.0);
    log_ratio.exp() / std::f64::consts::PI.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_constants() {
        let p = KappaParams::new(2.0).unwrap();
        assert_eq!(p.a, 1.0);
        assert_eq!(p.lambda, 2.0);
        assert_eq!(p.beta, 3.0);
        assert_eq!(p.dim, 1.25);
        // ∫ sin² = π/2
        assert!((p.c_kappa - 2.0 / std::f64::consts::PI).abs() < 1e-13);
    }

    #[test]
    fn kappa_four_is_uniform() {
        let p = KappaParams::new(4.0).unwrap();
        assert_eq!(p.lambda, 0.0);
        assert!((p.c_kappa - 1.0 / std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(KappaParams::new(0.0).is_err());
        assert!(KappaParams::new(4.0001).is_err());
        assert!(KappaParams::new(f64::NAN).is_err());
    }
}
