use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::KappaParams;

/// Empirical probability with a Wilson 95% interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingEstimate {
    pub ratio: f64,
    pub successes: u64,
    pub n_paths: u64,
    pub probability: f64,
    pub half_width: f64,
}

impl CrossingEstimate {
    pub fn from_counts(ratio: f64, successes: u64, n_paths: u64) -> Result<Self> {
        if n_paths == 0 || successes > n_paths {
            return Err(Error::arg(format!("invalid counts {successes}/{n_paths}")));
        }
        let probability = successes as f64 / n_paths as f64;
        let (lo, hi) = wilson_interval(successes, n_paths, WILSON_Z95);
        Ok(CrossingEstimate {
            ratio,
            successes,
            n_paths,
            probability,
            half_width: 0.5 * (hi - lo),
        })
    }
}

pub const WILSON_Z95: f64 = 1.959963984540054;

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    let n = n as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let mid = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (mid - half).max(0.0) };
    let hi = if successes as f64 == n { 1.0 } else { (mid + half).min(1.0) };
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub k: u32,
    pub ratios: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub half_widths: Vec<f64>,
    pub fitted_slope: f64,
    pub slope_std_error: f64,
    pub bound_slope: f64,
    /// Ratios dropped because their estimate was zero.
    pub excluded: Vec<f64>,
}

impl DecayFit {
    /// Fitted slope is no smaller than the bound minus `sigmas` standard errors.
    pub fn dominates_bound(&self, sigmas: f64) -> bool {
        self.fitted_slope >= self.bound_slope - sigmas * self.slope_std_error
    }
}

/// (β/2)(⌊k/2⌋ − 1), the exponent of r/R in the k-crossing bound.
pub fn bound_slope(k: u32, params: &KappaParams) -> f64 {
    0.5 * params.beta * ((k / 2) as f64 - 1.0)
}

/// Least-squares slope of ln p against ln(r/R).
///
/// The standard error comes from the binomial variance of each estimate,
/// Var ln p ≈ (1 − p)/(n p), propagated through the OLS weights.
pub fn fit_decay(estimates: &[CrossingEstimate], k: u32, params: &KappaParams) -> Result<DecayFit> {
    if k == 0 {
        return Err(Error::arg("k must be at least 1"));
    }
    let mut excluded = Vec::new();
    let mut kept = Vec::new();
    for e in estimates {
        if !(e.ratio > 0.0 && e.ratio < 1.0) || !(0.0..=1.0).contains(&e.probability) {
            return Err(Error::arg(format!("bad estimate {e:?}")));
        }
        if e.probability > 0.0 {
            kept.push(*e);
        } else {
            log::warn!("zero crossing estimate at ratio {} excluded from fit", e.ratio);
            excluded.push(e.ratio);
        }
    }
    if kept.len() < 2 {
        return Err(Error::Fit(format!("{} positive estimates, need at least 2", kept.len())));
    }
    let xs: Vec<f64> = kept.iter().map(|e| e.ratio.ln()).collect();
    let ys: Vec<f64> = kept.iter().map(|e| e.probability.ln()).collect();
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("all ratios equal".into()));
    }
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum::<f64>() / sxx;
    let var: f64 = kept
        .iter()
        .zip(&xs)
        .map(|(e, x)| {
            let w = (x - xbar) / sxx;
            w * w * (1.0 - e.probability) / (e.n_paths as f64 * e.probability)
        })
        .sum();
    Ok(DecayFit {
        k,
        ratios: kept.iter().map(|e| e.ratio).collect(),
        probabilities: kept.iter().map(|e| e.probability).collect(),
        half_widths: kept.iter().map(|e| e.half_width).collect(),
        fitted_slope: slope,
        slope_std_error: var.sqrt(),
        bound_slope: bound_slope(k, params),
        excluded,
    })
}
