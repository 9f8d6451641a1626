use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::map_paths;
use crate::driving::{sample_driving_on, CapacityGrid};
use crate::error::{Error, Result};
use crate::formulas::{phi, QuadratureSpec};
use crate::geometry::{wilson_interval, WILSON_Z95};
use crate::loewner::{left_passage_side, Side, DEFAULT_SIDE_THRESHOLD};
use crate::params::KappaParams;
use crate::rng::SPLITTING_RULE;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeftPassageConfig {
    pub n_paths: u64,
    pub n_steps: usize,
    pub seed: u64,
    pub points: Vec<Complex64>,
}

impl LeftPassageConfig {
    /// Points `r·e^{iθ}` for every pair of radius and angle.
    pub fn polar_points(radii: &[f64], thetas: &[f64]) -> Vec<Complex64> {
        radii
            .iter()
            .flat_map(|&r| thetas.iter().map(move |&t| Complex64::from_polar(r, t)))
            .collect()
    }

    /// Geometric capacity grid from `10⁻⁴·r²_min` to `10⁸·r²_max`.
    ///
    /// A point at distance `r` is decided once `t ≫ r²`; the relative step
    /// `Δt/t` is constant, which resolves every scale equally.
    pub fn grid(&self) -> Result<CapacityGrid> {
        let r2 = |f: fn(f64, f64) -> f64, init: f64| self.points.iter().map(|z| z.norm_sqr()).fold(init, f);
        let (lo, hi) = (r2(f64::min, f64::INFINITY), r2(f64::max, 0.0));
        CapacityGrid::exponential(self.n_steps, 1e-4 * lo, 1e8 * hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeftPassagePoint {
    pub point: Complex64,
    pub r: f64,
    pub theta: f64,
    pub right: u64,
    pub left: u64,
    pub undecided: u64,
    /// Fraction of decided paths passing to the left of the point.
    pub right_frequency: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// `1 − φ(θ)`.
    pub expected: f64,
}

impl LeftPassagePoint {
    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci_high - self.ci_low)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeftPassageReport {
    pub kappa: f64,
    pub seed: u64,
    pub splitting_rule: String,
    pub n_paths: u64,
    pub n_steps: usize,
    pub points: Vec<LeftPassagePoint>,
}

/// Estimates, for each point, the probability that the trace passes to its
/// left, and compares it with the left-passage law.
pub fn left_passage_mc(params: &KappaParams, cfg: &LeftPassageConfig) -> Result<LeftPassageReport> {
    if cfg.n_paths == 0 || cfg.points.is_empty() {
        return Err(Error::arg("need at least one path and one point"));
    }
    if let Some(z) = cfg.points.iter().find(|z| !(z.im > 0.0)) {
        return Err(Error::arg(format!("point {z} is not in the upper half-plane")));
    }
    let grid = cfg.grid()?;
    let sides = map_paths(cfg.n_paths, |i| {
        let driving = sample_driving_on(&grid, cfg.seed, i);
        cfg.points
            .iter()
            .map(|&z| left_passage_side(&driving, params, z, DEFAULT_SIDE_THRESHOLD))
            .collect::<Result<Vec<Side>>>()
    });
    let mut counts = vec![[0u64; 3]; cfg.points.len()];
    for path in sides {
        for (c, side) in counts.iter_mut().zip(path?) {
            c[side as usize] += 1;
        }
    }
    let quad = QuadratureSpec::default();
    let points = cfg
        .points
        .iter()
        .zip(counts)
        .map(|(&z, [right, left, undecided])| {
            let theta = z.arg();
            let decided = right + left;
            let (ci_low, ci_high) = if decided > 0 {
                wilson_interval(right, decided, WILSON_Z95)
            } else {
                (0.0, 1.0)
            };
            Ok(LeftPassagePoint {
                point: z,
                r: z.norm(),
                theta,
                right,
                left,
                undecided,
                right_frequency: right as f64 / decided.max(1) as f64,
                ci_low,
                ci_high,
                expected: 1.0 - phi(theta, params, &quad)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LeftPassageReport {
        kappa: params.kappa,
        seed: cfg.seed,
        splitting_rule: SPLITTING_RULE.to_string(),
        n_paths: cfg.n_paths,
        n_steps: cfg.n_steps,
        points,
    })
}
