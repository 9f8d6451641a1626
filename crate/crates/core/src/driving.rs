//! Brownian driving functions sampled on a capacity-time grid.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::path_rng;

/// Strictly increasing capacity times starting at 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityGrid {
    times: Vec<f64>,
}

impl CapacityGrid {
    pub fn uniform(n_steps: usize, dt: f64) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::arg("n_steps must be at least 1"));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::arg(format!("dt must be positive, got {dt}")));
        }
        Ok(CapacityGrid {
            times: (0..=n_steps).map(|k| k as f64 * dt).collect(),
        })
    }

    /// Grid `t_k = scale·s_k/(1 − s_k)` with `s_k` uniform on `[0, s_end]`,
    /// where `s_end` is chosen so the last time equals `t_end`.
    ///
    /// The step grows like `(t + scale)²`, which keeps the step size of a
    /// trace roughly constant after mapping the half-plane to a bounded disk:
    /// the tip moves by about `√dt` while the map contracts by about
    /// `1/(1 + t/scale)`.
    pub fn compactified(n_steps: usize, scale: f64, t_end: f64) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::arg("n_steps must be at least 1"));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::arg(format!("scale must be positive, got {scale}")));
        }
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::arg(format!("t_end must be positive, got {t_end}")));
        }
        let s_end = t_end / (t_end + scale);
        let n = n_steps as f64;
        let mut times: Vec<f64> = (0..=n_steps)
            .map(|k| {
                let s = s_end * k as f64 / n;
                scale * s / (1.0 - s)
            })
            .collect();
        times[n_steps] = t_end;
        Ok(CapacityGrid { times })
    }

    /// Grid `t_k = t0·(e^{k h} − 1)` ending at `t_end`: steps start near
    /// `t0·h` and grow geometrically, so the relative step `Δt/t` is about `h`
    /// once `t ≫ t0`.
    pub fn exponential(n_steps: usize, t0: f64, t_end: f64) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::arg("n_steps must be at least 1"));
        }
        if !(t0 > 0.0 && t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::arg(format!("need positive t0 and t_end, got {t0}, {t_end}")));
        }
        let h = (t_end / t0).ln_1p() / n_steps as f64;
        let mut times: Vec<f64> = (0..=n_steps).map(|k| t0 * (k as f64 * h).exp_m1()).collect();
        times[n_steps] = t_end;
        Ok(CapacityGrid { times })
    }

    pub fn from_times(times: Vec<f64>) -> Result<Self> {
        if times.len() < 2 {
            return Err(Error::arg("a grid needs at least two times"));
        }
        if times[0] != 0.0 {
            return Err(Error::arg("grid must start at capacity time 0"));
        }
        if times.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(Error::arg("grid times must be finite and strictly increasing"));
        }
        Ok(CapacityGrid { times })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn n_steps(&self) -> usize {
        self.times.len() - 1
    }
}

/// Brownian motion `B` sampled at the grid times, `B(0) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrivingFunction {
    times: Vec<f64>,
    values: Vec<f64>,
    /// Master seed and stream index the increments were drawn from.
    pub seed: u64,
    pub stream: u64,
}

impl DrivingFunction {
    /// Builds a driving function from explicit samples; mostly for
    /// deterministic driving in tests and examples.
    pub fn from_samples(grid: &CapacityGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.times.len() {
            return Err(Error::arg(format!(
                "{} driving values for a grid of {} times",
                values.len(),
                grid.times.len()
            )));
        }
        if values[0] != 0.0 {
            return Err(Error::arg("driving function must start at 0"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::arg("driving values must be finite"));
        }
        Ok(DrivingFunction {
            times: grid.times.clone(),
            values,
            seed: 0,
            stream: 0,
        })
    }

    pub fn zero(grid: &CapacityGrid) -> Self {
        DrivingFunction {
            times: grid.times.clone(),
            values: vec![0.0; grid.times.len()],
            seed: 0,
            stream: 0,
        }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n_steps(&self) -> usize {
        self.values.len() - 1
    }

    /// Step length when the grid is uniform.
    pub fn uniform_dt(&self) -> Option<f64> {
        let dt = self.times[1] - self.times[0];
        let uniform = self
            .times
            .windows(2)
            .all(|w| ((w[1] - w[0]) - dt).abs() <= 1e-12 * dt.max(w[1].abs() * f64::EPSILON));
        uniform.then_some(dt)
    }

    /// The same Brownian path observed at every `stride`-th grid time.
    pub fn subsample(&self, stride: usize) -> Result<Self> {
        if stride == 0 || self.n_steps() % stride != 0 {
            return Err(Error::arg(format!(
                "stride {stride} does not divide {} steps",
                self.n_steps()
            )));
        }
        Ok(DrivingFunction {
            times: self.times.iter().step_by(stride).copied().collect(),
            values: self.values.iter().step_by(stride).copied().collect(),
            seed: self.seed,
            stream: self.stream,
        })
    }

    /// Brownian scaling: `c·B(t/c²)` sampled on the grid scaled by `c²`.
    pub fn scaled(&self, c: f64) -> Self {
        DrivingFunction {
            times: self.times.iter().map(|t| t * c * c).collect(),
            values: self.values.iter().map(|v| v * c).collect(),
            seed: self.seed,
            stream: self.stream,
        }
    }
}

/// Samples standard Brownian motion on a uniform grid of `n_steps` steps.
pub fn sample_driving(n_steps: usize, dt: f64, seed: u64) -> Result<DrivingFunction> {
    let grid = CapacityGrid::uniform(n_steps, dt)?;
    Ok(sample_driving_on(&grid, seed, 0))
}

/// Samples standard Brownian motion on `grid` from stream `stream` of `seed`.
pub fn sample_driving_on(grid: &CapacityGrid, seed: u64, stream: u64) -> DrivingFunction {
    let mut rng = path_rng(seed, stream);
    let mut values = Vec::with_capacity(grid.times.len());
    let mut b = 0.0;
    values.push(b);
    for w in grid.times.windows(2) {
        let z: f64 = rng.sample(StandardNormal);
        b += z * (w[1] - w[0]).sqrt();
        values.push(b);
    }
    DrivingFunction {
        times: grid.times.clone(),
        values,
        seed,
        stream,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_step() {
        let d = sample_driving(1, 0.5, 42).unwrap();
        assert_eq!(d.values().len(), 2);
        assert_eq!(d.values()[0], 0.0);
        assert!(d.values()[1] != 0.0);
        assert_eq!(d.uniform_dt(), Some(0.5));
    }

    #[test]
    fn exponential_grid() {
        let g = CapacityGrid::exponential(100, 1e-3, 10.0).unwrap();
        let t = g.times();
        assert_eq!(t[0], 0.0);
        assert_eq!(t[100], 10.0);
        let r1 = (t[99] - t[98]) / (t[98] - t[97]);
        let r2 = (t[3] - t[2]) / (t[2] - t[1]);
        assert!((r1 - r2).abs() < 1e-9);
    }

    #[test]
    fn subsample_keeps_the_path() {
        let d = sample_driving(12, 0.1, 3).unwrap();
        let c = d.subsample(4).unwrap();
        assert_eq!(c.n_steps(), 3);
        assert_eq!(c.values()[2], d.values()[8]);
        assert_eq!(c.times()[3], d.times()[12]);
        assert!(d.subsample(5).is_err());
    }

    #[test]
    fn deterministic() {
        let a = sample_driving(100, 0.01, 9).unwrap();
        let b = sample_driving(100, 0.01, 9).unwrap();
        assert_eq!(a, b);
        let c = sample_driving(100, 0.01, 10).unwrap();
        assert_ne!(a.values(), c.values());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(sample_driving(0, 0.1, 1).is_err());
        assert!(sample_driving(10, 0.0, 1).is_err());
        assert!(sample_driving(10, -1.0, 1).is_err());
    }

    #[test]
    fn increment_variance() {
        // Var of the sample variance of n N(0, dt) draws is 2dt²/n; allow 3 sd.
        let n = 100_000;
        let dt = 1e-3;
        let d = sample_driving(n, dt, 1).unwrap();
        let inc: Vec<f64> = d.values().windows(2).map(|w| w[1] - w[0]).collect();
        let mean = inc.iter().sum::<f64>() / n as f64;
        let var = inc.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        let bound = 3.0 * 2f64.sqrt() * dt / (n as f64).sqrt();
        assert!((var - dt).abs() < bound, "var {var}, bound {bound}");
    }

    #[test]
    fn compactified_grid_hits_end() {
        let g = CapacityGrid::compactified(500, 0.5, 1e4).unwrap();
        assert_eq!(g.times()[0], 0.0);
        assert_eq!(*g.times().last().unwrap(), 1e4);
        assert!(g.times().windows(2).all(|w| w[1] > w[0]));
        // first step is close to scale·ds
        let ds = (1e4 / (1e4 + 0.5)) / 500.0;
        assert!((g.times()[1] - 0.5 * ds / (1.0 - ds)).abs() < 1e-15);
    }

    #[test]
    fn scaling_maps_grid_and_values() {
        let d = sample_driving(10, 0.1, 3).unwrap();
        let s = d.scaled(2.0);
        assert!((s.times()[10] - 4.0).abs() < 1e-12);
        assert_eq!(s.values()[5], 2.0 * d.values()[5]);
    }
}
