use serde::Serialize;

use crate::error::{Error, Result};

/// Strictly increasing times spanning `[first, last]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    times: Vec<f64>,
}

impl Partition {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.len() < 2 {
            return Err(Error::arg("a partition needs at least two times"));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::arg("partition times must be strictly increasing"));
        }
        Ok(Partition { times })
    }

    pub fn uniform(start: f64, end: f64, pieces: usize) -> Result<Self> {
        if pieces == 0 || !(end > start) {
            return Err(Error::arg("uniform partition needs end > start and pieces ≥ 1"));
        }
        let h = (end - start) / pieces as f64;
        let mut times: Vec<f64> = (0..=pieces).map(|k| start + k as f64 * h).collect();
        times[pieces] = end;
        Partition::new(times)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn mesh(&self) -> f64 {
        self.times.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// Each interval split into `2^level` equal pieces.
    pub fn refine(&self, level: u32) -> Partition {
        let m = 1usize << level;
        let mut times = Vec::with_capacity((self.times.len() - 1) * m + 1);
        for w in self.times.windows(2) {
            let h = (w[1] - w[0]) / m as f64;
            times.extend((0..m).map(|j| w[0] + j as f64 * h));
        }
        times.push(*self.times.last().unwrap());
        Partition { times }
    }
}

/// A real function known at sample times, linear in between.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Partition::new(times.clone())?;
        if times.len() != values.len() {
            return Err(Error::arg("times and values differ in length"));
        }
        Ok(SampledFunction { times, values })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.times.len();
        if t <= self.times[0] {
            return self.values[0];
        }
        if t >= self.times[n - 1] {
            return self.values[n - 1];
        }
        let j = self.times.partition_point(|&s| s <= t);
        let s = (t - self.times[j - 1]) / (self.times[j] - self.times[j - 1]);
        self.values[j - 1] + s * (self.values[j] - self.values[j - 1])
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YoungIntegral {
    /// Sum on the finest refinement.
    pub value: f64,
    /// Sums on refinement levels 0, 1, …, in order.
    pub sums: Vec<f64>,
    /// Richardson extrapolation of the last two sums assuming an `h²` error,
    /// or the finest sum when only one level was computed.
    pub extrapolated: f64,
}

/// Riemann–Stieltjes sums `Σ ½(f(t_{j-1}) + f(t_j))(g(t_j) - g(t_{j-1}))` of
/// `∫ f dg` on the refinements `0..=refinement_levels` of `base`.
///
/// The averaged evaluation point makes each term the exact Stieltjes integral
/// when `f` and `g` are linear on the sub-interval, so piecewise-linear
/// integrands give the exact integral on any partition containing their
/// vertices.
pub fn young_integral(
    f: impl Fn(f64) -> f64,
    g: impl Fn(f64) -> f64,
    base: &Partition,
    refinement_levels: u32,
) -> YoungIntegral {
    let sums: Vec<f64> = (0..=refinement_levels)
        .map(|level| {
            let part = base.refine(level);
            let mut prev_f = f(part.times[0]);
            let mut prev_g = g(part.times[0]);
            let mut acc = 0.0;
            for &t in &part.times[1..] {
                let (ft, gt) = (f(t), g(t));
                acc += 0.5 * (prev_f + ft) * (gt - prev_g);
                prev_f = ft;
                prev_g = gt;
            }
            acc
        })
        .collect();
    let value = *sums.last().unwrap();
    let extrapolated = match sums.len() {
        1 => value,
        n => (4.0 * sums[n - 1] - sums[n - 2]) / 3.0,
    };
    YoungIntegral {
        value,
        sums,
        extrapolated,
    }
}

/// [`young_integral`] for two sampled functions on the same time span; the
/// base partition is the union of their sample times.
pub fn young_integral_sampled(
    f: &SampledFunction,
    g: &SampledFunction,
    refinement_levels: u32,
) -> Result<YoungIntegral> {
    let (fs, fe) = (f.times[0], *f.times.last().unwrap());
    let (gs, ge) = (g.times[0], *g.times.last().unwrap());
    if fs != gs || fe != ge {
        return Err(Error::arg(format!(
            "sampled on different spans: [{fs}, {fe}] vs [{gs}, {ge}]"
        )));
    }
    let mut times: Vec<f64> = f.times.iter().chain(&g.times).copied().collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    let base = Partition::new(times)?;
    Ok(young_integral(|t| f.eval(t), |t| g.eval(t), &base, refinement_levels))
}
