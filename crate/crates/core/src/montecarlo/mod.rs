//! Monte Carlo experiments over independent SLE paths.
//!
//! Path `i` always draws from random stream `i` of the master seed, and
//! per-path results are reduced in index order, so every estimate is
//! bitwise reproducible whatever the thread count.

mod crossings;
mod dimension;
mod left_passage;
mod signature;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use crossings::{
    crossing_counts, crossing_estimates, crossing_probability, estimates_from_counts, CrossingMcConfig,
};
pub use dimension::{dimension_experiment, DimensionConfig, DimensionReport, ScaleRow};
pub use left_passage::{left_passage_mc, LeftPassageConfig, LeftPassagePoint, LeftPassageReport};
pub use signature::{closed_small_disk_trace, signature_mc, SignatureMcConfig, SignatureMcReport, WordEstimate};

/// Largest tolerated fraction of failed paths.
pub const MAX_FAILURE_FRACTION: f64 = 1e-3;

/// Evaluates `f` on path indices `0..n` in parallel, results in index order.
pub(crate) fn map_paths<T, F>(n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

pub(crate) fn check_failures(failed: u64, total: u64) -> Result<()> {
    if failed as f64 > MAX_FAILURE_FRACTION * total as f64 {
        return Err(Error::TooManyFailures { failed, total });
    }
    if failed > 0 {
        log::warn!("{failed} of {total} paths failed and were skipped");
    }
    Ok(())
}

/// Running mean and variance (Welford).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Sample variance.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            return f64::NAN;
        }
        self.m2 / (self.n - 1) as f64
    }

    pub fn std_error(&self) -> f64 {
        (self.variance() / self.n as f64).sqrt()
    }
}
