use serde::{Deserialize, Serialize};

use super::{check_failures, map_paths};
use crate::driving::{sample_driving_on, CapacityGrid};
use crate::error::{Error, Result};
use crate::geometry::{crossing_times, Annulus, CrossingEstimate};
use crate::loewner::{compute_trace, to_unit_disk};
use crate::params::KappaParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingMcConfig {
    pub n_paths: u64,
    pub n_steps: usize,
    pub seed: u64,
}

impl CrossingMcConfig {
    /// Compactified grid with `τ = 1/(2a)`; the last tip is within about
    /// 10⁻³ of −1 in the unit disk.
    pub fn grid(&self, params: &KappaParams) -> Result<CapacityGrid> {
        let tau = 1.0 / (2.0 * params.a);
        CapacityGrid::compactified(self.n_steps, tau, tau * 1e6)
    }
}

/// Crossing counts of every annulus for each simulated unit-disk trace
/// from 1 to −1; `result[i][j]` is path `i`, annulus `j`.
pub fn crossing_counts(params: &KappaParams, annuli: &[Annulus], cfg: &CrossingMcConfig) -> Result<Vec<Vec<usize>>> {
    if cfg.n_paths == 0 {
        return Err(Error::arg("need at least one path"));
    }
    let grid = cfg.grid(params)?;
    let per_path = map_paths(cfg.n_paths, |i| -> Result<Vec<usize>> {
        let driving = sample_driving_on(&grid, cfg.seed, i);
        let trace = to_unit_disk(&compute_trace(&driving, params)?)?;
        annuli
            .iter()
            .map(|a| crossing_times(&trace, a).map(|r| r.count()))
            .collect()
    });
    let mut out = Vec::with_capacity(per_path.len());
    let mut failed = 0;
    for r in per_path {
        match r {
            Ok(c) => out.push(c),
            Err(e) => {
                log::debug!("path skipped: {e}");
                failed += 1;
            }
        }
    }
    check_failures(failed, cfg.n_paths)?;
    Ok(out)
}

/// Probability of at least `k` crossings of each annulus, all annuli
/// estimated from the same paths.
pub fn crossing_estimates(
    params: &KappaParams,
    annuli: &[Annulus],
    k: usize,
    cfg: &CrossingMcConfig,
) -> Result<Vec<CrossingEstimate>> {
    let counts = crossing_counts(params, annuli, cfg)?;
    estimates_from_counts(&counts, annuli, k)
}

/// Turns per-path crossing counts (as from [`crossing_counts`]) into
/// estimates of P(count ≥ k) for each annulus.
pub fn estimates_from_counts(counts: &[Vec<usize>], annuli: &[Annulus], k: usize) -> Result<Vec<CrossingEstimate>> {
    if k == 0 {
        return Err(Error::arg("k must be at least 1"));
    }
    let n = counts.len() as u64;
    annuli
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let hits = counts.iter().filter(|c| c[j] >= k).count() as u64;
            CrossingEstimate::from_counts(a.ratio(), hits, n)
        })
        .collect()
}

/// Probability that the trace crosses `annulus` at least `k` times.
pub fn crossing_probability(
    params: &KappaParams,
    annulus: &Annulus,
    k: usize,
    cfg: &CrossingMcConfig,
) -> Result<CrossingEstimate> {
    Ok(crossing_estimates(params, std::slice::from_ref(annulus), k, cfg)?.remove(0))
}
