use serde::{Deserialize, Serialize};

use super::map_paths;
use crate::driving::{sample_driving_on, CapacityGrid};
use crate::error::{Error, Result};
use crate::geometry::{box_count, fit_log_slope, scale_ladder, tortuosity_segments, LogLogFit};
use crate::loewner::compute_trace;
use crate::params::KappaParams;
use crate::rng::SPLITTING_RULE;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionConfig {
    pub n_paths: u64,
    /// Traces run over capacity time `[0, 1]` in steps of `1/n_steps`.
    pub n_steps: usize,
    pub seed: u64,
    /// Coarsest scale of the ladder `ell0·2^{-j}`.
    pub ell0: f64,
    pub j_max: u32,
    /// Coarsest scales left out of the fits.
    pub discard: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleRow {
    pub ell: f64,
    /// Mean over paths.
    pub box_count: f64,
    pub tortuosity_count: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub kappa: f64,
    pub seed: u64,
    pub splitting_rule: String,
    pub n_paths: u64,
    pub n_steps: usize,
    pub rows: Vec<ScaleRow>,
    pub box_fit: LogLogFit,
    pub tortuosity_fit: LogLogFit,
    /// `1 + κ/8`.
    pub expected: f64,
}

/// Box-counting and tortuosity exponents of half-plane traces on `[0, 1]`.
pub fn dimension_experiment(params: &KappaParams, cfg: &DimensionConfig) -> Result<DimensionReport> {
    if cfg.n_paths == 0 || cfg.n_steps == 0 {
        return Err(Error::arg("need at least one path and one step"));
    }
    if !(cfg.ell0 > 0.0) {
        return Err(Error::arg(format!("ell0 must be positive, got {}", cfg.ell0)));
    }
    let grid = CapacityGrid::uniform(cfg.n_steps, 1.0 / cfg.n_steps as f64)?;
    let ells = scale_ladder(cfg.ell0, cfg.j_max);
    let per_path = map_paths(cfg.n_paths, |i| -> Result<Vec<(usize, usize)>> {
        let trace = compute_trace(&sample_driving_on(&grid, cfg.seed, i), params)?;
        Ok(ells
            .iter()
            .map(|&l| (box_count(&trace, l), tortuosity_segments(&trace, l)))
            .collect())
    });
    let mut sums = vec![(0usize, 0usize); ells.len()];
    for counts in per_path {
        for (s, c) in sums.iter_mut().zip(counts?) {
            s.0 += c.0;
            s.1 += c.1;
        }
    }
    let n = cfg.n_paths as f64;
    let rows: Vec<ScaleRow> = ells
        .iter()
        .zip(&sums)
        .map(|(&ell, s)| ScaleRow {
            ell,
            box_count: s.0 as f64 / n,
            tortuosity_count: s.1 as f64 / n,
        })
        .collect();
    let boxes: Vec<f64> = rows.iter().map(|r| r.box_count).collect();
    let pieces: Vec<f64> = rows.iter().map(|r| r.tortuosity_count).collect();
    Ok(DimensionReport {
        kappa: params.kappa,
        seed: cfg.seed,
        splitting_rule: SPLITTING_RULE.to_string(),
        n_paths: cfg.n_paths,
        n_steps: cfg.n_steps,
        box_fit: fit_log_slope(&ells, &boxes, cfg.discard)?,
        tortuosity_fit: fit_log_slope(&ells, &pieces, cfg.discard)?,
        rows,
        expected: params.dim,
    })
}
