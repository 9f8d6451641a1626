use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_failures, map_paths, Moments};
use crate::driving::{sample_driving_on, CapacityGrid, DrivingFunction};
use crate::error::{Error, Result};
use crate::formulas::{expected_signature_level3, QuadratureSpec};
use crate::loewner::{compute_trace_until, half_plane_to_small_disk};
use crate::params::KappaParams;
use crate::path::{Domain, PlanarPath};
use crate::rng::SPLITTING_RULE;
use crate::roughpath::{signature_of_polyline, Word};

const LEVEL: usize = 3;
/// Number of coefficients of a level-3 series, empty word included.
const DIM: usize = 15;
/// Grid strides of the extrapolation levels, finest first.
const STRIDES: [usize; 3] = [1, 2, 4];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureMcConfig {
    pub n_paths: u64,
    /// Steps of the finest trace; a multiple of 4 when extrapolating.
    pub n_steps: usize,
    pub closure_delta: f64,
    pub seed: u64,
    /// Combine traces of `n`, `n/2` and `n/4` steps to cancel the
    /// `n^{-1/2}` and `n^{-1}` discretization terms.
    pub extrapolate: bool,
}

impl SignatureMcConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_paths < 2 {
            return Err(Error::arg("need at least two paths"));
        }
        if !(self.closure_delta > 0.0 && self.closure_delta < 0.5) {
            return Err(Error::arg(format!("closure_delta must lie in (0, 1/2), got {}", self.closure_delta)));
        }
        let min = if self.extrapolate { 4 } else { 1 };
        if self.n_steps < min || self.n_steps % min != 0 {
            return Err(Error::arg(format!("n_steps must be a positive multiple of {min}")));
        }
        Ok(())
    }

    /// Capacity grid of the finest trace.
    ///
    /// Uniform in `s = t/(t + τ)` with `τ = 1/(2a)`: under `w ↦ w/(w + i)`
    /// this spaces the tips evenly near both ends of the small disk. The
    /// grid runs until the tip is typically well within `δ/2` of 1.
    pub fn grid(&self, params: &KappaParams) -> Result<CapacityGrid> {
        let tau = 1.0 / (2.0 * params.a);
        let d = 0.5 * self.closure_delta;
        CapacityGrid::compactified(self.n_steps, tau, tau * 1e3 / (d * d))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordEstimate {
    pub word: String,
    pub mean: f64,
    pub std_error: f64,
    pub expected: f64,
}

impl WordEstimate {
    /// `|mean − expected|` in units of the standard error.
    pub fn z_score(&self) -> f64 {
        (self.mean - self.expected) / self.std_error
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureMcReport {
    pub kappa: f64,
    pub seed: u64,
    pub splitting_rule: String,
    pub n_paths: u64,
    pub n_failed: u64,
    pub n_steps: usize,
    pub closure_delta: f64,
    pub extrapolation: String,
    pub a_kappa: f64,
    /// Estimates of every word of length ≤ 3 at `closure_delta`.
    pub words: Vec<WordEstimate>,
    /// Same, from the finest trace alone (no extrapolation).
    pub finest_level: Vec<WordEstimate>,
    /// Paired change of each estimate when `closure_delta` is halved; the
    /// expected value is 0.
    pub closure_shift: Vec<WordEstimate>,
}

impl SignatureMcReport {
    pub fn word(&self, w: &str) -> Option<&WordEstimate> {
        self.words.iter().find(|e| e.word == w)
    }

    pub fn closure_shift_of(&self, w: &str) -> Option<&WordEstimate> {
        self.closure_shift.iter().find(|e| e.word == w)
    }
}

/// Extrapolation weights to `h = 0` for levels with `h ∝ √stride`.
fn richardson_weights(strides: &[usize]) -> Vec<f64> {
    let h: Vec<f64> = strides.iter().map(|&s| (s as f64).sqrt()).collect();
    (0..h.len())
        .map(|l| {
            (0..h.len())
                .filter(|&m| m != l)
                .map(|m| h[m] / (h[m] - h[l]))
                .product()
        })
        .collect()
}

/// Small-disk image of the trace up to the first tip within `delta` of 1.
fn small_disk_trace_until(driving: &DrivingFunction, params: &KappaParams, delta: f64) -> Result<PlanarPath> {
    let one = Complex64::new(1.0, 0.0);
    let out = compute_trace_until(driving, params, |_, z| (half_plane_to_small_disk(z) - one).norm() < delta)?;
    if out.stopped_at.is_none() {
        return Err(Error::Evaluation {
            step: driving.n_steps(),
            reason: format!("trace did not come within {delta} of 1"),
        });
    }
    let pts: Vec<Complex64> = out.path.points().iter().map(|&w| half_plane_to_small_disk(w)).collect();
    PlanarPath::new(out.path.times().to_vec(), pts, Domain::SmallDisk)
}

/// Cuts `disk` at its first vertex within `delta` of 1 and closes it by a
/// segment to 1.
fn close_at(disk: &PlanarPath, delta: f64) -> Result<PlanarPath> {
    let one = Complex64::new(1.0, 0.0);
    let idx = disk
        .points()
        .iter()
        .position(|z| (z - one).norm() < delta)
        .ok_or_else(|| Error::arg(format!("path never comes within {delta} of 1")))?;
    disk.truncate_and_close(idx.max(1), one)
}

/// Small-disk trace from 0, stopped at the first tip within `delta` of 1
/// and closed by a straight segment to 1.
pub fn closed_small_disk_trace(driving: &DrivingFunction, params: &KappaParams, delta: f64) -> Result<PlanarPath> {
    close_at(&small_disk_trace_until(driving, params, delta)?, delta)
}

/// Level-3 signatures of the closed trace at `delta` and `delta/2`, both
/// read off one trace.
fn closed_signatures(driving: &DrivingFunction, params: &KappaParams, delta: f64) -> Result<[[f64; DIM]; 2]> {
    let disk = small_disk_trace_until(driving, params, 0.5 * delta)?;
    let mut res = [[0.0; DIM]; 2];
    for (slot, d) in res.iter_mut().zip([delta, 0.5 * delta]) {
        slot.copy_from_slice(signature_of_polyline(&close_at(&disk, d)?, LEVEL)?.as_slice());
    }
    Ok(res)
}

/// Per-path estimates `[at δ, at δ/2, finest level at δ]`.
fn path_estimates(
    driving: &DrivingFunction,
    params: &KappaParams,
    cfg: &SignatureMcConfig,
    weights: &[f64],
) -> Result<[[f64; DIM]; 3]> {
    let strides: &[usize] = if cfg.extrapolate { &STRIDES } else { &STRIDES[..1] };
    let mut out = [[0.0; DIM]; 3];
    for (&stride, &w) in strides.iter().zip(weights) {
        let sig = closed_signatures(&driving.subsample(stride)?, params, cfg.closure_delta)?;
        if stride == 1 {
            out[2] = sig[0];
        }
        for c in 0..2 {
            for (o, s) in out[c].iter_mut().zip(sig[c]) {
                *o += w * s;
            }
        }
    }
    Ok(out)
}

/// Expected-signature Monte Carlo for SLE in the disk of radius 1/2 about
/// 1/2, from 0 to 1.
pub fn signature_mc(params: &KappaParams, cfg: &SignatureMcConfig) -> Result<SignatureMcReport> {
    cfg.validate()?;
    let grid = cfg.grid(params)?;
    let weights = if cfg.extrapolate { richardson_weights(&STRIDES) } else { vec![1.0] };
    let results = map_paths(cfg.n_paths, |i| {
        let driving = sample_driving_on(&grid, cfg.seed, i);
        path_estimates(&driving, params, cfg, &weights)
    });

    let mut at_delta = [Moments::default(); DIM];
    let mut finest = [Moments::default(); DIM];
    let mut shift = [Moments::default(); DIM];
    let mut failed = 0;
    for r in results {
        match r {
            Ok(est) => {
                for k in 0..DIM {
                    at_delta[k].push(est[0][k]);
                    shift[k].push(est[1][k] - est[0][k]);
                    finest[k].push(est[2][k]);
                }
            }
            Err(e) => {
                log::debug!("path skipped: {e}");
                failed += 1;
            }
        }
    }
    check_failures(failed, cfg.n_paths)?;

    let expected = expected_signature_level3(params, &QuadratureSpec::default())?;
    let words: Vec<Word> = Word::up_to(LEVEL).filter(|w| !w.is_empty()).collect();
    let table = |m: &[Moments; DIM], target: &dyn Fn(&Word) -> f64| -> Vec<WordEstimate> {
        words
            .iter()
            .map(|w| {
                let k = dense_index(w);
                WordEstimate {
                    word: w.to_string(),
                    mean: m[k].mean(),
                    std_error: m[k].std_error(),
                    expected: target(w),
                }
            })
            .collect()
    };
    let exp = |w: &Word| expected.series.get(w);
    Ok(SignatureMcReport {
        kappa: params.kappa,
        seed: cfg.seed,
        splitting_rule: SPLITTING_RULE.to_string(),
        n_paths: cfg.n_paths,
        n_failed: failed,
        n_steps: cfg.n_steps,
        closure_delta: cfg.closure_delta,
        extrapolation: if cfg.extrapolate {
            format!("richardson n={},{},{} h~n^-1/2", cfg.n_steps, cfg.n_steps / 2, cfg.n_steps / 4)
        } else {
            "none".to_string()
        },
        a_kappa: expected.a_kappa,
        words: table(&at_delta, &exp),
        finest_level: table(&finest, &exp),
        closure_shift: table(&shift, &|_| 0.0),
    })
}

/// Position of `w` in the dense length-lexicographic layout.
fn dense_index(w: &Word) -> usize {
    let n = w.len();
    let within = w.letters().iter().fold(0, |acc, &l| 2 * acc + (l as usize - 1));
    (1 << n) - 1 + within
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_cancel_first_two_orders() {
        let w = richardson_weights(&STRIDES);
        let h: Vec<f64> = STRIDES.iter().map(|&s| (s as f64).sqrt()).collect();
        for p in 0..3 {
            let m: f64 = w.iter().zip(&h).map(|(w, h)| w * h.powi(p)).sum();
            assert!((m - if p == 0 { 1.0 } else { 0.0 }).abs() < 1e-12, "moment {p}: {m}");
        }
        assert_eq!(richardson_weights(&[1]), vec![1.0]);
    }

    #[test]
    fn dense_layout() {
        let s = crate::roughpath::segment_signature(Complex64::new(0.3, -0.7), 3);
        for w in Word::up_to(3) {
            assert_eq!(s.as_slice()[dense_index(&w)], s.get(&w));
        }
    }

    #[test]
    fn closed_paths_have_exact_low_words() {
        let params = KappaParams::new(2.0).unwrap();
        let cfg = SignatureMcConfig {
            n_paths: 8,
            n_steps: 200,
            closure_delta: 0.02,
            seed: 5,
            extrapolate: true,
        };
        let grid = cfg.grid(&params).unwrap();
        let w = richardson_weights(&STRIDES);
        for i in 0..8 {
            let d = sample_driving_on(&grid, cfg.seed, i);
            let est = path_estimates(&d, &params, &cfg, &w).unwrap();
            for e in est {
                // 1, 2, 11, 22, 111, 222 hold for every closed path, and the
                // weights sum to one
                for (k, v) in [(1, 1.0), (2, 0.0), (3, 0.5), (6, 0.0), (7, 1.0 / 6.0), (14, 0.0)] {
                    assert!((e[k] - v).abs() < 1e-9, "path {i}, index {k}: {}", e[k]);
                }
            }
        }
    }

    #[test]
    fn small_run_is_reproducible() {
        let params = KappaParams::new(2.0).unwrap();
        let cfg = SignatureMcConfig {
            n_paths: 40,
            n_steps: 200,
            closure_delta: 0.02,
            seed: 11,
            extrapolate: false,
        };
        let a = signature_mc(&params, &cfg).unwrap();
        let b = signature_mc(&params, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_failed, 0);
        assert_eq!(a.words.len(), 14);
        assert_eq!(a.word("221").unwrap().expected, a.a_kappa);
        assert_eq!(a.words, a.finest_level);
    }
}
