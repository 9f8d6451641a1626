use std::collections::HashSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::PlanarPath;

/// Number of cells of side `ell/√2` met by the polyline.
///
/// Cells are half-open `[i h, (i+1) h) × [j h, (j+1) h)`; segments are walked
/// cell by cell (Amanatides–Woo), so every cell the segment passes through is
/// counted exactly once.
pub fn box_count(path: &PlanarPath, ell: f64) -> usize {
    assert!(ell > 0.0, "ell must be positive");
    let h = ell / std::f64::consts::SQRT_2;
    let cell = |z: Complex64| ((z.re / h).floor() as i64, (z.im / h).floor() as i64);
    let pts = path.points();
    let mut cells = HashSet::new();
    if let Some(&p) = pts.first() {
        cells.insert(cell(p));
    }
    for w in pts.windows(2) {
        walk_segment(w[0] / h, w[1] / h, &mut cells);
    }
    cells.len()
}

/// Insert every unit cell met by the segment `p → q` (already scaled).
fn walk_segment(p: Complex64, q: Complex64, cells: &mut HashSet<(i64, i64)>) {
    let (mut i, mut j) = (p.re.floor() as i64, p.im.floor() as i64);
    let (iq, jq) = (q.re.floor() as i64, q.im.floor() as i64);
    cells.insert((i, j));
    let d = q - p;
    let step_i = if d.re > 0.0 { 1 } else { -1 };
    let step_j = if d.im > 0.0 { 1 } else { -1 };
    let next_boundary = |x: f64, k: i64, step: i64| if step > 0 { (k + 1) as f64 - x } else { x - k as f64 };
    let mut t_max_x = if d.re != 0.0 { next_boundary(p.re, i, step_i) / d.re.abs() } else { f64::INFINITY };
    let mut t_max_y = if d.im != 0.0 { next_boundary(p.im, j, step_j) / d.im.abs() } else { f64::INFINITY };
    let dt_x = if d.re != 0.0 { 1.0 / d.re.abs() } else { f64::INFINITY };
    let dt_y = if d.im != 0.0 { 1.0 / d.im.abs() } else { f64::INFINITY };
    // the walk takes exactly |Δi| + |Δj| steps
    let steps = (iq - i).abs() + (jq - j).abs();
    for _ in 0..steps {
        if t_max_x < t_max_y && i != iq {
            i += step_i;
            t_max_x += dt_x;
        } else if j != jq {
            j += step_j;
            t_max_y += dt_y;
        } else {
            i += step_i;
            t_max_x += dt_x;
        }
        cells.insert((i, j));
    }
}

const TORTUOSITY_SLACK: f64 = 1e-12;

/// Minimal number of consecutive pieces of diameter ≤ `ell` partitioning the path.
///
/// Each piece is extended greedily until its diameter would exceed `ell`;
/// pieces may break mid-segment.
pub fn tortuosity_segments(path: &PlanarPath, ell: f64) -> usize {
    assert!(ell > 0.0, "ell must be positive");
    tortuosity_breaks(path.points(), ell).len() + 1
}

/// Break points (segment index, parameter) of the greedy partition.
pub(crate) fn tortuosity_breaks(pts: &[Complex64], ell: f64) -> Vec<(usize, f64)> {
    let mut breaks = Vec::new();
    if pts.len() < 2 {
        return breaks;
    }
    let loose = ell * (1.0 + TORTUOSITY_SLACK);
    let mut piece: Vec<Complex64> = vec![pts[0]];
    let mut seg = 0;
    let mut s = 0.0;
    while seg < pts.len() - 1 {
        let (p, q) = (pts[seg], pts[seg + 1]);
        let d = q - p;
        if d.norm_sqr() == 0.0 {
            seg += 1;
            s = 0.0;
            continue;
        }
        if piece.iter().all(|v| (q - v).norm() <= loose) {
            piece.push(q);
            seg += 1;
            s = 0.0;
            continue;
        }
        // largest s' ≥ s with |p + s' d − v| ≤ ell for all v in the piece
        let dd = d.norm_sqr();
        let mut upper = 1.0f64;
        for v in &piece {
            let w = p - v;
            let b = (w.re * d.re + w.im * d.im) / dd;
            let c = (w.norm_sqr() - ell * ell) / dd;
            let disc = b * b - c;
            let root = if disc > 0.0 { -b + disc.sqrt() } else { -b };
            upper = upper.min(root);
        }
        let cut = upper.max(s);
        breaks.push((seg, cut));
        let start = p + d * cut;
        piece.clear();
        piece.push(start);
        s = cut;
    }
    breaks
}

/// Geometric ladder `ell0 · 2^{-j}`, `j = 0..=j_max`.
pub fn scale_ladder(ell0: f64, j_max: u32) -> Vec<f64> {
    (0..=j_max).map(|j| ell0 * 0.5f64.powi(j as i32)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub std_error: f64,
    pub n_points: usize,
}

/// Least-squares slope of ln(count) against ln(1/ell), after dropping the
/// `discard` coarsest scales.
pub fn fit_log_slope(ells: &[f64], counts: &[f64], discard: usize) -> Result<LogLogFit> {
    if ells.len() != counts.len() {
        return Err(Error::arg("ells and counts differ in length"));
    }
    let mut pairs: Vec<(f64, f64)> = ells.iter().copied().zip(counts.iter().copied()).collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let pairs = pairs.get(discard..).unwrap_or(&[]);
    if pairs.len() < 2 {
        return Err(Error::Fit("need at least two scales after discarding".into()));
    }
    if pairs.iter().any(|&(l, c)| !(l > 0.0) || !(c > 0.0)) {
        return Err(Error::arg("scales and counts must be positive"));
    }
    let xs: Vec<f64> = pairs.iter().map(|p| -p.0.ln()).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum::<f64>() / sxx;
    let intercept = ybar - slope * xbar;
    let std_error = if xs.len() > 2 {
        let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
        (rss / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(LogLogFit {
        slope,
        intercept,
        std_error,
        n_points: xs.len(),
    })
}
