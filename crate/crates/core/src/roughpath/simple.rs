use crate::error::{Error, Result};
use crate::path::PlanarPath;
use crate::predicates::{folds_back, segments_intersect};

/// First pair of segments (by index) that violates simplicity, if any.
fn first_violation(points: &[num_complex::Complex64]) -> Option<(usize, usize)> {
    let m = points.len() - 1;
    for j in 1..m {
        if folds_back(points[j - 1], points[j], points[j + 1]) {
            return Some((j - 1, j));
        }
        for i in 0..j - 1 {
            if segments_intersect(points[i], points[i + 1], points[j], points[j + 1]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// The polyline has no self-intersections: non-adjacent segments are
/// disjoint and adjacent ones meet only at their shared vertex.
pub fn is_simple(path: &PlanarPath) -> bool {
    first_violation(path.points()).is_none()
}

/// A simple sub-polyline through a subset of the vertices whose time gaps and
/// chord lengths are all below `epsilon`.
///
/// A path that already satisfies this is returned as is. Otherwise vertices
/// are chosen greedily: from the current vertex, jump to the furthest vertex
/// within `epsilon` (in time and distance) whose chord keeps the polyline
/// simple.
pub fn simple_approximation(path: &PlanarPath, epsilon: f64) -> Result<PlanarPath> {
    if !(epsilon > 0.0) {
        return Err(Error::arg(format!("epsilon must be positive, got {epsilon}")));
    }
    let t = path.times();
    let z = path.points();
    let n = z.len();
    if let Some(k) = (1..n).find(|&k| t[k] - t[k - 1] >= epsilon || (z[k] - z[k - 1]).norm() >= epsilon) {
        return Err(Error::arg(format!(
            "step {k} already exceeds epsilon {epsilon}; no sub-polyline can satisfy it"
        )));
    }
    if is_simple(path) {
        return Ok(path.clone());
    }

    let mut chosen = vec![0usize];
    let mut i = 0;
    while i < n - 1 {
        let mut last_conflict = None;
        let mut next = None;
        let reach = (i + 1..n).take_while(|&j| t[j] - t[i] < epsilon).collect::<Vec<_>>();
        for &j in reach.iter().rev() {
            if (z[j] - z[i]).norm() >= epsilon {
                continue;
            }
            match conflict(&chosen, z, i, j) {
                None => {
                    next = Some(j);
                    break;
                }
                Some(seg) => last_conflict = Some(seg),
            }
        }
        match next {
            Some(j) => {
                chosen.push(j);
                i = j;
            }
            None => {
                return Err(Error::NotSimple {
                    first: last_conflict.unwrap_or(chosen.len() - 1),
                    second: chosen.len() - 1,
                })
            }
        }
    }
    let times = chosen.iter().map(|&k| t[k]).collect();
    let points = chosen.iter().map(|&k| z[k]).collect();
    PlanarPath::new(times, points, path.domain())
}

/// Index (in the output polyline) of an accepted segment that the chord
/// `z[i] z[j]` would intersect.
fn conflict(chosen: &[usize], z: &[num_complex::Complex64], i: usize, j: usize) -> Option<usize> {
    let m = chosen.len();
    if m >= 2 && folds_back(z[chosen[m - 2]], z[i], z[j]) {
        return Some(m - 2);
    }
    (0..m.saturating_sub(2)).find(|&s| segments_intersect(z[chosen[s]], z[chosen[s + 1]], z[i], z[j]))
}
