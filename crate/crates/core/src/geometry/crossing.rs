use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::PlanarPath;
use crate::predicates::segment_circle_params;

/// Open annulus `r < |z - center| < big_r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Annulus {
    pub center: Complex64,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
}

impl Annulus {
    pub fn new(center: Complex64, r: f64, big_r: f64) -> Result<Self> {
        if !(r > 0.0 && big_r > r && big_r.is_finite() && center.is_finite()) {
            return Err(Error::arg(format!("need 0 < r < R, got r = {r}, R = {big_r}")));
        }
        Ok(Annulus { center, r, big_r })
    }

    pub fn ratio(&self) -> f64 {
        self.r / self.big_r
    }

    fn classify(&self, z: Complex64) -> Option<Label> {
        let d = (z - self.center).norm();
        if d <= self.r {
            Some(Label::I)
        } else if d >= self.big_r {
            Some(Label::O)
        } else {
            None
        }
    }
}

/// Which side of the annulus the curve is on at a crossing time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Label {
    /// In the closed inner disk.
    I,
    /// In the closed exterior of the outer disk.
    O,
}

impl Label {
    fn other(self) -> Label {
        match self {
            Label::I => Label::O,
            Label::O => Label::I,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingRecord {
    /// First time the curve is outside the open annulus.
    pub tau0: Option<f64>,
    /// Label at `tau0`.
    pub label0: Option<Label>,
    /// Crossing times τ₁ < τ₂ < …
    pub tau: Vec<f64>,
    /// `labels[i]` is where the curve is at `tau[i]`.
    pub labels: Vec<Label>,
}

impl CrossingRecord {
    pub fn count(&self) -> usize {
        self.tau.len()
    }
}

/// Crossing times of `path` through `annulus`.
///
/// τ₀ is the first time outside the open annulus; each later τ is the first
/// time after the previous one that the curve reaches the opposite closed
/// set (inner disk or outer exterior). Hits are located exactly on each
/// segment by solving the segment–circle quadratic.
pub fn crossing_times(path: &PlanarPath, annulus: &Annulus) -> Result<CrossingRecord> {
    if path.is_empty() {
        return Err(Error::arg("empty path"));
    }
    let z = path.points();
    let t = path.times();
    let time_at = |i: usize, s: f64| t[i] + s * (t[i + 1] - t[i]);

    let mut record = CrossingRecord {
        tau0: None,
        label0: None,
        tau: Vec::new(),
        labels: Vec::new(),
    };

    // τ₀: first exit from the open annulus
    let (mut seg, mut s, mut label) = match annulus.classify(z[0]) {
        Some(l) => (0, 0.0, l),
        None => {
            let mut found = None;
            for i in 0..z.len() - 1 {
                let hit_r = first_root_after(z[i], z[i + 1], annulus.center, annulus.r, 0.0);
                let hit_big = first_root_after(z[i], z[i + 1], annulus.center, annulus.big_r, 0.0);
                let hit = match (hit_r, hit_big) {
                    (Some(a), Some(b)) if a <= b => Some((a, Label::I)),
                    (Some(_), Some(b)) => Some((b, Label::O)),
                    (Some(a), None) => Some((a, Label::I)),
                    (None, Some(b)) => Some((b, Label::O)),
                    (None, None) => None,
                };
                if let Some((s, l)) = hit {
                    found = Some((i, s, l));
                    break;
                }
            }
            match found {
                Some(f) => f,
                None => return Ok(record),
            }
        }
    };
    if z.len() == 1 {
        record.tau0 = Some(t[0]);
        record.label0 = Some(label);
        return Ok(record);
    }
    record.tau0 = Some(time_at(seg, s));
    record.label0 = Some(label);

    loop {
        let target = label.other();
        let mut found = None;
        let mut i = seg;
        let mut from = s;
        while i < z.len() - 1 {
            let start = z[i] + (z[i + 1] - z[i]) * from;
            if annulus.classify(start) == Some(target) {
                found = Some((i, from));
                break;
            }
            let radius = match target {
                Label::I => annulus.r,
                Label::O => annulus.big_r,
            };
            if let Some(h) = first_root_after(z[i], z[i + 1], annulus.center, radius, from) {
                found = Some((i, h));
                break;
            }
            i += 1;
            from = 0.0;
        }
        match found {
            Some((i, h)) => {
                record.tau.push(time_at(i, h));
                record.labels.push(target);
                seg = i;
                s = h;
                label = target;
            }
            None => return Ok(record),
        }
    }
}

/// Smallest parameter `> from` where segment `pq` meets the circle.
fn first_root_after(p: Complex64, q: Complex64, center: Complex64, radius: f64, from: f64) -> Option<f64> {
    segment_circle_params(p, q, center, radius)
        .into_iter()
        .find(|&s| s > from)
}
