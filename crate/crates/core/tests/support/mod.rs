//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use num_complex::Complex64;
use sle_core::{Domain, PlanarPath};

/// Level-3 iterated integrals by nested cumulative trapezoid sums on `m`
/// sub-steps per segment, extrapolated from `m` and `2m`.
///
/// Within a segment the level-2 integrals are quadratic in time, so the
/// level-3 trapezoid error is exactly proportional to h² and one Richardson
/// step removes it.
pub fn nested_quadrature(path: &PlanarPath, word: &[usize], m: usize) -> f64 {
    let run = |m: usize| -> f64 {
        let z = path.points();
        let mut xs: Vec<[f64; 2]> = Vec::new();
        for w in z.windows(2) {
            for k in 0..m {
                let p = w[0] + (w[1] - w[0]) * (k as f64 / m as f64);
                xs.push([p.re, p.im]);
            }
        }
        let last = z[z.len() - 1];
        xs.push([last.re, last.im]);
        // cumulative integral of the previous level against each letter in turn
        let mut f: Vec<f64> = vec![1.0; xs.len()];
        for &letter in word {
            let mut g = vec![0.0; xs.len()];
            for j in 1..xs.len() {
                g[j] = g[j - 1] + 0.5 * (f[j - 1] + f[j]) * (xs[j][letter] - xs[j - 1][letter]);
            }
            f = g;
        }
        f[xs.len() - 1]
    };
    (4.0 * run(2 * m) - run(m)) / 3.0
}

/// Signed y-moment `∬ y dA` of the polygon, by the shoelace-type formula.
pub fn polygon_y_moment(z: &[Complex64]) -> f64 {
    let n = z.len();
    (0..n)
        .map(|i| {
            let (p, q) = (z[i], z[(i + 1) % n]);
            (p.re * q.im - q.re * p.im) * (p.im + q.im)
        })
        .sum::<f64>()
        / 6.0
}

/// Small deterministic generator for test geometry.
pub struct XorShift(pub u64);

impl XorShift {
    /// Uniform on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    /// `n` vertices uniform in the square [−1, 1]².
    pub fn polyline(&mut self, n: usize) -> PlanarPath {
        let pts = (0..n)
            .map(|_| Complex64::new(2.0 * self.uniform() - 1.0, 2.0 * self.uniform() - 1.0))
            .collect();
        PlanarPath::from_points(pts, Domain::Plane).unwrap()
    }

    /// x-monotone polyline from 0 to 1 inside the disk |z − ½| < ½, hence
    /// simple.
    pub fn monotone_disk_polyline(&mut self) -> PlanarPath {
        let n = 5 + (self.uniform() * 20.0) as usize;
        let mut xs: Vec<f64> = (0..n).map(|_| self.uniform()).collect();
        xs.sort_by(f64::total_cmp);
        let mut pts = vec![Complex64::new(0.0, 0.0)];
        for x in xs {
            let h = (x * (1.0 - x)).sqrt();
            pts.push(Complex64::new(x, (2.0 * self.uniform() - 1.0) * 0.99 * h));
        }
        pts.push(Complex64::new(1.0, 0.0));
        PlanarPath::from_points(pts, Domain::SmallDisk).unwrap()
    }
}
