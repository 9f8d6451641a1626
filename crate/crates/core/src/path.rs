use std::io::{self, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const DOMAIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    UpperHalfPlane,
    /// The unit disk, traces from 1 to -1.
    UnitDisk,
    /// The disk of radius 1/2 about 1/2, traces from 0 to 1.
    SmallDisk,
    /// No domain constraint (synthetic test paths).
    Plane,
}

impl Domain {
    pub fn contains(self, z: Complex64) -> bool {
        match self {
            Domain::UpperHalfPlane => z.im >= -DOMAIN_TOL,
            Domain::UnitDisk => z.norm() <= 1.0 + DOMAIN_TOL,
            Domain::SmallDisk => (z - 0.5).norm() <= 0.5 + DOMAIN_TOL,
            Domain::Plane => true,
        }
    }
}

/// A time-stamped polyline in the plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarPath {
    times: Vec<f64>,
    points: Vec<Complex64>,
    domain: Domain,
}

impl PlanarPath {
    pub fn new(times: Vec<f64>, points: Vec<Complex64>, domain: Domain) -> Result<Self> {
        if times.len() != points.len() {
            return Err(Error::arg(format!(
                "{} times for {} points",
                times.len(),
                points.len()
            )));
        }
        if times.len() < 2 {
            return Err(Error::arg("a path needs at least two vertices"));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::arg("path times must be strictly increasing"));
        }
        if let Some(z) = points.iter().find(|z| !z.is_finite() || !domain.contains(**z)) {
            return Err(Error::arg(format!("point {z} lies outside {domain:?}")));
        }
        Ok(PlanarPath {
            times,
            points,
            domain,
        })
    }

    /// Vertices at times `0, 1, …, n-1`.
    pub fn from_points(points: Vec<Complex64>, domain: Domain) -> Result<Self> {
        let times = (0..points.len()).map(|k| k as f64).collect();
        Self::new(times, points, domain)
    }

    pub(crate) fn new_unchecked(times: Vec<f64>, points: Vec<Complex64>, domain: Domain) -> Self {
        debug_assert_eq!(times.len(), points.len());
        PlanarPath {
            times,
            points,
            domain,
        }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn start(&self) -> Complex64 {
        self.points[0]
    }

    pub fn end(&self) -> Complex64 {
        self.points[self.points.len() - 1]
    }

    pub fn time_span(&self) -> (f64, f64) {
        (self.times[0], self.times[self.times.len() - 1])
    }

    /// Linear interpolation between vertices; clamps outside the time span.
    pub fn point_at(&self, t: f64) -> Complex64 {
        let n = self.times.len();
        if t <= self.times[0] {
            return self.points[0];
        }
        if t >= self.times[n - 1] {
            return self.points[n - 1];
        }
        let j = self.times.partition_point(|&s| s <= t);
        let (t0, t1) = (self.times[j - 1], self.times[j]);
        let s = (t - t0) / (t1 - t0);
        self.points[j - 1] + (self.points[j] - self.points[j - 1]) * s
    }

    /// Same vertices with times passed through a strictly increasing map.
    pub fn retimed(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            self.times.iter().map(|&t| f(t)).collect(),
            self.points.clone(),
            self.domain,
        )
    }

    pub fn with_domain(mut self, domain: Domain) -> Result<Self> {
        if let Some(z) = self.points.iter().find(|z| !domain.contains(**z)) {
            return Err(Error::arg(format!("point {z} lies outside {domain:?}")));
        }
        self.domain = domain;
        Ok(self)
    }

    /// Truncates after vertex `last` (inclusive) and appends a straight
    /// segment to `endpoint`, one time unit of the last step later.
    pub fn truncate_and_close(&self, last: usize, endpoint: Complex64) -> Result<Self> {
        if last == 0 || last >= self.len() {
            return Err(Error::arg(format!("cannot truncate a {}-vertex path after {last}", self.len())));
        }
        let mut times = self.times[..=last].to_vec();
        let mut points = self.points[..=last].to_vec();
        let dt = times[last] - times[last - 1];
        times.push(times[last] + dt);
        points.push(endpoint);
        Self::new(times, points, self.domain)
    }

    /// Euclidean length of the polyline.
    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
    }

    /// Writes `t,re,im` rows with shortest round-trip float formatting.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,re,im")?;
        for (t, z) in self.times.iter().zip(&self.points) {
            writeln!(out, "{t:?},{:?},{:?}", z.re, z.im)?;
        }
        Ok(())
    }

    pub fn read_csv(text: &str, domain: Domain) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.starts_with('#'));
        match lines.next() {
            Some("t,re,im") => {}
            other => return Err(Error::arg(format!("bad CSV header {other:?}"))),
        }
        let mut times = Vec::new();
        let mut points = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::arg(format!("bad CSV row {line:?}")));
            }
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::arg(format!("bad number {s:?}: {e}")))
            };
            times.push(parse(fields[0])?);
            points.push(Complex64::new(parse(fields[1])?, parse(fields[2])?));
        }
        Self::new(times, points, domain)
    }
}
