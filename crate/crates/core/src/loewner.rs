//! Chordal Loewner chains with piecewise-constant driving.
//!
//! On a step of capacity length `dt` with constant driving value `u` the
//! equation `∂ₜ g = a / (g + u)` is solved exactly by
//! `g(z) = -u + √((z + u)² + 2a·dt)`, which maps ℍ minus a vertical slit of
//! height `√(2a·dt)` above `-u` onto ℍ. Tips of the trace are obtained by
//! pulling `-u_k` back through the inverse slit maps `f_1 ∘ … ∘ f_k`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::driving::DrivingFunction;
use crate::error::{Error, Result};
use crate::params::KappaParams;
use crate::path::{Domain, PlanarPath};

/// Default ratio `|Re W| / Im W` above which a side decision is final.
pub const DEFAULT_SIDE_THRESHOLD: f64 = 100.0;

const CHUNK: usize = 128;

/// Square root with nonnegative imaginary part.
///
/// For `y = ±0` the sign of the real part follows the sign of the zero, so
/// points on the two banks of the positive real cut land on opposite sides.
#[inline(always)]
fn sqrt_upper(x: f64, y: f64) -> (f64, f64) {
    let r = (x * x + y * y).sqrt();
    let t = (0.5 * (r + x.abs())).sqrt();
    let m = if t > 0.0 { 0.5 * y.abs() / t } else { 0.0 };
    let (re, im) = if x >= 0.0 { (t, m) } else { (m, t) };
    (re.copysign(y), im)
}

/// One inverse slit map applied to a batch of points in place.
#[inline(always)]
fn apply_inverse(re: &mut [f64], im: &mut [f64], u: f64, c: f64) {
    for (x, y) in re.iter_mut().zip(im.iter_mut()) {
        let xs = *x + u;
        let zr = xs * xs - *y * *y - c;
        let zi = 2.0 * xs * *y;
        let (sr, si) = sqrt_upper(zr, zi);
        *x = sr - u;
        *y = si;
    }
}

/// Inverse of the constant-driving Loewner step:
/// `f(w) = -u + √((w + u)² - 2a·dt)`, mapping ℍ onto ℍ minus the slit
/// `[-u, -u + i√(2a·dt)]`.
pub fn elementary_inverse_map(w: Complex64, u: f64, dt: f64, a: f64) -> Complex64 {
    let xs = w.re + u;
    let (sr, si) = sqrt_upper(xs * xs - w.im * w.im - 2.0 * a * dt, 2.0 * xs * w.im);
    Complex64::new(sr - u, si)
}

/// The constant-driving Loewner step `g(z) = -u + √((z + u)² + 2a·dt)`.
pub fn elementary_forward_map(z: Complex64, u: f64, dt: f64, a: f64) -> Complex64 {
    let xs = z.re + u;
    let (sr, si) = sqrt_upper(xs * xs - z.im * z.im + 2.0 * a * dt, 2.0 * xs * z.im);
    Complex64::new(sr - u, si)
}

/// `g_{t_n}(z)`: all forward steps of `driving` applied to `z`.
pub fn forward_compose(driving: &DrivingFunction, params: &KappaParams, z: Complex64) -> Complex64 {
    let t = driving.times();
    let u = driving.values();
    (1..t.len()).fold(z, |z, k| elementary_forward_map(z, u[k], t[k] - t[k - 1], params.a))
}

/// Step data for the slit maps: driving value and `2a·dt` for steps 1..=n.
struct Steps {
    u: Vec<f64>,
    c: Vec<f64>,
}

impl Steps {
    fn new(driving: &DrivingFunction, params: &KappaParams) -> Self {
        let t = driving.times();
        let u = driving.values();
        let mut us = Vec::with_capacity(t.len());
        let mut cs = Vec::with_capacity(t.len());
        us.push(0.0);
        cs.push(0.0);
        for k in 1..t.len() {
            us.push(u[k]);
            cs.push(2.0 * params.a * (t[k] - t[k - 1]));
        }
        Steps { u: us, c: cs }
    }
}

/// Result of a trace computation that may stop early.
#[derive(Debug, Clone)]
pub struct TraceOutcome {
    /// Tips `γ(t_0 = 0), γ(t_1), …` up to and including the stopping vertex.
    pub path: PlanarPath,
    /// Index of the vertex at which `stop` first returned true.
    pub stopped_at: Option<usize>,
}

/// Tips of the Loewner trace at every grid time, `γ(0) = 0`.
///
/// Costs `n²/2` slit-map evaluations for `n` steps.
pub fn compute_trace(driving: &DrivingFunction, params: &KappaParams) -> Result<PlanarPath> {
    compute_trace_until(driving, params, |_, _| false).map(|o| o.path)
}

/// Like [`compute_trace`], but stops after the first tip for which
/// `stop(index, tip)` is true. Tips are produced in blocks, so at most one
/// block of work is spent past the stopping vertex.
pub fn compute_trace_until(
    driving: &DrivingFunction,
    params: &KappaParams,
    mut stop: impl FnMut(usize, Complex64) -> bool,
) -> Result<TraceOutcome> {
    let steps = Steps::new(driving, params);
    let n = driving.n_steps();
    let times = driving.times();
    let mut points = Vec::with_capacity(n + 1);
    points.push(Complex64::new(0.0, 0.0));

    let mut re = [0.0f64; CHUNK];
    let mut im = [0.0f64; CHUNK];
    let mut k0 = 1;
    while k0 <= n {
        let k1 = (k0 + CHUNK).min(n + 1);
        let m = k1 - k0;
        for (i, k) in (k0..k1).enumerate() {
            // f_k(-u_k) is the tip of the k-th slit.
            re[i] = -steps.u[k];
            im[i] = steps.c[k].sqrt();
        }
        // maps inside the block only act on later tips
        for j in (k0..k1 - 1).rev() {
            let lo = j + 1 - k0;
            apply_inverse(&mut re[lo..m], &mut im[lo..m], steps.u[j], steps.c[j]);
        }
        for j in (1..k0).rev() {
            apply_inverse(&mut re[..m], &mut im[..m], steps.u[j], steps.c[j]);
        }
        for i in 0..m {
            let z = Complex64::new(re[i], im[i].max(0.0));
            if !z.is_finite() {
                return Err(Error::Evaluation {
                    step: k0 + i,
                    reason: format!("non-finite tip {z}"),
                });
            }
            points.push(z);
            let k = k0 + i;
            if stop(k, z) {
                let path = PlanarPath::new_unchecked(times[..=k].to_vec(), points, Domain::UpperHalfPlane);
                return Ok(TraceOutcome {
                    path,
                    stopped_at: Some(k),
                });
            }
        }
        k0 = k1;
    }
    Ok(TraceOutcome {
        path: PlanarPath::new_unchecked(times.to_vec(), points, Domain::UpperHalfPlane),
        stopped_at: None,
    })
}

/// `z ↦ (i - z)/(i + z)`: ℍ onto the unit disk with 0 ↦ 1, i ↦ 0, ∞ ↦ -1.
pub fn half_plane_to_unit_disk(z: Complex64) -> Result<Complex64> {
    let i = Complex64::i();
    let den = i + z;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole(z));
    }
    Ok((i - z) / den)
}

pub fn unit_disk_to_half_plane(z: Complex64) -> Result<Complex64> {
    let den = 1.0 + z;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole(z));
    }
    Ok(Complex64::i() * (1.0 - z) / den)
}

/// `w ↦ w/(w + i)`: ℍ onto the disk of radius 1/2 about 1/2 with 0 ↦ 0,
/// i ↦ 1/2, ∞ ↦ 1.
pub fn half_plane_to_small_disk(w: Complex64) -> Complex64 {
    if w.is_infinite() {
        return Complex64::new(1.0, 0.0);
    }
    w / (w + Complex64::i())
}

/// `z ↦ iz/(1 - z)`, the inverse of [`half_plane_to_small_disk`].
pub fn small_disk_to_half_plane(z: Complex64) -> Result<Complex64> {
    let den = 1.0 - z;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole(z));
    }
    Ok(Complex64::i() * z / den)
}

fn require_half_plane(path: &PlanarPath) -> Result<()> {
    if path.domain() != Domain::UpperHalfPlane {
        return Err(Error::arg(format!(
            "expected an upper-half-plane path, got {:?}",
            path.domain()
        )));
    }
    Ok(())
}

pub fn to_unit_disk(path: &PlanarPath) -> Result<PlanarPath> {
    require_half_plane(path)?;
    let points = path
        .points()
        .iter()
        .map(|&z| half_plane_to_unit_disk(z))
        .collect::<Result<Vec<_>>>()?;
    PlanarPath::new(path.times().to_vec(), points, Domain::UnitDisk)
}

pub fn to_small_disk(path: &PlanarPath) -> Result<PlanarPath> {
    require_half_plane(path)?;
    let points = path.points().iter().map(|&w| half_plane_to_small_disk(w)).collect();
    PlanarPath::new(path.times().to_vec(), points, Domain::SmallDisk)
}

/// Which side of the trace a point ends up on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// The point lies to the right of the trace (the trace passes to its left).
    Right,
    Left,
    /// The driving function ended before a decision was reached.
    Undecided,
}

/// Decides on which side of the trace `z` lies by flowing it forward.
///
/// Once `|Re W| / Im W > threshold` for `W = g_t(z) + B_t` the point is
/// essentially on the real line as seen from the tip, and the sign of
/// `Re W` gives the side.
pub fn left_passage_side(
    driving: &DrivingFunction,
    params: &KappaParams,
    z: Complex64,
    threshold: f64,
) -> Result<Side> {
    if !(z.im > 0.0) {
        return Err(Error::arg(format!("point {z} is not in the open upper half-plane")));
    }
    let t = driving.times();
    let u = driving.values();
    let mut z = z;
    for k in 1..t.len() {
        let c = 2.0 * params.a * (t[k] - t[k - 1]);
        let xs = z.re + u[k];
        let (wr, wi) = sqrt_upper(xs * xs - z.im * z.im + c, 2.0 * xs * z.im);
        if wr.abs() > threshold * wi {
            return Ok(if wr > 0.0 { Side::Right } else { Side::Left });
        }
        z = Complex64::new(wr - u[k], wi);
    }
    Ok(Side::Undecided)
}
