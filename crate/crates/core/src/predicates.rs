//! Planar predicates in double precision with a relative slack.

use num_complex::Complex64;

const SLACK: f64 = 1e-12;

/// Twice the signed area of the triangle `(a, b, c)`.
#[inline]
pub fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re)
}

/// Sign of [`orient`], with values within the slack treated as collinear.
fn orient_sign(a: Complex64, b: Complex64, c: Complex64) -> i8 {
    let o = orient(a, b, c);
    let scale = (b - a).norm() * ((c - a).norm().max((c - b).norm()));
    if o.abs() <= SLACK * scale {
        0
    } else if o > 0.0 {
        1
    } else {
        -1
    }
}

/// `c` lies on segment `ab`, given that the three points are collinear.
fn on_segment(a: Complex64, b: Complex64, c: Complex64) -> bool {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (c - a).norm() <= SLACK;
    }
    let s = ((c - a) * d.conj()).re / len2;
    (-SLACK..=1.0 + SLACK).contains(&s)
}

/// Closed segments `p1p2` and `q1q2` share at least one point.
pub fn segments_intersect(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = orient_sign(p1, p2, q1);
    let d2 = orient_sign(p1, p2, q2);
    let d3 = orient_sign(q1, q2, p1);
    let d4 = orient_sign(q1, q2, p2);
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(p1, p2, q1))
        || (d2 == 0 && on_segment(p1, p2, q2))
        || (d3 == 0 && on_segment(q1, q2, p1))
        || (d4 == 0 && on_segment(q1, q2, p2))
}

/// Consecutive segments `ab`, `bc` overlap beyond their shared vertex,
/// i.e. `bc` doubles back along `ab`.
pub fn folds_back(a: Complex64, b: Complex64, c: Complex64) -> bool {
    orient_sign(a, b, c) == 0 && ((a - b) * (c - b).conj()).re > 0.0
}

/// Parameters `s ∈ [0, 1]` where `p + s(q - p)` meets the circle of radius
/// `rho` about `center`, in increasing order. Tangential contacts (relative
/// discriminant below 1e-12) are reported as no intersection.
pub fn segment_circle_params(p: Complex64, q: Complex64, center: Complex64, rho: f64) -> Vec<f64> {
    let d = q - p;
    let f = p - center;
    let a = d.norm_sqr();
    if a == 0.0 {
        return Vec::new();
    }
    let b = (f * d.conj()).re;
    let c = f.norm_sqr() - rho * rho;
    let disc = b * b - a * c;
    if disc <= SLACK * a * rho * rho {
        return Vec::new();
    }
    let sq = disc.sqrt();
    // stable roots of a s² + 2b s + c = 0
    let qq = -(b + sq.copysign(b));
    let (mut s1, mut s2) = if qq != 0.0 { (qq / a, c / qq) } else { (-sq / a, sq / a) };
    if s1 > s2 {
        std::mem::swap(&mut s1, &mut s2);
    }
    [s1, s2].into_iter().filter(|s| (0.0..=1.0).contains(s)).collect()
}
