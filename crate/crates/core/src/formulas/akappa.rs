//! The coefficient `A_κ` of the words 122, 212, 221 in the expected
//! signature of SLE from 0 to 1 in the disk of radius 1/2 about 1/2.

use std::f64::consts::{FRAC_PI_2, LN_2};
use std::io::{self, Write};

use serde::Serialize;

use super::quadrature::{integrate, QuadratureSpec};
use super::schramm::below_probability_with;
use crate::error::{Error, Result};
use crate::params::KappaParams;
use crate::roughpath::{TensorSeries, Word};

/// Catalan's constant `Σ_{k≥0} (-1)^k / (2k+1)²`.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_05;

/// The κ values with integer λ = 0, 1, …, 6.
pub const TABLE_KAPPAS: [f64; 7] = [4.0, 8.0 / 3.0, 2.0, 8.0 / 5.0, 4.0 / 3.0, 8.0 / 7.0, 1.0];

/// `(sin t - t cos t) / sin³ t`, with its Taylor polynomial near 0.
fn q_ratio(t: f64) -> f64 {
    if t < 1e-3 {
        let t2 = t * t;
        1.0 / 3.0 + t2 * (2.0 / 15.0 + t2 * (2.0 / 63.0 + t2 * 4.0 / 675.0))
    } else {
        let s = t.sin();
        (s - t * t.cos()) / (s * s * s)
    }
}

/// `(C_κ/4) ∫₀^{π/2} (sin t − t cos t)/sin³ t · cos^λ t dt − 1/24`.
pub fn a_kappa_quadrature(params: &KappaParams, quad: &QuadratureSpec) -> Result<f64> {
    let lambda = params.lambda;
    let r = integrate(|t: f64| q_ratio(t) * t.cos().max(0.0).powf(lambda), 0.0, FRAC_PI_2, quad)?;
    Ok(params.c_kappa / 4.0 * r.value - 1.0 / 24.0)
}

/// Closed form for integer λ ∈ {0, …, 6}; `None` otherwise.
pub fn a_kappa_closed_form(params: &KappaParams) -> Option<f64> {
    let l = params.lambda.round();
    if (params.lambda - l).abs() > 1e-9 {
        return None;
    }
    let k = CATALAN;
    match l as i64 {
        0 => Some(1.0 / 48.0),
        1 => Some((6.0 * k - 5.0) / 48.0),
        2 => Some(LN_2 / 4.0 - 1.0 / 6.0),
        3 => Some((54.0 * k - 49.0) / 96.0),
        4 => Some(2.0 / 3.0 * LN_2 - 11.0 / 24.0),
        5 => Some((150.0 * k - 137.0) / 128.0),
        6 => Some(1.2 * LN_2 - 199.0 / 240.0),
        _ => None,
    }
}

/// `1/12 − ∫_D y·p(x, y) dx dy`, integrated in polar coordinates about the
/// disk center with `p` evaluated through the left-passage law.
pub fn a_kappa_double_integral(params: &KappaParams, quad: &QuadratureSpec) -> Result<f64> {
    let inner_quad = QuadratureSpec {
        abs_tol: quad.abs_tol * 0.1,
        ..*quad
    };
    let phi_quad = QuadratureSpec {
        abs_tol: (quad.abs_tol * 1e-3).max(1e-15),
        rel_tol: 1e-13,
        ..*quad
    };
    let mut failure = None;
    let mut radial = |psi: f64| -> f64 {
        let (s, c) = psi.sin_cos();
        let inner = integrate(
            |rho: f64| {
                let x = 0.5 + rho * c;
                let y = rho * s;
                match below_probability_with(x, y, params, &phi_quad) {
                    Ok(p) => y * p * rho,
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                }
            },
            0.0,
            0.5,
            &inner_quad,
        );
        match inner {
            Ok(r) => r.value,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let mut total = 0.0;
    // p and y change character at the real axis; keep quarter turns separate
    for k in 0..4 {
        let lo = k as f64 * FRAC_PI_2;
        total += integrate(&mut radial, lo, lo + FRAC_PI_2, quad)?.value;
    }
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(1.0 / 12.0 - total)
}

/// `H(θ) = cos θ ∫₀^∞ r² / (r² + 1 + 2r sin θ)³ dr` in closed form.
pub fn inner_radial_closed_form(theta: f64) -> f64 {
    if FRAC_PI_2 - theta < 0.05 {
        return reflected_inner_radial(FRAC_PI_2 - theta);
    }
    let (s, c) = theta.sin_cos();
    (2.0 * s * s + 1.0) * (FRAC_PI_2 - theta - s * c) / (8.0 * c.powi(4)) - theta.tan() / 4.0
}

/// `H(π/2 − θ) = (3θ − 2θ sin²θ − 3 cos θ sin θ) / (8 sin⁴ θ)`.
pub fn reflected_inner_radial(theta: f64) -> f64 {
    if theta < 0.05 {
        let t2 = theta * theta;
        return theta
            * (1.0 / 30.0 + t2 * (1.0 / 63.0 + t2 * (1.0 / 225.0 + t2 * (2.0 / 2079.0 + t2 * 691.0 / 3_869_775.0))));
    }
    let (s, c) = theta.sin_cos();
    (3.0 * theta - 2.0 * theta * s * s - 3.0 * c * s) / (8.0 * s.powi(4))
}

/// `∫_t^{π/2} H(π/2 − θ) dθ = (1 − (sin t − t cos t)/sin³ t) / 8`.
pub fn reflected_inner_radial_tail(t: f64) -> f64 {
    (1.0 - q_ratio(t)) / 8.0
}

/// `H(θ)` by direct quadrature of the radial integral, folding `[1, ∞)`
/// onto `[0, 1]` with `r ↦ 1/r` (the integrand is invariant under it).
pub fn inner_radial_quadrature(theta: f64, quad: &QuadratureSpec) -> Result<f64> {
    let s = theta.sin();
    let r = integrate(
        |r: f64| {
            let d = r * r + 1.0 + 2.0 * r * s;
            r * r / (d * d * d)
        },
        0.0,
        1.0,
        quad,
    )?;
    Ok(theta.cos() * 2.0 * r.value)
}

/// Expected signature up to grading 3.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectedSignature3 {
    #[serde(flatten)]
    pub series: TensorSeries,
    pub a_kappa: f64,
}

/// `1 + e₁ + ½e₁₁ + ⅙e₁₁₁ + A(e₁₂₂ − 2e₂₁₂ + e₂₂₁)`; every other word of
/// length ≤ 3 has zero expectation.
pub fn expected_signature_level3(params: &KappaParams, quad: &QuadratureSpec) -> Result<ExpectedSignature3> {
    let a = match a_kappa_closed_form(params) {
        Some(a) => a,
        None => a_kappa_quadrature(params, quad)?,
    };
    let mut series = TensorSeries::identity(3);
    for (w, v) in [
        ("1", 1.0),
        ("11", 0.5),
        ("111", 1.0 / 6.0),
        ("122", a),
        ("212", -2.0 * a),
        ("221", a),
    ] {
        let w: Word = w.parse()?;
        series.set(&w, v)?;
    }
    Ok(ExpectedSignature3 { series, a_kappa: a })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub kappa: f64,
    pub lambda: f64,
    pub closed_form: f64,
    pub quadrature: f64,
    pub abs_diff: f64,
}

pub fn table_rows(quad: &QuadratureSpec) -> Result<Vec<TableRow>> {
    TABLE_KAPPAS
        .iter()
        .map(|&kappa| {
            let p = KappaParams::new(kappa)?;
            let closed_form = a_kappa_closed_form(&p)
                .ok_or_else(|| Error::arg(format!("no closed form for kappa {kappa}")))?;
            let quadrature = a_kappa_quadrature(&p, quad)?;
            Ok(TableRow {
                kappa,
                lambda: p.lambda,
                closed_form,
                quadrature,
                abs_diff: (closed_form - quadrature).abs(),
            })
        })
        .collect()
}

/// CSV with header `kappa,lambda,closed_form,quadrature,abs_diff`.
pub fn write_table_csv<W: Write>(rows: &[TableRow], mut out: W) -> io::Result<()> {
    writeln!(out, "kappa,lambda,closed_form,quadrature,abs_diff")?;
    for r in rows {
        writeln!(
            out,
            "{:?},{:?},{:?},{:?},{:?}",
            r.kappa, r.lambda, r.closed_form, r.quadrature, r.abs_diff
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn q() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn catalan_series() {
        // alternating series; pair terms to speed up convergence
        let mut s = 0.0;
        for k in (0..2_000_000).rev() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            s += sign / ((2 * k + 1) as f64).powi(2);
        }
        assert!((s - CATALAN).abs() < 1e-12);
    }

    #[test]
    fn quadrature_matches_table() {
        for kappa in TABLE_KAPPAS {
            let p = KappaParams::new(kappa).unwrap();
            let a = a_kappa_quadrature(&p, &q()).unwrap();
            let c = a_kappa_closed_form(&p).unwrap();
            assert!((a - c).abs() < 1e-10, "kappa {kappa}: {a} vs {c}");
        }
    }

    #[test]
    fn closed_form_values() {
        let v = |k: f64| a_kappa_closed_form(&KappaParams::new(k).unwrap());
        assert!((v(4.0).unwrap() - 0.020_833_333_3).abs() < 1e-10);
        assert!((v(2.0).unwrap() - 0.006_620_128_0).abs() < 1e-9);
        assert!((v(8.0 / 3.0).unwrap() - 0.010_329_0).abs() < 1e-7);
        assert!((v(1.6).unwrap() - 0.004_814_0).abs() < 1e-7);
        assert!((v(1.0).unwrap() - 0.002_610_0).abs() < 1e-7);
        assert!(v(3.7).is_none());
    }

    #[test]
    fn non_integer_lambda_quadrature_converges() {
        for kappa in [0.3, 3.7, 3.99] {
            let p = KappaParams::new(kappa).unwrap();
            let a = a_kappa_quadrature(&p, &q()).unwrap();
            assert!(a > 0.0 && a < 0.021, "{kappa}: {a}");
        }
    }

    #[test]
    fn radial_closed_form() {
        let th = PI / 6.0;
        let direct = inner_radial_quadrature(th, &q()).unwrap();
        assert!((inner_radial_closed_form(th) - direct).abs() < 1e-8);
        // the series branch agrees with the closed form where both are accurate
        for t in [0.05, 0.06, 0.2] {
            let s = reflected_inner_radial(t);
            let direct = inner_radial_quadrature(FRAC_PI_2 - t, &q()).unwrap();
            assert!((s - direct).abs() < 1e-12, "{t}");
        }
    }

    #[test]
    fn expected_signature_shape() {
        let p = KappaParams::new(4.0).unwrap();
        let e = expected_signature_level3(&p, &q()).unwrap();
        assert!((e.series.coeff("221") - 1.0 / 48.0).abs() < 1e-15);
        assert!((e.series.coeff("212") + 1.0 / 24.0).abs() < 1e-15);
        for w in ["2", "12", "21", "22", "222", "112", "121", "211"] {
            assert_eq!(e.series.coeff(w), 0.0, "{w}");
        }
        let s = e.series.coeff("122") + e.series.coeff("212") + e.series.coeff("221");
        assert_eq!(s, 0.0);
        let json = serde_json::to_value(&e).unwrap();
        assert_eq!(json["level"], 3);
        assert!(json["coeffs"]["221"].is_number());
        assert!(json["a_kappa"].is_number());
    }

    #[test]
    fn table_csv() {
        let rows = table_rows(&q()).unwrap();
        assert_eq!(rows.len(), 7);
        let mut buf = Vec::new();
        write_table_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 8);
        assert!(text.starts_with("kappa,lambda,closed_form,quadrature,abs_diff\n"));
    }
}
