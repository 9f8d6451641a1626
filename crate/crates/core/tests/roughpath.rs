use num_complex::Complex64;
use proptest::prelude::*;
use sle_core::roughpath::{
    chen_concat, p_variation, segment_signature, shuffle_product, signature_of_polyline, young_integral_sampled,
    SampledFunction, TensorSeries, Word,
};
use sle_core::{Domain, PlanarPath};

mod support;
use support::{nested_quadrature, polygon_y_moment, XorShift};

fn poly(pts: &[(f64, f64)]) -> PlanarPath {
    PlanarPath::from_points(pts.iter().map(|&(x, y)| Complex64::new(x, y)).collect(), Domain::Plane).unwrap()
}

fn points() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..12)
}

#[test]
fn chen_matches_nested_quadrature() {
    let mut rng = XorShift(0x9e3779b97f4a7c15);
    for _ in 0..50 {
        let path = rng.polyline(10);
        let sig = signature_of_polyline(&path, 3).unwrap();
        for w in Word::up_to(3).filter(|w| !w.is_empty()) {
            let letters: Vec<usize> = w.letters().iter().map(|&l| l as usize - 1).collect();
            let oracle = nested_quadrature(&path, &letters, 8);
            assert!((sig.get(&w) - oracle).abs() < 1e-10, "{w}: {} vs {oracle}", sig.get(&w));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shuffle_identities(pts in points()) {
        let sig = signature_of_polyline(&poly(&pts), 3).unwrap();
        for u in Word::up_to(3) {
            for v in Word::up_to(3 - u.len()) {
                let lhs = sig.get(&u) * sig.get(&v);
                let rhs = sig.pair(&shuffle_product(&u, &v));
                prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()), "{u} ⧢ {v}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn chen_is_associative(
        a in (-1.0f64..1.0, -1.0f64..1.0), b in (-1.0f64..1.0, -1.0f64..1.0), c in (-1.0f64..1.0, -1.0f64..1.0),
    ) {
        let s = |p: (f64, f64)| segment_signature(Complex64::new(p.0, p.1), 3);
        let left = chen_concat(&chen_concat(&s(a), &s(b)).unwrap(), &s(c)).unwrap();
        let right = chen_concat(&s(a), &chen_concat(&s(b), &s(c)).unwrap()).unwrap();
        for ((w, x), (_, y)) in left.iter().zip(right.iter()) {
            prop_assert!((x - y).abs() < 1e-13, "{w}");
        }
    }

    #[test]
    fn reparametrization_invariance(pts in points(), split in 0.05f64..0.95) {
        let path = poly(&pts);
        let sig = signature_of_polyline(&path, 3).unwrap();
        // new time scale
        let retimed = path.retimed(|t| t * t * t + 2.0 * t).unwrap();
        let s2 = signature_of_polyline(&retimed, 3).unwrap();
        // extra collinear vertex inside the first segment
        let z = path.points();
        let mut refined: Vec<Complex64> = vec![z[0], z[0] + (z[1] - z[0]) * split];
        refined.extend_from_slice(&z[1..]);
        let s3 = signature_of_polyline(&PlanarPath::from_points(refined, Domain::Plane).unwrap(), 3).unwrap();
        for (w, x) in sig.iter() {
            prop_assert_eq!(x, s2.get(&w));
            prop_assert!((x - s3.get(&w)).abs() < 1e-12, "{}", w);
        }
    }

    #[test]
    fn p_variation_is_monotone(pts in points()) {
        let path = poly(&pts);
        let chord = (path.end() - path.start()).norm();
        let ps = [1.0, 1.2, 1.5, 2.0, 3.0, 6.0];
        let v: Vec<f64> = ps.iter().map(|&p| p_variation(&path, p).unwrap()).collect();
        prop_assert!((v[0] - path.length()).abs() < 1e-12);
        for w in v.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-12);
        }
        prop_assert!(v[5] >= chord - 1e-12);
    }

    #[test]
    fn young_integral_is_exact_on_polylines(pts in points()) {
        let path = poly(&pts);
        let t = path.times().to_vec();
        let x = SampledFunction::new(t.clone(), path.points().iter().map(|z| z.re - path.start().re).collect()).unwrap();
        let y = SampledFunction::new(t, path.points().iter().map(|z| z.im).collect()).unwrap();
        let sig = signature_of_polyline(&path, 2).unwrap();
        let r = young_integral_sampled(&x, &y, 2).unwrap();
        for s in &r.sums {
            prop_assert!((s - sig.coeff("12")).abs() < 1e-12);
        }
        // ∫ X dX = ½ (ΔX)²
        let rx = young_integral_sampled(&x, &x, 0).unwrap();
        let dx = path.end().re - path.start().re;
        prop_assert!((rx.value - 0.5 * dx * dx).abs() < 1e-12);
    }
}

#[test]
fn green_identity_on_simple_polylines() {
    let mut rng = XorShift(12345);
    for _ in 0..50 {
        let path = rng.monotone_disk_polyline();
        let lhs = signature_of_polyline(&path, 3).unwrap().coeff("221");
        // region between the curve and the upper arc: half-disk moment 1/12
        // plus the signed polygon moment of the curve closed along [0, 1]
        let region_moment = 1.0 / 12.0 + polygon_y_moment(path.points());
        assert!((lhs - (1.0 / 12.0 - region_moment)).abs() < 1e-8, "{lhs}");
    }
}

#[test]
fn tensor_series_json_shape() {
    let s = segment_signature(Complex64::new(1.0, 0.0), 2);
    let v: serde_json::Value = serde_json::to_value(&s).unwrap();
    assert_eq!(v["level"], 2);
    assert_eq!(v["coeffs"][""], 1.0);
    assert_eq!(v["coeffs"]["11"], 0.5);
    let back: TensorSeries = serde_json::from_value(v).unwrap();
    assert_eq!(back, s);
}
