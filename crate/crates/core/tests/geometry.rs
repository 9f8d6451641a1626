use num_complex::Complex64;
use proptest::prelude::*;
use sle_core::geometry::{
    box_count, catalan_number, crossing_times, is_dyck_path, tortuosity_segments, Annulus, Label,
};
use sle_core::{Domain, PlanarPath};

fn polyline(pts: &[(f64, f64)]) -> PlanarPath {
    PlanarPath::from_points(pts.iter().map(|&(x, y)| Complex64::new(x, y)).collect(), Domain::Plane).unwrap()
}

fn label_of(z: Complex64, a: &Annulus) -> Option<Label> {
    let d = (z - a.center).norm();
    if d <= a.r {
        Some(Label::I)
    } else if d >= a.big_r {
        Some(Label::O)
    } else {
        None
    }
}

fn midpoint_refined(p: &PlanarPath) -> PlanarPath {
    let (t, z) = (p.times(), p.points());
    let mut times = Vec::new();
    let mut points = Vec::new();
    for i in 0..z.len() - 1 {
        times.push(t[i]);
        points.push(z[i]);
        times.push(0.5 * (t[i] + t[i + 1]));
        points.push(0.5 * (z[i] + z[i + 1]));
    }
    times.push(*t.last().unwrap());
    points.push(p.end());
    PlanarPath::new(times, points, Domain::Plane).unwrap()
}

fn point_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 2..30)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn crossings_alternate_and_hit_the_circles(pts in point_strategy(), r in 0.1..0.8f64, gap in 0.05..1.0f64) {
        let path = polyline(&pts);
        let a = Annulus::new(Complex64::new(0.0, 0.0), r, r + gap).unwrap();
        let rec = crossing_times(&path, &a).unwrap();
        prop_assert_eq!(rec.tau.len(), rec.labels.len());
        let Some(tau0) = rec.tau0 else {
            // never leaves the open annulus
            for &z in path.points() {
                prop_assert!(label_of(z, &a).is_none());
            }
            return Ok(());
        };
        let mut prev_label = rec.label0.unwrap();
        let mut prev_tau = tau0;
        for (&t, &l) in rec.tau.iter().zip(&rec.labels) {
            prop_assert!(l != prev_label);
            prop_assert!(t >= prev_tau);
            let radius = if l == Label::I { a.r } else { a.big_r };
            let d = (path.point_at(t) - a.center).norm();
            prop_assert!((d - radius).abs() < 1e-9, "distance {} radius {}", d, radius);
            prev_label = l;
            prev_tau = t;
        }
        // after the last crossing the opposite set is never reached at any vertex
        let last = *rec.tau.last().unwrap_or(&tau0);
        let target = if prev_label == Label::I { Label::O } else { Label::I };
        for (&t, &z) in path.times().iter().zip(path.points()) {
            if t > last + 1e-12 {
                prop_assert!(label_of(z, &a) != Some(target));
            }
        }
    }

    #[test]
    fn crossings_survive_refinement(pts in point_strategy(), r in 0.1..0.8f64, gap in 0.05..1.0f64) {
        let path = polyline(&pts);
        let a = Annulus::new(Complex64::new(0.3, -0.2), r, r + gap).unwrap();
        let coarse = crossing_times(&path, &a).unwrap();
        let fine = crossing_times(&midpoint_refined(&path), &a).unwrap();
        prop_assert_eq!(coarse.count(), fine.count());
        prop_assert_eq!(&coarse.labels, &fine.labels);
        for (x, y) in coarse.tau.iter().zip(&fine.tau) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn box_count_is_scale_invariant(pts in point_strategy(), ell in 0.05..1.0f64) {
        let path = polyline(&pts);
        let scaled = polyline(&pts.iter().map(|&(x, y)| (4.0 * x, 4.0 * y)).collect::<Vec<_>>());
        prop_assert_eq!(box_count(&path, ell), box_count(&scaled, 4.0 * ell));
        prop_assert_eq!(tortuosity_segments(&path, ell), tortuosity_segments(&scaled, 4.0 * ell));
    }
}

fn count_dyck(n: u32) -> u64 {
    let len = 2 * n as usize;
    (0u32..1 << len)
        .filter(|bits| {
            let steps: Vec<i8> = (0..len).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect();
            is_dyck_path(&steps)
        })
        .count() as u64
}

#[test]
fn catalan_numbers_count_dyck_paths() {
    for n in 0..=10 {
        assert_eq!(catalan_number(n).unwrap(), count_dyck(n), "n = {n}");
    }
    // C_n = binom(2n, n)/(n+1)
    for n in 0..=30u32 {
        let mut b: u128 = 1;
        for i in 0..n as u128 {
            b = b * (2 * n as u128 - i) / (i + 1);
        }
        assert_eq!(catalan_number(n).unwrap() as u128, b / (n as u128 + 1));
    }
    assert!(catalan_number(31).is_err());
}
