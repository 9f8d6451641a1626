use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use sle_core::driving::sample_driving_on;
use sle_core::formulas::{a_kappa_quadrature, QuadratureSpec};
use sle_core::geometry::{box_count, tortuosity_segments};
use sle_core::roughpath::signature_of_polyline;
use sle_core::{compute_trace, left_passage_side, sample_driving, CapacityGrid, KappaParams};
use std::hint::black_box;

fn trace(c: &mut Criterion) {
    let p = KappaParams::new(2.0).unwrap();
    let mut g = c.benchmark_group("compute_trace");
    for n in [500, 1000, 2000] {
        let d = sample_driving(n, 1.0 / n as f64, 1).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| b.iter(|| compute_trace(black_box(d), &p).unwrap()));
    }
    g.finish();
}

fn side(c: &mut Criterion) {
    let p = KappaParams::new(8.0 / 3.0).unwrap();
    let grid = CapacityGrid::exponential(100_000, 1e-4, 1e8).unwrap();
    let d = sample_driving_on(&grid, 3, 0);
    let z = Complex64::from_polar(1.0, 1.0);
    c.bench_function("left_passage_side", |b| b.iter(|| left_passage_side(black_box(&d), &p, z, 100.0).unwrap()));
}

fn geometry(c: &mut Criterion) {
    let p = KappaParams::new(8.0 / 3.0).unwrap();
    let path = compute_trace(&sample_driving(4000, 2.5e-4, 5).unwrap(), &p).unwrap();
    c.bench_function("signature_level3_4000", |b| b.iter(|| signature_of_polyline(black_box(&path), 3).unwrap()));
    c.bench_function("box_count_4000", |b| b.iter(|| box_count(black_box(&path), 0.02)));
    c.bench_function("tortuosity_4000", |b| b.iter(|| tortuosity_segments(black_box(&path), 0.02)));
}

fn quadrature(c: &mut Criterion) {
    let q = QuadratureSpec::default();
    let p = KappaParams::new(3.0).unwrap();
    c.bench_function("a_kappa_quadrature", |b| b.iter(|| a_kappa_quadrature(black_box(&p), &q).unwrap()));
}

criterion_group!(benches, trace, side, geometry, quadrature);
criterion_main!(benches);
