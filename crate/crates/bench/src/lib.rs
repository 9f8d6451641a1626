//! Criterion benchmarks for `sle-core` live in `benches/`.
