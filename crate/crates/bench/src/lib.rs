//! Criterion benchmarks for slinv-core live in `benches/`.
