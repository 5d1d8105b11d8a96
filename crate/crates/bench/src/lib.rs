//! Criterion benchmarks for terna-core; see `benches/`.
