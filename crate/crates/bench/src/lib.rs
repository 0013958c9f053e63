//! Criterion benchmarks for tailsmith; see `benches/`.
