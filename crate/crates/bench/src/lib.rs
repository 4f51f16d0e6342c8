//! Criterion benchmarks for `ks3-core`; see `benches/`.
