//! Criterion benchmarks for tapkit; see `benches/`.
