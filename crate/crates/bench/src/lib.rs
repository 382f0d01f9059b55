//! Criterion benchmarks for `finspinor`; see `benches/`.
