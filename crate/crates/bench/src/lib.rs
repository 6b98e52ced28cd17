//! Criterion benchmarks for `cmc-core`; see `benches/`.
