//! Benchmarks for `splice-core`; see `benches/`.
