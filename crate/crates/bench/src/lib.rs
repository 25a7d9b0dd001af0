//! Benchmarks for the tw2cat core crate; see `benches/`.
