//! Benchmarks for qlab-core live under `benches/`.
