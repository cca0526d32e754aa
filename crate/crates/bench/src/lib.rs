//! Criterion benchmarks for the `cubesum` crate; see `benches/`.
