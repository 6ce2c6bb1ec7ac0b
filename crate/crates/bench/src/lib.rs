//! Criterion benchmarks for the `cograph` kernels live in `benches/kernels.rs`.
