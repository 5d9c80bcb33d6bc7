//! Criterion benchmarks for nlwit-core live under `benches/`.
