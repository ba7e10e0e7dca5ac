//! Criterion benchmarks for `expderiv-core`; see `benches/`.
