//! Criterion benchmarks for `chebosc`; see `benches/`.

pub use chebosc;
