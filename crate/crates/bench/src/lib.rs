//! Criterion benchmarks of the `bracketdiag` crate; see `benches/complexes.rs`.
