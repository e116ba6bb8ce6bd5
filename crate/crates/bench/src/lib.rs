//! Criterion benchmarks for `qarith-core`; see `benches/`.
