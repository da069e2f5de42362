//! Benchmark-only crate; see `benches/operators.rs`. The library under
//! measurement is re-exported so the bench target and any profiling
//! harness share one dependency surface.

pub use boxkernel;
