//! Reproducible experiment harnesses. Each cell of a grid derives its own
//! seed from the base seed and its coordinates, so parallel and serial runs
//! produce identical tables.

mod bench;
mod compare;
mod phase;
mod unbalanced;

pub use bench::{bench_scaling, BenchConfig, BenchRow};
pub use compare::{baseline_errors, BaselineMethod, CompareConfig, MethodReport};
pub use phase::{phase_grid, PhaseCell, PhaseConfig, PhaseMode};
pub use unbalanced::{unbalanced_sweep, SweepKind, SweepRow, UnbalancedConfig};
