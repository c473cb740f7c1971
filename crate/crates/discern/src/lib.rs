//! File formats, experiment harnesses and the CLI around `discern-core`.
//!
//! Everything that needs the OS lives here: CSV/LIBSVM loaders, manifest and
//! SVG writers, solver traces with wall-clock stamps, and the reproducible
//! experiment grids (phase transition, unbalanced sweeps, runtime scaling,
//! baseline comparisons).

pub mod cli;
pub mod experiments;
pub mod io;

pub use io::IoError;
