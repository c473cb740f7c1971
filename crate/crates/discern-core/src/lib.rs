//! Discriminative clustering with sparse regularizers.
//!
//! The crate finds a one-dimensional (or, in the multi-label case,
//! `k`-dimensional) projection of a centered data matrix that is well
//! clustered, by solving a trace-normalized semidefinite relaxation in the
//! `d x d` projection-space variable `V`. The relaxation is smoothed with a
//! von Neumann entropy term and solved through its dual with an accelerated
//! proximal gradient method, so the per-iteration cost is linear in the
//! number of observations.
//!
//! Modules:
//! - [`mat`], [`linalg`]: dense matrices, symmetric eigendecomposition,
//!   inverse square roots and the smoothed spectral max.
//! - [`data`]: datasets, labelings, noise laws and synthetic generators.
//! - [`solver`]: the smoothed dual solver (FISTA with a Newton prox) and
//!   KKT certificates.
//! - [`rounding`]: exact 1-D K-means, eigenvector/sign rounding, centered
//!   rank-2 projection rounding and multi-label Procrustes recovery.
//! - [`baselines`]: Lloyd K-means, alternating optimization and the
//!   exhaustive discrete oracle.
//! - [`metrics`]: clustering error, rank diagnostics and label-subspace
//!   overlap scores.
//!
//! The crate is `no_std` (with `alloc`); anything touching files, clocks or
//! threads lives in the companion `discern` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod baselines;
pub mod data;
mod error;
mod fmath;
pub mod linalg;
pub mod mat;
pub mod metrics;
pub mod rng;
pub mod rounding;
pub mod solver;

pub use error::{Error, Result};
