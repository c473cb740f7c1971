//! Baseline comparison on a labeled dataset: mean and standard deviation of
//! the clustering error over repeated runs.

use discern_core::baselines::{alt_opt, kmeans_lloyd};
use discern_core::data::{Dataset, Labeling};
use discern_core::metrics::clustering_error;
use discern_core::rng::mix64;
use discern_core::rounding::round_rank2_project;
use discern_core::solver::{
    build_problem, fista_solve, reconstruct_y, RegularizerWeights, SolveOptions,
};
use discern_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineMethod {
    /// Alternating direction/label optimization from random balanced starts.
    AltOpt,
    /// Lloyd K-means (k = 2) on whitened variables.
    Kmeans,
    /// The smoothed-dual solver with projection rounding (deterministic, so
    /// restarts collapse to a single run).
    Solver,
}

impl BaselineMethod {
    pub fn name(self) -> &'static str {
        match self {
            BaselineMethod::AltOpt => "altopt",
            BaselineMethod::Kmeans => "kmeans",
            BaselineMethod::Solver => "solver",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CompareConfig {
    pub restarts: usize,
    pub seed: u64,
    pub lambda: Option<f64>,
    pub nu: f64,
    pub a_scale: f64,
    pub epsilon_scale: f64,
    pub max_iter: usize,
}

impl CompareConfig {
    pub fn new(restarts: usize, seed: u64) -> Self {
        CompareConfig {
            restarts,
            seed,
            lambda: None,
            nu: 1.0,
            a_scale: 1e-3,
            epsilon_scale: 1e-2,
            max_iter: 100_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MethodReport {
    pub method: BaselineMethod,
    pub errors: Vec<f64>,
    pub mean: f64,
    pub std: f64,
}

/// Requires ground truth on the dataset (generated data or a labeled file).
pub fn baseline_errors(
    ds: &Dataset,
    method: BaselineMethod,
    cfg: &CompareConfig,
) -> Result<MethodReport> {
    let truth = ds
        .single_truth()
        .ok_or(Error::InvalidArgument("baseline comparison needs ground-truth labels"))?;
    if cfg.restarts < 1 {
        return Err(Error::InvalidArgument("need at least one restart"));
    }
    let centered = ds.centered();
    let mut errors = Vec::with_capacity(cfg.restarts);
    match method {
        BaselineMethod::AltOpt => {
            for r in 0..cfg.restarts {
                let state = alt_opt(&centered.x, mix64(cfg.seed ^ r as u64), 200)?;
                errors.push(clustering_error(&state.labels, truth)?);
            }
        }
        BaselineMethod::Kmeans => {
            for r in 0..cfg.restarts {
                let fit = kmeans_lloyd(&centered.x, 2, mix64(cfg.seed ^ r as u64), 1, true)?;
                let y: Vec<f64> =
                    fit.labels.iter().map(|&c| if c == 0 { 1.0 } else { -1.0 }).collect();
                errors.push(clustering_error(&Labeling::from_signs(y)?, truth)?);
            }
        }
        BaselineMethod::Solver => {
            let d = centered.d();
            let n = centered.n();
            let lambda = cfg.lambda.unwrap_or(1.0 / (n as f64).sqrt());
            let eps = cfg.epsilon_scale / (d.max(2) as f64).ln();
            let w = RegularizerWeights::from_scalars(d, cfg.a_scale, lambda, cfg.nu, eps)?;
            let p = build_problem(&centered, &w)?;
            let opts = SolveOptions { max_iter: cfg.max_iter, ..Default::default() };
            let (_, sol) = fista_solve(&p, &opts)?;
            let rec = reconstruct_y(p.design(), &sol.v)?;
            let rounded = round_rank2_project(&rec.y)?;
            errors.push(clustering_error(&rounded.labels, truth)?);
        }
    }
    let mean = errors.iter().sum::<f64>() / errors.len() as f64;
    let var = errors.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / errors.len() as f64;
    Ok(MethodReport { method, errors, mean, std: var.sqrt() })
}
