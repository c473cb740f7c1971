//! Phase-transition grid: planted sparse problems solved over a range of
//! `(d, n)` cells, with and without the l1 weights, scoring projection-
//! rounding error and how often the solution is rank one.

use discern_core::data::NoiseSpec;
use discern_core::metrics::{clustering_error, rank_one_fraction};
use discern_core::rng::cell_seed;
use discern_core::rounding::round_rank2_project;
use discern_core::solver::{
    build_problem, fista_solve, reconstruct_y, RegularizerWeights, SolveOptions,
};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseMode {
    /// No l1 weights: the affine-invariant problem.
    Affine,
    /// Uniform l1 weights with `lambda = 1/sqrt(n)`.
    Sparse,
}

impl PhaseMode {
    pub fn name(self) -> &'static str {
        match self {
            PhaseMode::Affine => "affine",
            PhaseMode::Sparse => "sparse",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PhaseConfig {
    /// `(d, n)` cells to evaluate.
    pub cells: Vec<(usize, usize)>,
    pub replications: usize,
    pub seed: u64,
    pub mode: PhaseMode,
    /// Sparsity of the planted direction.
    pub sparsity: usize,
    /// Smoothing level `epsilon_scale / log d`.
    pub epsilon_scale: f64,
    pub a_scale: f64,
    pub max_iter: usize,
}

impl PhaseConfig {
    pub fn new(cells: Vec<(usize, usize)>, mode: PhaseMode, replications: usize, seed: u64) -> Self {
        PhaseConfig {
            cells,
            replications,
            seed,
            mode,
            sparsity: 1,
            epsilon_scale: 1e-3,
            a_scale: 1e-3,
            max_iter: 100_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PhaseCell {
    pub d: usize,
    pub n: usize,
    pub replications: usize,
    pub mean_error: f64,
    pub rank_one_fraction: f64,
    pub failures: usize,
    pub cell_seed: u64,
}

/// Runs every cell (in parallel over cells and replications); failed solves
/// are counted, not fatal. Identical `(cells, seed)` give identical output,
/// independent of the worker count.
pub fn phase_grid(cfg: &PhaseConfig) -> Vec<PhaseCell> {
    let jobs: Vec<(usize, usize, usize)> = cfg
        .cells
        .iter()
        .flat_map(|&(d, n)| (0..cfg.replications).map(move |rep| (d, n, rep)))
        .collect();
    let outcomes: Vec<Option<(f64, bool)>> =
        jobs.par_iter().map(|&(d, n, rep)| run_cell(cfg, d, n, rep)).collect();

    let mut out = Vec::with_capacity(cfg.cells.len());
    for (ci, &(d, n)) in cfg.cells.iter().enumerate() {
        let cell = &outcomes[ci * cfg.replications..(ci + 1) * cfg.replications];
        let mut errs = Vec::new();
        let mut rank_one = 0usize;
        let mut failures = 0usize;
        for o in cell {
            match o {
                Some((e, r1)) => {
                    errs.push(*e);
                    rank_one += usize::from(*r1);
                }
                None => failures += 1,
            }
        }
        let mean_error = if errs.is_empty() {
            f64::NAN
        } else {
            errs.iter().sum::<f64>() / errs.len() as f64
        };
        out.push(PhaseCell {
            d,
            n,
            replications: cfg.replications,
            mean_error,
            rank_one_fraction: rank_one as f64 / cfg.replications as f64,
            failures,
            cell_seed: cell_seed(cfg.seed, n, d, 0),
        });
    }
    out
}

fn run_cell(cfg: &PhaseConfig, d: usize, n: usize, rep: usize) -> Option<(f64, bool)> {
    let seed = cell_seed(cfg.seed, n, d, rep);
    let noise = NoiseSpec::uniform(3f64.sqrt()).ok()?;
    let l = cfg.sparsity.min(d);
    let n_even = n + n % 2;
    let (ds, _) = discern_core::data::gen_sparse(n_even, d, l, &noise, seed).ok()?;
    let ds = ds.centered();
    let lambda = match cfg.mode {
        PhaseMode::Affine => 0.0,
        PhaseMode::Sparse => 1.0 / (n_even as f64).sqrt(),
    };
    let eps = cfg.epsilon_scale / (d.max(2) as f64).ln();
    let w = RegularizerWeights::from_scalars(d, cfg.a_scale, lambda, 1.0, eps).ok()?;
    let p = build_problem(&ds, &w).ok()?;
    let opts = SolveOptions { max_iter: cfg.max_iter, ..Default::default() };
    let (_, sol) = fista_solve(&p, &opts).ok()?;
    let rank = rank_one_fraction(&sol.v, 1e-3).ok()?;
    let rec = reconstruct_y(p.design(), &sol.v).ok()?;
    let rounded = round_rank2_project(&rec.y).ok()?;
    let err = clustering_error(&rounded.labels, ds.single_truth()?).ok()?;
    Some((err, rank.is_rank_one))
}
