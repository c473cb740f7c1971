//! Per-iteration runtime scaling of the solver over `(n, d)`.

use discern_core::data::{gen_balanced, NoiseSpec};
use discern_core::rng::cell_seed;
use discern_core::solver::{build_problem, fista_solve_observed, RegularizerWeights, SolveOptions};

use crate::io::IterTimer;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub d_values: Vec<usize>,
    pub n_values: Vec<usize>,
    pub reps: usize,
    /// Iterations per timed run (gap checks disabled; the loop runs to the
    /// cap).
    pub iters: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub fn new(d_values: Vec<usize>, n_values: Vec<usize>, seed: u64) -> Self {
        BenchConfig { d_values, n_values, reps: 3, iters: 30, seed }
    }
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub d: usize,
    pub n: usize,
    pub iterations: usize,
    pub median_iter_ms: f64,
}

/// One warm-up run per size is excluded from the timings; the timed
/// repetitions are interleaved across sizes so clock-frequency drift and
/// background load hit every size equally. Medians are taken over all
/// per-iteration samples of a size.
pub fn bench_scaling(cfg: &BenchConfig) -> Vec<BenchRow> {
    let opts = SolveOptions {
        max_iter: cfg.iters,
        gap_check_every: usize::MAX,
        ..Default::default()
    };
    let mut sized: Vec<(usize, usize, _)> = Vec::new();
    for &d in &cfg.d_values {
        for &n in &cfg.n_values {
            let seed = cell_seed(cfg.seed, n, d, 0);
            let n_even = n + n % 2;
            let noise = NoiseSpec::uniform(3f64.sqrt()).expect("positive bound");
            let ds = gen_balanced(n_even, d, &noise, seed).expect("generator").centered();
            let eps = 1e-2 / (d.max(2) as f64).ln();
            let w = RegularizerWeights::from_scalars(d, 1e-3, 0.0, 1.0, eps).expect("weights");
            let p = build_problem(&ds, &w).expect("problem");
            // warm-up
            let mut sink = IterTimer::new();
            let _ = fista_solve_observed(&p, &opts, &mut sink);
            sized.push((d, n, p));
        }
    }
    let mut timers: Vec<IterTimer> = sized.iter().map(|_| IterTimer::new()).collect();
    for _ in 0..cfg.reps {
        for ((_, _, p), timer) in sized.iter().zip(timers.iter_mut()) {
            timer.reset_clock();
            let _ = fista_solve_observed(p, &opts, timer);
        }
    }
    sized
        .iter()
        .zip(&timers)
        .map(|(&(d, n, _), timer)| BenchRow {
            d,
            n,
            iterations: cfg.iters * cfg.reps,
            median_iter_ms: timer.median_ms(),
        })
        .collect()
}
