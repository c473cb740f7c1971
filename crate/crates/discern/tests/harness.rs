//! Experiment-harness behavior: determinism across worker counts, the
//! error trend in `n`, and the penalized imbalance sweep.

use discern::experiments::{
    bench_scaling, phase_grid, unbalanced_sweep, BenchConfig, PhaseConfig, PhaseMode, SweepKind,
    UnbalancedConfig,
};

fn cells_to_strings(cells: &[discern::experiments::PhaseCell]) -> Vec<String> {
    cells
        .iter()
        .map(|c| {
            format!(
                "{},{},{},{},{},{},{}",
                c.d, c.n, c.replications, c.mean_error, c.rank_one_fraction, c.failures, c.cell_seed
            )
        })
        .collect()
}

#[test]
fn phase_grid_identical_across_worker_counts() {
    let cfg = PhaseConfig::new(vec![(5, 20), (5, 40)], PhaseMode::Sparse, 2, 13);
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| phase_grid(&cfg));
    let parallel = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(|| phase_grid(&cfg));
    assert_eq!(cells_to_strings(&serial), cells_to_strings(&parallel));
}

#[test]
fn phase_error_non_increasing_in_n_within_spread() {
    let cfg = PhaseConfig::new(vec![(5, 10), (5, 20), (5, 40)], PhaseMode::Sparse, 4, 2);
    let cells = phase_grid(&cfg);
    // allow one replication's worth of slack (errors live in [0, 1])
    let slack = 1.0 / cfg.replications as f64;
    for w in cells.windows(2) {
        assert!(
            w[1].mean_error <= w[0].mean_error + slack,
            "error trend violated: {} then {}",
            w[0].mean_error,
            w[1].mean_error
        );
    }
    // the largest n recovers
    assert!(cells.last().unwrap().mean_error <= 0.05);
}

#[test]
fn affine_mode_fails_when_severely_undersampled() {
    // n = d leaves the affine-invariant problem hopeless
    let cfg = PhaseConfig::new(vec![(10, 10)], PhaseMode::Affine, 4, 4);
    let cells = phase_grid(&cfg);
    assert!(
        cells[0].mean_error >= 0.5,
        "undersampled affine cell should fail: {}",
        cells[0].mean_error
    );
}

#[test]
fn penalized_nu_sweep_recovers_near_zero() {
    // zero-noise imbalanced data: small nu keeps the principal eigenvector
    // and the projection rounding exact
    let mut cfg = UnbalancedConfig::new(80, 10, 0.25, 5);
    cfg.replications = 3;
    cfg.noise_sigma = 0.0;
    let rows =
        unbalanced_sweep(&cfg, &SweepKind::PenalizedNu { nu_values: vec![0.01, 0.5, 1.0] }).unwrap();
    assert_eq!(rows.len(), 3);
    let first = &rows[0];
    assert_eq!(first.err_eig1, 0.0, "eig1 at nu = 0.01: {first:?}");
    assert_eq!(first.err_proj, 0.0, "projection at nu = 0.01: {first:?}");
}

#[test]
fn constrained_sweep_requires_zero_noise() {
    let mut cfg = UnbalancedConfig::new(20, 2, 0.25, 1);
    cfg.noise_sigma = 0.5;
    assert!(unbalanced_sweep(&cfg, &SweepKind::ConstrainedAlpha { points: 3 }).is_err());
}

#[test]
fn bench_rows_have_positive_times() {
    let mut cfg = BenchConfig::new(vec![8], vec![40, 80], 3);
    cfg.reps = 1;
    cfg.iters = 5;
    let rows = bench_scaling(&cfg);
    assert_eq!(rows.len(), 2);
    for r in rows {
        assert!(r.median_iter_ms > 0.0, "timing must be nonzero");
    }
}
