//! Imbalanced-cluster sweeps, comparing first-eigenvector, second-
//! eigenvector and projection rounding together with the solution rank.
//!
//! Two sweeps are available:
//! - `ConstrainedAlpha` walks the imbalance constraint level. At zero noise
//!   the constrained solutions have the closed form
//!   `Y = b yy^T + (1-b) 11^T` with `b = (1-alpha)/(1-alpha*)` (rank one at
//!   the endpoints, rank two between), which is evaluated directly; no
//!   constrained SDP solver is involved.
//! - `PenalizedNu` solves the imbalance-penalized problem with the smoothed
//!   dual solver for each `nu` and reconstructs the label matrix from `V`.

use discern_core::data::{gen_unbalanced, Labeling, NoiseSpec};
use discern_core::linalg::{center_columns, sym_eig, SymMatrix};
use discern_core::mat::{outer, Mat};
use discern_core::metrics::{clustering_error, numerical_rank};
use discern_core::rng::{cell_seed, SeedStream};
use discern_core::rounding::{round_rank2_project, round_sign_eigvec, round_sign_eigvec_k};
use discern_core::solver::{
    build_problem, fista_solve, reconstruct_y, RegularizerWeights, SolveOptions,
};
use discern_core::{Error, Result};

#[derive(Debug, Clone)]
pub enum SweepKind {
    /// Imbalance-constraint levels from the realized `alpha*` to 1.
    ConstrainedAlpha { points: usize },
    /// Imbalance-penalty levels.
    PenalizedNu { nu_values: Vec<f64> },
}

impl SweepKind {
    pub fn default_nu_grid() -> Vec<f64> {
        vec![0.01, 0.25, 0.5, 0.75, 1.0]
    }
}

#[derive(Debug, Clone)]
pub struct UnbalancedConfig {
    pub n: usize,
    pub d: usize,
    pub alpha_star: f64,
    /// Noise column scale; the constrained sweep requires 0.
    pub noise_sigma: f64,
    pub replications: usize,
    pub seed: u64,
    pub epsilon_scale: f64,
    pub a_scale: f64,
    pub max_iter: usize,
}

impl UnbalancedConfig {
    pub fn new(n: usize, d: usize, alpha_star: f64, seed: u64) -> Self {
        UnbalancedConfig {
            n,
            d,
            alpha_star,
            noise_sigma: 0.0,
            replications: 1,
            seed,
            epsilon_scale: 1e-3,
            a_scale: 1e-2,
            max_iter: 100_000,
        }
    }
}

/// One sweep point, averaged over replications. Rounding errors are NaN
/// when the method is degenerate at that point (for example the second
/// eigenvector of a rank-one solution).
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub param: f64,
    pub err_eig1: f64,
    pub err_eig2: f64,
    pub err_proj: f64,
    pub mean_rank: f64,
}

pub fn unbalanced_sweep(cfg: &UnbalancedConfig, sweep: &SweepKind) -> Result<Vec<SweepRow>> {
    match sweep {
        SweepKind::ConstrainedAlpha { points } => constrained_sweep(cfg, *points),
        SweepKind::PenalizedNu { nu_values } => penalized_sweep(cfg, nu_values),
    }
}

fn mean_or_nan(values: &[f64]) -> f64 {
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.is_empty() {
        f64::NAN
    } else {
        finite.iter().sum::<f64>() / finite.len() as f64
    }
}

fn constrained_sweep(cfg: &UnbalancedConfig, points: usize) -> Result<Vec<SweepRow>> {
    if cfg.noise_sigma != 0.0 {
        return Err(Error::InvalidArgument(
            "the constrained sweep evaluates the zero-noise solution path; set noise_sigma = 0",
        ));
    }
    if points < 2 {
        return Err(Error::InvalidArgument("need at least 2 sweep points"));
    }
    let noise = NoiseSpec::uniform(1.0)?;
    // realized alpha* is the same for every replication (rounding of the
    // positive count depends only on n and alpha_star)
    let probe = gen_unbalanced(cfg.n, 1, cfg.alpha_star, &noise, cfg.seed)?;
    let alpha_star = probe.single_truth().expect("generator sets truth").alpha();

    let mut rows = Vec::with_capacity(points);
    for pi in 0..points {
        let alpha = alpha_star + (1.0 - alpha_star) * pi as f64 / (points - 1) as f64;
        let beta = (1.0 - alpha) / (1.0 - alpha_star);
        let (mut e1, mut e2, mut ep, mut rk) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for rep in 0..cfg.replications {
            let seed = cell_seed(cfg.seed, cfg.n, cfg.d, rep);
            let ds = gen_unbalanced(cfg.n, 1, cfg.alpha_star, &noise, seed)?;
            let truth = ds.single_truth().expect("generator sets truth").clone();
            let y = truth.as_slice();
            let ones = vec![1.0; cfg.n];
            let ym = SymMatrix::symmetrized(
                outer(y, y).scale(beta).add(&outer(&ones, &ones).scale(1.0 - beta)),
            );
            let (a, b, c, r) = evaluate_rounding(&ym, &truth, 1e-8)?;
            e1.push(a);
            e2.push(b);
            ep.push(c);
            rk.push(r as f64);
        }
        rows.push(SweepRow {
            param: alpha,
            err_eig1: mean_or_nan(&e1),
            err_eig2: mean_or_nan(&e2),
            err_proj: mean_or_nan(&ep),
            mean_rank: mean_or_nan(&rk),
        });
    }
    Ok(rows)
}

fn penalized_sweep(cfg: &UnbalancedConfig, nu_values: &[f64]) -> Result<Vec<SweepRow>> {
    if nu_values.is_empty() {
        return Err(Error::InvalidArgument("need at least one nu value"));
    }
    let noise = NoiseSpec::uniform(3f64.sqrt())?;
    let mut rows = Vec::with_capacity(nu_values.len());
    for &nu in nu_values {
        let (mut e1, mut e2, mut ep, mut rk) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for rep in 0..cfg.replications {
            let seed = cell_seed(cfg.seed, cfg.n, cfg.d, rep);
            let (ds, truth) = noisy_unbalanced(cfg, &noise, seed)?;
            let eps = cfg.epsilon_scale / (cfg.d.max(2) as f64).ln();
            let w = RegularizerWeights::from_scalars(cfg.d, cfg.a_scale, 0.0, nu, eps)?;
            let p = build_problem(&ds, &w)?;
            let opts = SolveOptions { max_iter: cfg.max_iter, ..Default::default() };
            let (_, sol) = fista_solve(&p, &opts)?;
            let rec = reconstruct_y(p.design(), &sol.v)?;
            let (a, b, c, r) = evaluate_rounding(&rec.y, &truth, 1e-3)?;
            e1.push(a);
            e2.push(b);
            ep.push(c);
            rk.push(r as f64);
        }
        rows.push(SweepRow {
            param: nu,
            err_eig1: mean_or_nan(&e1),
            err_eig2: mean_or_nan(&e2),
            err_proj: mean_or_nan(&ep),
            mean_rank: mean_or_nan(&rk),
        });
    }
    Ok(rows)
}

/// `X = [Pi_n y, sigma * Z]`, centered; `sigma = 0` keeps the pure signal
/// column (the quadratic weight keeps the Gram matrix invertible).
fn noisy_unbalanced(
    cfg: &UnbalancedConfig,
    noise: &NoiseSpec,
    seed: u64,
) -> Result<(discern_core::data::Dataset, Labeling)> {
    let base = gen_unbalanced(cfg.n, 1, cfg.alpha_star, noise, seed)?;
    let truth = base.single_truth().expect("generator sets truth").clone();
    let mut x = Mat::zeros(cfg.n, cfg.d);
    for i in 0..cfg.n {
        x[(i, 0)] = base.x[(i, 0)];
    }
    let mut rng = SeedStream::with_stream(seed, 0x5157);
    for j in 1..cfg.d {
        for i in 0..cfg.n {
            x[(i, j)] = cfg.noise_sigma * noise.sample(&mut rng);
        }
    }
    let ds = discern_core::data::Dataset::new(
        center_columns(&x),
        true,
        Some(discern_core::data::Truth::Single(truth.clone())),
        format!("unbalanced-sweep(n={},d={},seed={seed})", cfg.n, cfg.d),
    )?;
    Ok((ds, truth))
}

fn evaluate_rounding(
    ym: &SymMatrix,
    truth: &Labeling,
    rank_tol: f64,
) -> Result<(f64, f64, f64, usize)> {
    let spectrum = sym_eig(ym)?.eigenvalues;
    let rank = numerical_rank(&spectrum, rank_tol);
    let e1 = match round_sign_eigvec(ym, false) {
        Ok(r) => clustering_error(&r.labels, truth)?,
        Err(_) => f64::NAN,
    };
    let e2 = match round_sign_eigvec_k(ym, 1) {
        Ok(r) => clustering_error(&r.labels, truth)?,
        Err(_) => f64::NAN,
    };
    let ep = match round_rank2_project(ym) {
        Ok(r) => clustering_error(&r.labels, truth)?,
        Err(_) => f64::NAN,
    };
    Ok((e1, e2, ep, rank))
}
