//! Solver-level properties: weak duality along the iterate path, the
//! Lipschitz constant as a secant bound, iteration scaling in the smoothing
//! level, and the imbalance-penalty paths.

use discern_core::data::{gen_balanced, gen_sparse, gen_unbalanced, NoiseSpec};
use discern_core::mat::Mat;
use discern_core::rng::SeedStream;
use discern_core::solver::{
    build_problem, fista_solve, fista_solve_observed, gradients, lipschitz, RegularizerWeights,
    SolveObserver, SolveOptions, TraceRow,
};

struct GapRecorder {
    rows: Vec<TraceRow>,
}

impl SolveObserver for GapRecorder {
    fn on_gap_eval(&mut self, row: &TraceRow) {
        self.rows.push(row.clone());
    }
}

#[test]
fn weak_duality_holds_at_every_gap_eval() {
    let noise = NoiseSpec::uniform(3f64.sqrt()).unwrap();
    let ds = gen_balanced(80, 6, &noise, 3).unwrap().centered();
    let w = RegularizerWeights::from_scalars(6, 1e-3, 0.05, 1.0, 5e-3).unwrap();
    let p = build_problem(&ds, &w).unwrap();
    let mut rec = GapRecorder { rows: Vec::new() };
    let (_, sol) =
        fista_solve_observed(&p, &SolveOptions { gap_check_every: 5, ..Default::default() }, &mut rec)
            .unwrap();
    assert!(sol.converged);
    assert!(!rec.rows.is_empty());
    for row in &rec.rows {
        assert!(row.gap >= -1e-8, "weak duality violated at iter {}: {}", row.iteration, row.gap);
        assert!(row.dual >= row.primal_smoothed - 1e-8);
    }
    assert_eq!(sol.monotone_violations, 0, "dual sequence should settle monotone");
}

#[test]
fn solve_is_deterministic_and_feasible() {
    let noise = NoiseSpec::uniform(1.0).unwrap();
    let ds = gen_balanced(40, 4, &noise, 8).unwrap().centered();
    let w = RegularizerWeights::from_scalars(4, 1e-2, 0.08, 1.0, 5e-3).unwrap();
    let p = build_problem(&ds, &w).unwrap();
    let (s1, sol1) = fista_solve(&p, &SolveOptions::default()).unwrap();
    let (s2, sol2) = fista_solve(&p, &SolveOptions::default()).unwrap();
    assert_eq!(s1.u, s2.u);
    assert_eq!(s1.c, s2.c);
    assert_eq!(sol1.dual_value, sol2.dual_value);
    // box constraint holds exactly after the prox, u strictly positive
    let cw = p.c_weights();
    for i in 0..4 {
        for j in 0..4 {
            assert!(s1.c[(i, j)].abs() <= cw[i] * cw[j]);
        }
    }
    assert!(s1.u.iter().all(|&v| v > 0.0));
    // recovered V is PSD down to the stated floor
    let dec = discern_core::linalg::sym_eig(&sol1.v).unwrap();
    assert!(*dec.eigenvalues.last().unwrap() >= -1e-10);
}

#[test]
fn lipschitz_bounds_gradient_secants() {
    let noise = NoiseSpec::uniform(1.0).unwrap();
    let ds = gen_balanced(20, 5, &noise, 7).unwrap().centered();
    let w = RegularizerWeights::from_scalars(5, 0.3, 0.1, 1.0, 0.08).unwrap();
    let p = build_problem(&ds, &w).unwrap();
    let l = lipschitz(&p);
    let mut rng = SeedStream::new(41);
    let d = p.dim();
    let sample = |rng: &mut SeedStream| {
        let u: Vec<f64> = (0..20).map(|_| rng.uniform(0.2, 3.0)).collect();
        let mut c = Mat::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = rng.uniform(-0.1, 0.1);
                c[(i, j)] = v;
                c[(j, i)] = v;
            }
        }
        (u, c)
    };
    for _ in 0..30 {
        let (u1, c1) = sample(&mut rng);
        let (u2, c2) = sample(&mut rng);
        let (gu1, gc1) = gradients(&p, &u1, &c1).unwrap();
        let (gu2, gc2) = gradients(&p, &u2, &c2).unwrap();
        let mut dg = 0.0;
        let mut dx = 0.0;
        for i in 0..20 {
            dg += (gu1[i] - gu2[i]) * (gu1[i] - gu2[i]);
            dx += (u1[i] - u2[i]) * (u1[i] - u2[i]);
        }
        let gdiff = gc1.sub(&gc2);
        let cdiff = c1.sub(&c2);
        dg += gdiff.frobenius_norm() * gdiff.frobenius_norm();
        dx += cdiff.frobenius_norm() * cdiff.frobenius_norm();
        assert!(
            dg.sqrt() <= l * dx.sqrt() * (1.0 + 1e-9),
            "secant {} exceeds L = {}",
            dg.sqrt() / dx.sqrt(),
            l
        );
    }
}

#[test]
fn halving_epsilon_at_most_two_and_half_times_iterations() {
    let noise = NoiseSpec::uniform(3f64.sqrt()).unwrap();
    let ds = gen_balanced(100, 8, &noise, 11).unwrap().centered();
    // baseline already past the near-feasible transient, where the
    // 1/(eps sqrt(log d)) scaling is visible
    let mut iters = Vec::new();
    for eps in [2e-3, 1e-3] {
        let w = RegularizerWeights::from_scalars(8, 1e-3, 0.0, 1.0, eps).unwrap();
        let p = build_problem(&ds, &w).unwrap();
        let (_, sol) = fista_solve(&p, &SolveOptions { gap_check_every: 1, ..Default::default() })
            .unwrap();
        assert!(sol.converged);
        iters.push(sol.iterations as f64);
    }
    assert!(
        iters[1] <= 2.5 * iters[0],
        "iterations grew too fast when halving eps: {iters:?}"
    );
}

#[test]
fn nu_paths_differ_and_near_one_rejected() {
    let noise = NoiseSpec::uniform(1.0).unwrap();
    let ds = gen_unbalanced(40, 4, 0.25, &noise, 2).unwrap();
    let eps = 5e-3;
    let w1 = RegularizerWeights::from_scalars(4, 1e-2, 0.0, 1.0, eps).unwrap();
    let w5 = RegularizerWeights::from_scalars(4, 1e-2, 0.0, 0.5, eps).unwrap();
    let p1 = build_problem(&ds, &w1).unwrap();
    let p5 = build_problem(&ds, &w5).unwrap();
    assert_eq!(p1.dim() + 1, p5.dim());
    let (_, s1) = fista_solve(&p1, &SolveOptions::default()).unwrap();
    let (_, s5) = fista_solve(&p5, &SolveOptions::default()).unwrap();
    // augmented problem sees a genuinely different objective
    assert!((s1.primal_value - s5.primal_value).abs() > 1e-6);

    let bad = RegularizerWeights::from_scalars(4, 1e-2, 0.0, 1.0 - 1e-7, eps).unwrap();
    assert!(build_problem(&ds, &bad).is_err());
}

#[test]
fn sparse_planted_solve_recovers_with_l1() {
    // one perfectly clustered column among noise; l1 weights on, imbalance
    // penalty at nu = 1
    let noise = NoiseSpec::uniform(3f64.sqrt()).unwrap();
    let (ds, _v) = gen_sparse(120, 12, 1, &noise, 21).unwrap();
    let ds = ds.centered();
    let lambda = 1.0 / (120f64).sqrt();
    let eps = 1e-2 / (12f64).ln();
    let w = RegularizerWeights::from_scalars(12, 1e-3, lambda, 1.0, eps).unwrap();
    let p = build_problem(&ds, &w).unwrap();
    let (_, sol) = fista_solve(&p, &SolveOptions::default()).unwrap();
    assert!(sol.converged);
    let rep = discern_core::rounding::round_from_v(
        &ds.x,
        &sol.v,
        discern_core::rounding::RoundingMethod::Sign,
    )
    .unwrap();
    let err =
        discern_core::metrics::clustering_error(&rep.labels, ds.single_truth().unwrap()).unwrap();
    assert_eq!(err, 0.0, "sparse planted problem should be exactly recovered");
}
