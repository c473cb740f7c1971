//! Structural identities: the correlation/K-means distortion equivalence,
//! KKT certificates at the planted solutions, the discrete oracle
//! sandwiching the relaxation, and the rank-2 solution path.

use discern_core::baselines::{brute_force_discrete, DiscreteMode};
use discern_core::data::{gen_balanced, gen_sparse, gen_unbalanced, Labeling, NoiseSpec};
use discern_core::linalg::{center_columns, SymMatrix};
use discern_core::mat::{dot, outer, Mat};
use discern_core::metrics::{clustering_error, correlation_score};
use discern_core::rng::SeedStream;
use discern_core::rounding::{kmeans1d_exact, round_rank2_project};
use discern_core::solver::{build_problem, fista_solve, kkt_check, RegularizerWeights, SolveOptions};

/// Distortion of a labeling on 1-D data with per-cluster optimized means,
/// computed directly (the independent oracle).
fn optimized_means_distortion(p: &[f64], y: &[f64]) -> f64 {
    let mut sums = [0.0f64; 2];
    let mut counts = [0usize; 2];
    for (pi, yi) in p.iter().zip(y) {
        let c = if *yi > 0.0 { 0 } else { 1 };
        sums[c] += pi;
        counts[c] += 1;
    }
    let means = [sums[0] / counts[0].max(1) as f64, sums[1] / counts[1].max(1) as f64];
    p.iter()
        .zip(y)
        .map(|(pi, yi)| {
            let c = if *yi > 0.0 { 0 } else { 1 };
            (pi - means[c]) * (pi - means[c])
        })
        .sum()
}

/// For any labeling with two nonempty clusters, the normalized distortion
/// with optimized means equals one minus the correlation objective, to
/// 1e-10; and the exact two-means labels maximize the correlation.
#[test]
fn correlation_equals_one_minus_normalized_distortion() {
    let mut rng = SeedStream::new(0xA1);
    for _ in 0..20 {
        let n = 8 + rng.below(20);
        let d = 1 + rng.below(4);
        let x = center_columns(&Mat::from_fn(n, d, |_, _| rng.uniform(-1.0, 1.0)));
        let w: Vec<f64> = (0..d).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let p = x.matvec(&w);
        let pnorm2 = dot(&p, &p);

        let mut candidates: Vec<Vec<f64>> = Vec::new();
        for _ in 0..6 {
            let mut y: Vec<f64> = (0..n).map(|_| rng.sign()).collect();
            y[0] = 1.0;
            y[1] = -1.0; // both clusters nonempty
            candidates.push(y);
        }
        let km = kmeans1d_exact(&p, 2).unwrap();
        let y_star: Vec<f64> =
            km.assignment.iter().map(|&c| if c == 1 { 1.0 } else { -1.0 }).collect();
        candidates.push(y_star.clone());

        let corr_star = correlation_score(&y_star, &p);
        for y in &candidates {
            let lhs = optimized_means_distortion(&p, y) / pnorm2;
            let rhs = 1.0 - correlation_score(y, &p);
            assert!(
                (lhs - rhs).abs() <= 1e-10,
                "identity violated: {lhs} vs {rhs} (n={n}, d={d})"
            );
            assert!(correlation_score(y, &p) <= corr_star + 1e-12);
        }
        // the k-means distortion reported by the DP agrees with the direct
        // computation
        assert!((km.distortion - optimized_means_distortion(&p, &y_star)).abs() <= 1e-10);
    }
}

#[test]
fn kkt_passes_at_balanced_planted_solution() {
    let noise = NoiseSpec::uniform(1.0).unwrap();
    let ds = gen_balanced(60, 5, &noise, 3).unwrap(); // uncentered: column 0 is y
    let mut v = Mat::zeros(5, 5);
    v[(0, 0)] = 1.0;
    let report = kkt_check(&ds.x, &SymMatrix::symmetrized(v), 0.0).unwrap();
    assert!(report.pass, "balanced planted certificate should pass: {report:?}");
    assert!(report.max_eigenvalue.abs() <= 1e-9);
}

#[test]
fn kkt_passes_at_one_sparse_solution_with_l1() {
    // noise bounded by 1 keeps ||X^T X / n||_inf <= 1
    let noise = NoiseSpec::uniform(1.0).unwrap();
    let (ds, _) = gen_sparse(60, 5, 1, &noise, 9).unwrap();
    let lambda = 1.0 / (60f64).sqrt();
    let scale = 1.0 / (1.0 + lambda);
    let mut v = Mat::zeros(5, 5);
    v[(0, 0)] = scale * scale;
    let report = kkt_check(&ds.x, &SymMatrix::symmetrized(v), lambda).unwrap();
    assert!(report.pass, "1-sparse certificate should pass: {report:?}");
}

#[test]
fn kkt_fails_at_unbalanced_candidate() {
    let noise = NoiseSpec::uniform(1.0).unwrap();
    let ds = gen_unbalanced(80, 5, 0.25, &noise, 4).unwrap();
    let mut v = Mat::zeros(5, 5);
    v[(0, 0)] = 1.0;
    let report = kkt_check(&ds.x, &SymMatrix::symmetrized(v), 0.0).unwrap();
    assert!(!report.pass, "unbalanced rank-one candidate must fail: {report:?}");
    assert!(report.max_eigenvalue > 1e-3);
}

/// Dual value of the solver certifies a lower bound on the discrete
/// optimum: `1 - dual^2 <= discrete value` for the matching imbalance
/// penalty.
#[test]
fn relaxation_lower_bounds_discrete_optimum() {
    let mut rng = SeedStream::new(0xBB);
    for trial in 0..12 {
        let n = 8 + 2 * rng.below(4); // 8..14
        let d = 1 + rng.below(3);
        let x = center_columns(&Mat::from_fn(n, d, |_, _| rng.uniform(-1.0, 1.0)));
        let nu = if trial % 3 == 0 { 1.0 } else { rng.uniform(0.1, 0.9) };
        let ds = discern_core::data::Dataset::new(x.clone(), true, None, "rand".into()).unwrap();
        let w = RegularizerWeights::from_scalars(d, 1e-7, 0.0, nu, 2e-3).unwrap();
        let p = match build_problem(&ds, &w) {
            Ok(p) => p,
            Err(_) => continue, // singular Gram for this draw
        };
        let (_, sol) = fista_solve(&p, &SolveOptions::default()).unwrap();
        let relax_bound = 1.0 - sol.dual_value * sol.dual_value;
        let discrete = brute_force_discrete(&x, DiscreteMode::Penalized { nu }).unwrap();
        assert!(
            relax_bound <= discrete.value + 1e-6,
            "trial {trial}: bound {relax_bound} vs discrete {}",
            discrete.value
        );
    }
}

/// The rank-2 solution path of the constrained relaxation at zero noise:
/// `Y(alpha) = beta y y^T + (1 - beta) 1 1^T`, `beta = (1-alpha)/(1-alpha*)`.
#[test]
fn rank2_solution_path_rounds_correctly() {
    let n = 40;
    let y: Vec<f64> = (0..n).map(|i| if i < 30 { 1.0 } else { -1.0 }).collect(); // alpha* = 0.25
    let truth = Labeling::from_signs(y.clone()).unwrap();
    let alpha_star = truth.alpha();
    let ones = vec![1.0; n];
    for alpha in [0.25, 0.4, 0.6, 0.8, 0.95] {
        let beta = (1.0 - alpha) / (1.0 - alpha_star);
        let ym = SymMatrix::symmetrized(
            outer(&y, &y).scale(beta).add(&outer(&ones, &ones).scale(1.0 - beta)),
        );
        let rounded = round_rank2_project(&ym).unwrap();
        assert_eq!(clustering_error(&rounded.labels, &truth).unwrap(), 0.0, "alpha = {alpha}");
    }
    // alpha = 1: pure constant matrix, no signal survives centering
    let ym = SymMatrix::symmetrized(outer(&ones, &ones));
    assert!(round_rank2_project(&ym).is_err());
}

/// Near the constant-dominated end of the rank-2 path, rounding the raw
/// principal eigenvector fails while the centered one recovers.
#[test]
fn centered_eigvec_beats_raw_on_shifted_solutions() {
    use discern_core::rounding::round_sign_eigvec;
    let n = 40;
    let y: Vec<f64> = (0..n).map(|i| if i < 30 { 1.0 } else { -1.0 }).collect();
    let truth = Labeling::from_signs(y.clone()).unwrap();
    let ones = vec![1.0; n];
    // beta small: the constant block dominates the top eigenvector
    let beta = 0.1;
    let ym = SymMatrix::symmetrized(
        outer(&y, &y).scale(beta).add(&outer(&ones, &ones).scale(1.0 - beta)),
    );
    let centered = round_sign_eigvec(&ym, true).unwrap();
    assert_eq!(clustering_error(&centered.labels, &truth).unwrap(), 0.0);
    let raw = round_sign_eigvec(&ym, false).unwrap();
    assert!(clustering_error(&raw.labels, &truth).unwrap() > 0.0);
}
