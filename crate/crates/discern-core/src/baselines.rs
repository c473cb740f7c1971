//! Reference methods: Lloyd K-means with D^2 seeding (optionally on
//! whitened data), alternating optimization of direction and labels, and the
//! exhaustive discrete oracle used to sandwich the relaxation in tests.

use alloc::vec;
use alloc::vec::Vec;

use crate::data::Labeling;
use crate::fmath;
use crate::linalg::{spd_inv_sqrt, sym_eig, SymMatrix};
use crate::mat::{dot, Mat};
use crate::metrics::correlation_score;
use crate::rng::SeedStream;
use crate::rounding::kmeans1d_exact;
use crate::{Error, Result};

/// Largest `n` the exhaustive oracle accepts (`2^(n-1)` sign patterns).
pub const MAX_ENUMERATION_N: usize = 16;

#[derive(Debug, Clone)]
pub struct KmeansFit {
    pub labels: Vec<usize>,
    pub centers: Mat,
    pub distortion: f64,
    pub iterations: usize,
}

/// Lloyd iterations from D^2-weighted seeding, best of `n_init` restarts by
/// distortion (ties keep the earliest restart). With `whiten` the points are
/// first mapped through `(X^T X / n)^{-1/2}`. Deterministic for a fixed
/// seed; empty clusters are re-seeded from the point farthest from its
/// center.
pub fn kmeans_lloyd(
    x: &Mat,
    k: usize,
    seed: u64,
    n_init: usize,
    whiten: bool,
) -> Result<KmeansFit> {
    let n = x.rows();
    if k < 1 || k > n {
        return Err(Error::InvalidArgument("need 1 <= k <= n"));
    }
    if n_init < 1 {
        return Err(Error::InvalidArgument("need n_init >= 1"));
    }
    let data;
    let x = if whiten {
        let gram = SymMatrix::symmetrized(x.gram().scale(1.0 / n as f64));
        let w = spd_inv_sqrt(&gram)?;
        data = x.matmul(w.mat());
        &data
    } else {
        x
    };
    let mut best: Option<KmeansFit> = None;
    for restart in 0..n_init {
        let fit = lloyd_once(x, k, crate::rng::mix64(seed ^ (restart as u64).wrapping_mul(0x9e37)));
        let better = match &best {
            None => true,
            Some(b) => fit.distortion < b.distortion,
        };
        if better {
            best = Some(fit);
        }
    }
    Ok(best.expect("n_init >= 1"))
}

fn lloyd_once(x: &Mat, k: usize, seed: u64) -> KmeansFit {
    let n = x.rows();
    let d = x.cols();
    let mut rng = SeedStream::new(seed);

    // D^2 seeding
    let mut centers: Vec<Vec<f64>> = Vec::with_capacity(k);
    centers.push(x.row(rng.below(n)).to_vec());
    let mut dist2: Vec<f64> = (0..n).map(|i| sq_dist(x.row(i), &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = dist2.iter().sum();
        let idx = if total <= 0.0 {
            rng.below(n)
        } else {
            let mut target = rng.unit() * total;
            let mut pick = n - 1;
            for (i, &w) in dist2.iter().enumerate() {
                if target < w {
                    pick = i;
                    break;
                }
                target -= w;
            }
            pick
        };
        centers.push(x.row(idx).to_vec());
        for i in 0..n {
            dist2[i] = dist2[i].min(sq_dist(x.row(i), centers.last().unwrap()));
        }
    }

    let mut labels = vec![0usize; n];
    let mut iterations = 0;
    for it in 0..200 {
        iterations = it + 1;
        let mut changed = false;
        for i in 0..n {
            let mut best_c = 0;
            let mut best_d = f64::INFINITY;
            for (c, center) in centers.iter().enumerate() {
                let dd = sq_dist(x.row(i), center);
                if dd < best_d {
                    best_d = dd;
                    best_c = c;
                }
            }
            if labels[i] != best_c {
                labels[i] = best_c;
                changed = true;
            }
        }
        // recompute centers; re-seed empty clusters from the farthest point
        let mut counts = vec![0usize; k];
        let mut sums = vec![vec![0.0; d]; k];
        for i in 0..n {
            counts[labels[i]] += 1;
            for (s, &v) in sums[labels[i]].iter_mut().zip(x.row(i)) {
                *s += v;
            }
        }
        for c in 0..k {
            if counts[c] == 0 {
                let far = (0..n)
                    .max_by(|&a, &b| {
                        let da = sq_dist(x.row(a), &centers[labels[a]]);
                        let db = sq_dist(x.row(b), &centers[labels[b]]);
                        da.partial_cmp(&db).unwrap_or(core::cmp::Ordering::Equal)
                    })
                    .unwrap_or(0);
                centers[c] = x.row(far).to_vec();
                changed = true;
            } else {
                for (j, s) in sums[c].iter().enumerate() {
                    centers[c][j] = s / counts[c] as f64;
                }
            }
        }
        if !changed && it > 0 {
            break;
        }
    }
    let distortion: f64 = (0..n).map(|i| sq_dist(x.row(i), &centers[labels[i]])).sum();
    let centers = Mat::from_fn(k, d, |c, j| centers[c][j]);
    KmeansFit { labels, centers, distortion, iterations }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Alternating optimization of the correlation objective
/// `(y^T X w)^2 / (||Pi_n y||^2 ||X w||^2)`: the direction update is the
/// least-squares fit `w = (X^T X)^{-1} X^T y`, the label update exact 1-D
/// two-means on `X w`. The objective never decreases; stops at a fixed
/// point.
#[derive(Debug, Clone)]
pub struct AltOptState {
    pub w: Vec<f64>,
    pub labels: Labeling,
    pub objective: f64,
    pub iterations: usize,
    /// Whether the Gram matrix needed the 1e-8 ridge.
    pub ridged: bool,
}

pub fn alt_opt(x: &Mat, seed: u64, max_iters: usize) -> Result<AltOptState> {
    let n = x.rows();
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2"));
    }
    let (solve, ridged) = gram_solver(x)?;

    // random balanced start
    let mut y: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let mut rng = SeedStream::new(seed);
    rng.shuffle(&mut y);

    let mut w = solve(&x.tr_matvec(&y));
    let mut objective = correlation_score(&y, &x.matvec(&w));
    let mut iterations = 0;
    for it in 0..max_iters {
        iterations = it + 1;
        let p = x.matvec(&w);
        let km = kmeans1d_exact(&p, 2)?;
        let hi = if km.centers[1] >= km.centers[0] { 1 } else { 0 };
        let y_new: Vec<f64> =
            km.assignment.iter().map(|&c| if c == hi { 1.0 } else { -1.0 }).collect();
        let w_new = solve(&x.tr_matvec(&y_new));
        let obj_new = correlation_score(&y_new, &x.matvec(&w_new));
        debug_assert!(obj_new >= objective - 1e-9, "alternation decreased the objective");
        let fixed_point = y_new == y;
        y = y_new;
        w = w_new;
        objective = obj_new;
        if fixed_point {
            break;
        }
    }
    Ok(AltOptState { w, labels: Labeling::from_signs(y)?, objective, iterations, ridged })
}

/// Returns a solver for `(X^T X) w = b`, adding a 1e-8 ridge when the Gram
/// matrix is numerically singular (flagged).
#[allow(clippy::type_complexity)]
fn gram_solver(x: &Mat) -> Result<(impl Fn(&[f64]) -> Vec<f64>, bool)> {
    let gram = SymMatrix::symmetrized(x.gram());
    let dec = sym_eig(&gram)?;
    let max = dec.eigenvalues[0].max(0.0);
    let min = *dec.eigenvalues.last().unwrap();
    let ridged = min <= 1e-12 * max.max(1.0);
    let ridge = if ridged { 1e-8 * max.max(1.0) } else { 0.0 };
    if ridged && min + ridge <= 0.0 {
        return Err(Error::RankDeficient { min_eigenvalue: min });
    }
    let inv = dec.apply(|l| 1.0 / (l + ridge));
    Ok((move |b: &[f64]| inv.mat().matvec(b), ridged))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiscreteMode {
    /// Fix the squared imbalance `(y^T 1 / n)^2 = alpha` (nearest feasible
    /// value is used and reported).
    Constrained { alpha: f64 },
    /// Penalize by `nu (y^T 1 / n)^2`.
    Penalized { nu: f64 },
}

#[derive(Debug, Clone)]
pub struct DiscreteOptimum {
    pub labels: Labeling,
    pub value: f64,
    /// Imbalance actually attained (constrained mode reports the feasible
    /// alpha closest to the request).
    pub realized_alpha: f64,
}

/// Exact global optimum of the discrete objective
/// `(1/n) y^T (Pi_n - X (X^T X)^{-1} X^T) y` over sign vectors, either
/// constrained to an imbalance level or with the quadratic imbalance
/// penalty. Enumerates `2^(n-1)` candidates (the objective is
/// sign-invariant), so `n <= 16`.
pub fn brute_force_discrete(x: &Mat, mode: DiscreteMode) -> Result<DiscreteOptimum> {
    let n = x.rows();
    if n > MAX_ENUMERATION_N {
        return Err(Error::TooLargeForEnumeration { n, max: MAX_ENUMERATION_N });
    }
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2"));
    }
    let m = centered_residual_matrix(x)?;

    let target_alpha = match mode {
        DiscreteMode::Constrained { alpha } => {
            if !(0.0..=1.0).contains(&alpha) {
                return Err(Error::InvalidArgument("alpha must lie in [0, 1]"));
            }
            // feasible alphas are ((n - 2j)/n)^2
            let mut best = 0.0;
            let mut best_gap = f64::INFINITY;
            for j in 0..=n {
                let r = (n as f64 - 2.0 * j as f64) / n as f64;
                let a = r * r;
                let gap = fmath::abs(a - alpha);
                if gap < best_gap {
                    best_gap = gap;
                    best = a;
                }
            }
            Some(best)
        }
        DiscreteMode::Penalized { nu } => {
            if nu < 0.0 {
                return Err(Error::InvalidArgument("nu must be nonnegative"));
            }
            None
        }
    };

    let mut best_val = f64::INFINITY;
    let mut best_y: Option<Vec<f64>> = None;
    let mut y = vec![1.0f64; n];
    for bits in 0u64..(1u64 << (n - 1)) {
        for (i, e) in y.iter_mut().enumerate().skip(1) {
            *e = if bits >> (i - 1) & 1 == 1 { -1.0 } else { 1.0 };
        }
        let s: f64 = y.iter().sum();
        let alpha = (s / n as f64) * (s / n as f64);
        if let Some(t) = target_alpha {
            if fmath::abs(alpha - t) > 1e-12 {
                continue;
            }
        }
        let my = m.matvec(&y);
        let mut val = dot(&y, &my) / n as f64;
        if let DiscreteMode::Penalized { nu } = mode {
            val += nu * alpha;
        }
        if val < best_val {
            best_val = val;
            best_y = Some(y.clone());
        }
    }
    let y = best_y.ok_or(Error::InvalidArgument("no feasible labeling"))?;
    let labels = Labeling::from_signs(y)?;
    let realized_alpha = labels.alpha();
    Ok(DiscreteOptimum { labels, value: best_val, realized_alpha })
}

/// `Pi_n - X (X^T X)^{-1} X^T` with a spectral pseudo-inverse, so
/// rank-deficient designs still yield the projector onto the column space.
fn centered_residual_matrix(x: &Mat) -> Result<Mat> {
    let n = x.rows();
    let gram = SymMatrix::symmetrized(x.gram());
    let dec = sym_eig(&gram)?;
    let max = dec.eigenvalues[0].max(0.0);
    let pinv = dec.apply(|l| if l > 1e-12 * max.max(1.0) { 1.0 / l } else { 0.0 });
    let h = x.matmul(pinv.mat()).matmul(&x.transpose());
    Ok(Mat::from_fn(n, n, |i, j| {
        let pi = if i == j { 1.0 - 1.0 / n as f64 } else { -1.0 / n as f64 };
        pi - h[(i, j)]
    }))
}
