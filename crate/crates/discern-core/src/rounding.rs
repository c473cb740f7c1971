//! Turning relaxation solutions into discrete labels: exact 1-D K-means,
//! principal-eigenvector sign rounding (optionally after centering), the
//! rank-2 projection rounding that handles imbalanced solutions, and the
//! alternating Procrustes recovery for multi-label factors.

use alloc::vec;
use alloc::vec::Vec;

use crate::data::{Labeling, MultiLabeling};
use crate::fmath;
use crate::linalg::{center_vec, svd_square, sym_eig, SymMatrix};
use crate::mat::{dot, norm2, Mat};
use crate::metrics::correlation_score;
use crate::{Error, Result};

/// Exact 1-D K-means by dynamic programming over contiguous splits of the
/// sorted values. `assignment[i]` is the cluster of the i-th original value,
/// clusters numbered left to right; ties between equal-cost splits resolve
/// to the leftmost one.
#[derive(Debug, Clone)]
pub struct Kmeans1d {
    pub assignment: Vec<usize>,
    pub distortion: f64,
    pub centers: Vec<f64>,
}

pub fn kmeans1d_exact(values: &[f64], k: usize) -> Result<Kmeans1d> {
    let n = values.len();
    if k < 1 {
        return Err(Error::InvalidArgument("k must be >= 1"));
    }
    if k > n {
        return Err(Error::InvalidArgument("k must not exceed the number of values"));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        values[i].partial_cmp(&values[j]).unwrap_or(core::cmp::Ordering::Equal)
    });
    let sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();

    // prefix sums for the within-segment cost
    let mut pre = vec![0.0; n + 1];
    let mut pre2 = vec![0.0; n + 1];
    for i in 0..n {
        pre[i + 1] = pre[i] + sorted[i];
        pre2[i + 1] = pre2[i] + sorted[i] * sorted[i];
    }
    // cost of one cluster on sorted[i..=j]
    let seg_cost = |i: usize, j: usize| -> f64 {
        let cnt = (j + 1 - i) as f64;
        let s = pre[j + 1] - pre[i];
        let s2 = pre2[j + 1] - pre2[i];
        (s2 - s * s / cnt).max(0.0)
    };

    // dp[c][j]: best cost of grouping sorted[0..=j] into c+1 clusters
    let mut dp = vec![vec![0.0f64; n]; k];
    let mut split = vec![vec![0usize; n]; k];
    for j in 0..n {
        dp[0][j] = seg_cost(0, j);
    }
    for c in 1..k {
        for j in 0..n {
            let mut best = f64::INFINITY;
            let mut best_s = 0;
            // last cluster is sorted[s..=j]; s ranges so earlier clusters
            // keep at least c points
            for s in c..=j {
                let cost = dp[c - 1][s - 1] + seg_cost(s, j);
                if cost < best {
                    best = cost;
                    best_s = s;
                }
            }
            dp[c][j] = if j >= c { best } else { f64::INFINITY };
            split[c][j] = best_s;
        }
    }

    // walk the splits back
    let mut boundaries = vec![0usize; k + 1];
    boundaries[k] = n;
    let mut j = n - 1;
    for c in (1..k).rev() {
        let s = split[c][j];
        boundaries[c] = s;
        j = s - 1;
    }
    let mut assignment = vec![0usize; n];
    let mut centers = Vec::with_capacity(k);
    let mut distortion = 0.0;
    for c in 0..k {
        let (lo, hi) = (boundaries[c], boundaries[c + 1]);
        let cnt = (hi - lo) as f64;
        centers.push((pre[hi] - pre[lo]) / cnt);
        distortion += seg_cost(lo, hi - 1);
        for idx in lo..hi {
            assignment[order[idx]] = c;
        }
    }
    Ok(Kmeans1d { assignment, distortion, centers })
}

/// Rounded two-cluster labels plus spectral diagnostics. `eigen_gap` is
/// `lambda_2 / lambda_1` of the rounded matrix; `degenerate` flags a gap
/// above `1 - 1e-8` (no clear principal direction).
#[derive(Debug, Clone)]
pub struct Rounded {
    pub labels: Labeling,
    pub eigen_gap: f64,
    pub degenerate: bool,
}

fn signs_to_labeling(v: &[f64]) -> Result<Labeling> {
    // zero entries map to +1; global sign normalized so y^T 1 >= 0, first
    // entry +1 when balanced
    let mut y: Vec<f64> = v.iter().map(|&x| if x >= 0.0 { 1.0 } else { -1.0 }).collect();
    let s: f64 = y.iter().sum();
    if s < 0.0 || (s == 0.0 && y[0] < 0.0) {
        for e in &mut y {
            *e = -*e;
        }
    }
    Labeling::from_signs(y)
}

/// Sign of the principal eigenvector of `Y` (of `Pi_n Y Pi_n` when
/// `centered`). Fails when the top eigenvalue is below 1e-12.
pub fn round_sign_eigvec(y: &SymMatrix, centered: bool) -> Result<Rounded> {
    let m = if centered {
        let n = y.dim();
        let mut c = Mat::zeros(n, n);
        // Pi Y Pi computed by centering rows then columns
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            rows.push(center_vec(y.mat().row(i)));
        }
        for j in 0..n {
            let col: Vec<f64> = (0..n).map(|i| rows[i][j]).collect();
            let cc = center_vec(&col);
            for i in 0..n {
                c[(i, j)] = cc[i];
            }
        }
        SymMatrix::symmetrized(c)
    } else {
        y.clone()
    };
    let dec = sym_eig(&m)?;
    let l1 = dec.eigenvalues[0];
    if l1 <= 1e-12 {
        return Err(Error::NoSignal { top_eigenvalue: l1 });
    }
    let l2 = dec.eigenvalues.get(1).copied().unwrap_or(0.0).max(0.0);
    let gap = l2 / l1;
    Ok(Rounded { labels: signs_to_labeling(&dec.eigenvector(0))?, eigen_gap: gap, degenerate: gap > 1.0 - 1e-8 })
}

/// Sign of the k-th eigenvector of `Y` (0-based). Used by the unbalanced
/// sweep to compare first- and second-eigenvector rounding.
pub fn round_sign_eigvec_k(y: &SymMatrix, k: usize) -> Result<Rounded> {
    let dec = sym_eig(y)?;
    let lk = dec.eigenvalues.get(k).copied().unwrap_or(0.0);
    if lk <= 1e-12 {
        return Err(Error::NoSignal { top_eigenvalue: lk });
    }
    let l1 = dec.eigenvalues[0];
    Ok(Rounded {
        labels: signs_to_labeling(&dec.eigenvector(k))?,
        eigen_gap: lk / l1,
        degenerate: false,
    })
}

/// Projection rounding: sign of the principal eigenvector of
/// `Pi_n Y_(2) Pi_n`, where `Y_(2)` is the best rank-2 approximation of `Y`.
/// Robust to the rank-2 structure of imbalanced solutions. The centered
/// rank-2 matrix lives in a 2-D subspace, so its top eigenvector comes from
/// an exact 2x2 problem.
pub fn round_rank2_project(y: &SymMatrix) -> Result<Rounded> {
    let dec = sym_eig(y)?;
    if dec.eigenvalues[0] <= 1e-12 {
        return Err(Error::NoSignal { top_eigenvalue: dec.eigenvalues[0] });
    }
    let n = y.dim();
    let take = n.min(2);
    let mut gs: Vec<Vec<f64>> = Vec::with_capacity(take);
    let mut ls: Vec<f64> = Vec::with_capacity(take);
    for k in 0..take {
        gs.push(center_vec(&dec.eigenvector(k)));
        ls.push(dec.eigenvalues[k]);
    }
    // orthonormal basis of span{Pi q1, Pi q2}
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for g in &gs {
        let mut v = g.clone();
        for b in &basis {
            let p = dot(&v, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= p * bi;
            }
        }
        let nrm = norm2(&v);
        if nrm > 1e-12 {
            basis.push(v.iter().map(|x| x / nrm).collect());
        }
    }
    if basis.is_empty() {
        return Err(Error::NoSignal { top_eigenvalue: 0.0 });
    }
    // restricted operator T_ab = sum_k l_k <b_a, g_k> <g_k, b_b>
    let r = basis.len();
    let mut proj = vec![vec![0.0; gs.len()]; r];
    for (a, b) in basis.iter().enumerate() {
        for (k, g) in gs.iter().enumerate() {
            proj[a][k] = dot(b, g);
        }
    }
    let t = Mat::from_fn(r, r, |a, bb| {
        (0..gs.len()).map(|k| ls[k] * proj[a][k] * proj[bb][k]).sum()
    });
    let tdec = sym_eig(&SymMatrix::symmetrized(t))?;
    let l1 = tdec.eigenvalues[0];
    if l1 <= 1e-12 {
        return Err(Error::NoSignal { top_eigenvalue: l1 });
    }
    let w = tdec.eigenvector(0);
    let mut top = vec![0.0; n];
    for (a, b) in basis.iter().enumerate() {
        for i in 0..n {
            top[i] += w[a] * b[i];
        }
    }
    let l2 = tdec.eigenvalues.get(1).copied().unwrap_or(0.0).max(0.0);
    let gap = l2 / l1;
    Ok(Rounded { labels: signs_to_labeling(&top)?, eigen_gap: gap, degenerate: gap > 1.0 - 1e-8 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundingMethod {
    /// Threshold the projection at zero.
    Sign,
    /// Exact two-cluster 1-D K-means on the projection.
    Kmeans1d,
}

/// Labels from a projection-space solution `V`: project the data on the top
/// eigenvector of `V` and threshold. `score` is the correlation objective of
/// the labels against the projection, in `[0, 1]` and equal to one exactly
/// when the projection is perfectly clustered.
#[derive(Debug, Clone)]
pub struct RoundingReport {
    pub labels: Labeling,
    pub method: RoundingMethod,
    pub score: f64,
    pub eigen_gap: f64,
}

pub fn round_from_v(x: &Mat, v: &SymMatrix, method: RoundingMethod) -> Result<RoundingReport> {
    let dec = sym_eig(v)?;
    let l1 = dec.eigenvalues[0];
    if l1 <= 1e-12 {
        return Err(Error::NoSignal { top_eigenvalue: l1 });
    }
    let direction = dec.eigenvector(0);
    let p = x.matvec(&direction);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in &p {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if hi - lo <= 1e-12 * hi.abs().max(1.0) {
        return Err(Error::ConstantProjection);
    }
    let labels = match method {
        RoundingMethod::Sign => signs_to_labeling(&p)?,
        RoundingMethod::Kmeans1d => {
            let km = kmeans1d_exact(&p, 2)?;
            // cluster with larger center gets +1
            let hi_cluster = if km.centers[1] >= km.centers[0] { 1 } else { 0 };
            let y: Vec<f64> = km
                .assignment
                .iter()
                .map(|&c| if c == hi_cluster { 1.0 } else { -1.0 })
                .collect();
            signs_to_labeling(&y)?
        }
    };
    let score = correlation_score(labels.as_slice(), &p);
    let l2 = dec.eigenvalues.get(1).copied().unwrap_or(0.0).max(0.0);
    Ok(RoundingReport { labels, method, score, eigen_gap: l2 / l1 })
}

/// Alternating sign/l1 and orthogonal-Procrustes recovery of multi-label
/// structure from an `n x (k+1)` spectral factor `F` (with `F F^T` the best
/// rank-(k+1) approximation of a solution `Y`).
///
/// Each round solves the Procrustes problem `R = U V^T` from the SVD of
/// `F^T M`, then rebuilds `M` from `xi = F R`: column signs become labels
/// and `a_j = ||xi_j||_1 / sqrt(sum_j ||xi_j||_1^2)` (the normalization runs
/// over all columns including the constant slot, so `||a||_2 = 1`).
/// Column 0 tracks the constant vector; recovered labels are columns 1..k.
#[derive(Debug, Clone)]
pub struct Procrustes {
    pub coefficients: Vec<f64>,
    pub labels: MultiLabeling,
    /// `||F R - M||_F^2` after each alternation; non-increasing.
    pub objectives: Vec<f64>,
    pub degenerate: bool,
}

/// Number of deterministic restarts. The alternation is non-convex and the
/// plain sign/l1 init stalls on some factors; extra seeded rotations of `F`
/// are tried and the lowest final objective wins.
const PROCRUSTES_INITS: usize = 8;

pub fn multilabel_procrustes(f: &Mat, iters: usize) -> Result<Procrustes> {
    if iters < 1 {
        return Err(Error::InvalidArgument("need at least one alternation"));
    }
    let kp1 = f.cols();
    if kp1 < 2 {
        return Err(Error::InvalidArgument("factor must have at least 2 columns"));
    }
    let mut rng = crate::rng::SeedStream::new(0x50524f43);
    let mut best: Option<Procrustes> = None;
    for candidate in 0..PROCRUSTES_INITS {
        let rotated;
        let f_init = if candidate == 0 {
            f
        } else {
            rotated = f.matmul(&random_rotation(kp1, &mut rng));
            &rotated
        };
        let run = procrustes_once(f_init, iters)?;
        let better = match &best {
            None => true,
            Some(b) => run.objectives.last() < b.objectives.last(),
        };
        if better {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one init"))
}

fn random_rotation(dim: usize, rng: &mut crate::rng::SeedStream) -> Mat {
    loop {
        let g = Mat::from_fn(dim, dim, |_, _| rng.standard_normal());
        let mut cols: Vec<Vec<f64>> = Vec::with_capacity(dim);
        let mut ok = true;
        for j in 0..dim {
            let mut v = g.col(j);
            for c in &cols {
                let p = dot(&v, c);
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= p * ci;
                }
            }
            let nrm = norm2(&v);
            if nrm < 1e-8 {
                ok = false;
                break;
            }
            for vi in &mut v {
                *vi /= nrm;
            }
            cols.push(v);
        }
        if ok {
            return Mat::from_fn(dim, dim, |i, j| cols[j][i]);
        }
    }
}

fn procrustes_once(f: &Mat, iters: usize) -> Result<Procrustes> {
    let n = f.rows();
    let kp1 = f.cols();
    let mut degenerate = false;

    // init: sign/l1 rule applied to F directly (R = I)
    let mut m = sign_l1_update(f);
    let mut objectives = Vec::with_capacity(iters);
    let mut last: Option<(Vec<f64>, Mat)> = None;
    for _ in 0..iters {
        let g = f.transpose().matmul(&m);
        let (u, _sigma, v, degen) = svd_square(&g)?;
        degenerate |= degen;
        let r = u.matmul(&v.transpose());
        let xi = f.matmul(&r);
        m = sign_l1_update(&xi);
        let resid = xi.sub(&m);
        let fro = resid.frobenius_norm();
        objectives.push(fro * fro);
        let a: Vec<f64> = (0..kp1)
            .map(|j| {
                let col = xi.col(j);
                col.iter().map(|x| fmath::abs(*x)).sum::<f64>()
            })
            .collect();
        let nrm = norm2(&a);
        let coeff: Vec<f64> = a.iter().map(|x| x / nrm.max(1e-300)).collect();
        last = Some((coeff, xi));
    }
    for w in objectives.windows(2) {
        debug_assert!(w[1] <= w[0] + 1e-9 * (1.0 + w[0]), "objective increased: {w:?}");
    }
    let (coeff_raw, xi) = last.expect("iters >= 1");

    // Column permutation and sign are free in the factorization, so route
    // the most-constant column into slot 0 before reading off the labels.
    let constant_affinity = |j: usize| -> f64 {
        let col = xi.col(j);
        let signed: f64 = col.iter().sum();
        let total: f64 = col.iter().map(|x| fmath::abs(*x)).sum();
        if total > 0.0 {
            fmath::abs(signed) / total
        } else {
            0.0
        }
    };
    let slot0 = (0..kp1)
        .max_by(|&a, &b| {
            constant_affinity(a)
                .partial_cmp(&constant_affinity(b))
                .unwrap_or(core::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    let order: Vec<usize> =
        core::iter::once(slot0).chain((0..kp1).filter(|&j| j != slot0)).collect();
    let coefficients: Vec<f64> = order.iter().map(|&j| coeff_raw[j]).collect();
    let labels = Mat::from_fn(n, kp1 - 1, |i, j| {
        if xi[(i, order[j + 1])] >= 0.0 {
            1.0
        } else {
            -1.0
        }
    });
    Ok(Procrustes {
        coefficients,
        labels: MultiLabeling::from_mat(labels)?,
        objectives,
        degenerate,
    })
}

fn sign_l1_update(xi: &Mat) -> Mat {
    let kp1 = xi.cols();
    let norms: Vec<f64> = (0..kp1)
        .map(|j| xi.col(j).iter().map(|x| fmath::abs(*x)).sum::<f64>())
        .collect();
    let total = norm2(&norms).max(1e-300);
    Mat::from_fn(xi.rows(), kp1, |i, j| {
        let s = if xi[(i, j)] >= 0.0 { 1.0 } else { -1.0 };
        norms[j] / total * s
    })
}

/// Spectral factor of the best rank-`r` approximation: columns
/// `sqrt(max(lambda_k, 0)) q_k` for the top `r` eigenpairs.
pub fn spectral_factor(y: &SymMatrix, r: usize) -> Result<Mat> {
    let dec = sym_eig(y)?;
    let r = r.min(y.dim());
    Ok(Mat::from_fn(y.dim(), r, |i, k| {
        fmath::sqrt(dec.eigenvalues[k].max(0.0)) * dec.eigenvectors[(i, k)]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::outer;
    use crate::rng::SeedStream;

    #[test]
    fn kmeans1d_separated_pairs() {
        let r = kmeans1d_exact(&[-1.0, -1.0, 1.0, 1.0], 2).unwrap();
        assert_eq!(r.distortion, 0.0);
        assert_eq!(r.assignment, vec![0, 0, 1, 1]);
    }

    #[test]
    fn kmeans1d_enumerated_split() {
        // {0,1}|{10}: 0.5 beats {0}|{1,10}: 40.5
        let r = kmeans1d_exact(&[0.0, 1.0, 10.0], 2).unwrap();
        assert_eq!(r.assignment, vec![0, 0, 1]);
        assert!((r.distortion - 0.5).abs() < 1e-12);
    }

    #[test]
    fn kmeans1d_single_cluster_variance() {
        let vals = [1.0, 2.0, 3.0, 6.0];
        let r = kmeans1d_exact(&vals, 1).unwrap();
        let mean = 3.0;
        let var: f64 = vals.iter().map(|v| (v - mean) * (v - mean)).sum();
        assert!((r.distortion - var).abs() < 1e-12);
        assert!(kmeans1d_exact(&vals, 5).is_err());
        // k = n: zero distortion
        let r = kmeans1d_exact(&vals, 4).unwrap();
        assert_eq!(r.distortion, 0.0);
    }

    #[test]
    fn kmeans1d_matches_exhaustive_enumeration() {
        // oracle: enumerate all contiguous splits of the sorted values
        let mut rng = SeedStream::new(31);
        for n in 1..=12usize {
            let values: Vec<f64> = (0..n).map(|_| rng.uniform(-3.0, 3.0)).collect();
            let mut sorted = values.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for k in 1..=n {
                let got = kmeans1d_exact(&values, k).unwrap();
                let oracle = enumerate_best(&sorted, k);
                assert_eq!(got.distortion, oracle, "n={n} k={k}");
            }
        }
    }

    fn enumerate_best(sorted: &[f64], k: usize) -> f64 {
        let n = sorted.len();
        let mut pre = vec![0.0; n + 1];
        let mut pre2 = vec![0.0; n + 1];
        for i in 0..n {
            pre[i + 1] = pre[i] + sorted[i];
            pre2[i + 1] = pre2[i] + sorted[i] * sorted[i];
        }
        let seg = |i: usize, j: usize| -> f64 {
            let cnt = (j + 1 - i) as f64;
            let s = pre[j + 1] - pre[i];
            let s2 = pre2[j + 1] - pre2[i];
            (s2 - s * s / cnt).max(0.0)
        };
        // choose k-1 boundaries among n-1 positions; accumulate
        // left-to-right so the float association matches the DP
        fn rec(
            seg: &dyn Fn(usize, usize) -> f64,
            start: usize,
            n: usize,
            clusters: usize,
            acc: f64,
        ) -> f64 {
            if clusters == 1 {
                return acc + seg(start, n - 1);
            }
            let mut best = f64::INFINITY;
            for end in start..=(n - clusters) {
                let cost = rec(seg, end + 1, n, clusters - 1, acc + seg(start, end));
                if cost < best {
                    best = cost;
                }
            }
            best
        }
        rec(&seg, 0, n, k, 0.0)
    }

    #[test]
    fn sign_eigvec_recovers_rank_one() {
        let y = [1.0, -1.0, 1.0, -1.0, -1.0];
        let m = SymMatrix::symmetrized(outer(&y, &y));
        let r = round_sign_eigvec(&m, false).unwrap();
        let err = crate::metrics::clustering_error(
            &r.labels,
            &Labeling::from_signs(y.to_vec()).unwrap(),
        )
        .unwrap();
        assert_eq!(err, 0.0);
        // invariant to positive rescaling and global sign of y
        let m2 = SymMatrix::symmetrized(outer(&y, &y).scale(7.5));
        let r2 = round_sign_eigvec(&m2, false).unwrap();
        assert_eq!(r.labels, r2.labels);
    }

    #[test]
    fn sign_eigvec_identity_is_degenerate() {
        match round_sign_eigvec(&SymMatrix::identity(4), false) {
            Ok(r) => assert!(r.degenerate),
            Err(Error::NoSignal { .. }) => {}
            Err(e) => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn rank2_projection_on_shifted_solution() {
        // Y = a yy^T + b 11^T with unbalanced y: centered projection strips
        // the constant direction
        let n = 12;
        let y: Vec<f64> = (0..n).map(|i| if i < 9 { 1.0 } else { -1.0 }).collect();
        let ones = vec![1.0; n];
        let m = SymMatrix::symmetrized(
            outer(&y, &y).scale(0.6).add(&outer(&ones, &ones).scale(0.4)),
        );
        let r = round_rank2_project(&m).unwrap();
        let truth = Labeling::from_signs(y).unwrap();
        assert_eq!(crate::metrics::clustering_error(&r.labels, &truth).unwrap(), 0.0);
        // rank-1 input: same as plain sign rounding
        let m1 = SymMatrix::symmetrized(outer(truth.as_slice(), truth.as_slice()));
        let r1 = round_rank2_project(&m1).unwrap();
        let r2 = round_sign_eigvec(&m1, false).unwrap();
        assert_eq!(r1.labels, r2.labels);
    }

    #[test]
    fn rank2_projection_prefers_heavier_centered_label() {
        // two planted balanced labels with different weights: the heavier
        // one survives the centered rank-2 projection
        let n = 8;
        let y1: Vec<f64> = (0..n).map(|i| if i < 4 { 1.0 } else { -1.0 }).collect();
        let y2: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let m = SymMatrix::symmetrized(outer(&y1, &y1).scale(0.7).add(&outer(&y2, &y2).scale(0.3)));
        let r = round_rank2_project(&m).unwrap();
        let truth = Labeling::from_signs(y1).unwrap();
        assert_eq!(crate::metrics::clustering_error(&r.labels, &truth).unwrap(), 0.0);
    }

    #[test]
    fn round_from_v_planted() {
        let noise = crate::data::NoiseSpec::uniform(0.5).unwrap();
        let ds = crate::data::gen_balanced(20, 3, &noise, 2).unwrap();
        let truth = ds.single_truth().unwrap().clone();
        let mut v = Mat::zeros(3, 3);
        v[(0, 0)] = 1.0;
        let v = SymMatrix::symmetrized(v);
        for method in [RoundingMethod::Sign, RoundingMethod::Kmeans1d] {
            let rep = round_from_v(&ds.x, &v, method).unwrap();
            assert_eq!(crate::metrics::clustering_error(&rep.labels, &truth).unwrap(), 0.0);
            assert!((rep.score - 1.0).abs() < 1e-12);
        }
        // constant projection errors out
        let ones = Mat::from_fn(5, 2, |_, j| if j == 0 { 1.0 } else { 0.0 });
        assert!(matches!(
            round_from_v(&ones, &v_of(&[1.0, 0.0]), RoundingMethod::Sign),
            Err(Error::ConstantProjection)
        ));
    }

    fn v_of(v: &[f64]) -> SymMatrix {
        SymMatrix::symmetrized(outer(v, v))
    }

    #[test]
    fn pure_noise_direction_scores_below_one() {
        let mut rng = SeedStream::new(40);
        let x = Mat::from_fn(30, 4, |_, _| rng.uniform(-1.0, 1.0));
        let x = crate::linalg::center_columns(&x);
        let dir: Vec<f64> = (0..4).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let rep = round_from_v(&x, &v_of(&dir), RoundingMethod::Kmeans1d).unwrap();
        assert!(rep.score < 1.0);
        assert!(rep.score >= 0.0);
    }

    #[test]
    fn sign_and_kmeans_agree_on_symmetric_bimodal() {
        let mut rng = SeedStream::new(6);
        let mut p: Vec<f64> = (0..30).map(|i| if i < 15 { 1.0 } else { -1.0 }).collect();
        for v in &mut p {
            *v += rng.uniform(-0.4, 0.4);
        }
        let x = Mat::from_col(&p);
        let v = v_of(&[1.0]);
        let a = round_from_v(&x, &v, RoundingMethod::Sign).unwrap();
        let b = round_from_v(&x, &v, RoundingMethod::Kmeans1d).unwrap();
        assert_eq!(a.labels, b.labels);
    }

    #[test]
    fn procrustes_identity_alignment() {
        // F already equals a valid M: one alternation suffices
        let n = 16;
        let mut rng = SeedStream::new(8);
        let y1: Vec<f64> = (0..n).map(|_| rng.sign()).collect();
        let y2: Vec<f64> = (0..n).map(|_| rng.sign()).collect();
        let a = [0.6, 0.5, 0.624499799839840]; // unit norm
        let f = Mat::from_fn(n, 3, |i, j| match j {
            0 => a[0],
            1 => a[1] * y1[i],
            _ => a[2] * y2[i],
        });
        let p = multilabel_procrustes(&f, 1).unwrap();
        assert!(p.objectives[0] < 1e-20);
        assert!((norm2(&p.coefficients) - 1.0).abs() < 1e-10);
        let rec1 = p.labels.label(0).unwrap();
        let t1 = Labeling::from_signs(y1).unwrap();
        assert_eq!(crate::metrics::clustering_error(&rec1, &t1).unwrap(), 0.0);
    }

    #[test]
    fn procrustes_recovers_planted_rotation() {
        for seed in [17u64, 18, 19, 20] {
            let n = 40;
            let mut rng = SeedStream::new(seed);
            let k = 2;
            let y: Vec<Vec<f64>> =
                (0..k).map(|_| (0..n).map(|_| rng.sign()).collect()).collect();
            let a = [0.5, 0.65, 0.5723635208501674];
            let m =
                Mat::from_fn(n, k + 1, |i, j| if j == 0 { a[0] } else { a[j] * y[j - 1][i] });
            // random rotation R0: F = M R0^T so that F R0 = M
            let g = Mat::from_fn(k + 1, k + 1, |_, _| rng.standard_normal());
            let (u, _s, v, _) = svd_square(&g).unwrap();
            let r0 = u.matmul(&v.transpose());
            let f = m.matmul(&r0.transpose());
            let p = multilabel_procrustes(&f, 5).unwrap();
            // labels recovered up to permutation and sign
            for yj in &y {
                let t = Labeling::from_signs(yj.clone()).unwrap();
                let best = (0..k)
                    .map(|c| {
                        let rec = p.labels.label(c).unwrap();
                        crate::metrics::clustering_error(&rec, &t).unwrap()
                    })
                    .fold(f64::INFINITY, f64::min);
                assert_eq!(best, 0.0, "seed {seed}: label not recovered");
            }
            // objective monotone non-increasing
            for w in p.objectives.windows(2) {
                assert!(w[1] <= w[0] + 1e-9);
            }
        }
    }
}
