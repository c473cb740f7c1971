//! Scoring: clustering error, rank diagnostics and label-subspace overlap.

use alloc::vec::Vec;

use crate::data::{Labeling, MultiLabeling};
use crate::linalg::{sym_eig, SymMatrix};
use crate::mat::{dot, Mat};
use crate::{Error, Result};

/// Sign-invariant clustering error `1 - (y_hat^T y / n)^2` in `[0, 1]`;
/// zero exactly when `y_hat = +/- y`.
pub fn clustering_error(y_hat: &Labeling, y: &Labeling) -> Result<f64> {
    if y_hat.len() != y.len() {
        return Err(Error::LengthMismatch { left: y_hat.len(), right: y.len() });
    }
    let n = y.len() as f64;
    let c = dot(y_hat.as_slice(), y.as_slice()) / n;
    Ok((1.0 - c * c).clamp(0.0, 1.0))
}

/// Correlation objective of a labeling against a 1-D projection `p`:
/// `(y^T p)^2 / (||Pi_n y||^2 ||p||^2)`, assuming `p` centered. Equals one
/// exactly when `p` is perfectly clustered according to `y`. Degenerate
/// labelings (all entries equal) score zero.
pub fn correlation_score(y: &[f64], p: &[f64]) -> f64 {
    debug_assert_eq!(y.len(), p.len());
    let n = y.len() as f64;
    let sum_y: f64 = y.iter().sum();
    let norm_piy_sq = n - sum_y * sum_y / n;
    let norm_p_sq = dot(p, p);
    if norm_piy_sq <= 0.0 || norm_p_sq <= 0.0 {
        return 0.0;
    }
    let c = dot(y, p);
    (c * c) / (norm_piy_sq * norm_p_sq)
}

#[derive(Debug, Clone)]
pub struct RankReport {
    pub is_rank_one: bool,
    /// Full spectrum, descending.
    pub spectrum: Vec<f64>,
}

/// Rank-one detector: `lambda_2 / lambda_1 <= tol` on a PSD matrix; the
/// spectrum is returned for spikiness diagnostics.
pub fn rank_one_fraction(m: &SymMatrix, tol: f64) -> Result<RankReport> {
    let dec = sym_eig(m)?;
    let l1 = dec.eigenvalues[0];
    if l1 <= 0.0 {
        return Err(Error::NoSignal { top_eigenvalue: l1 });
    }
    let l2 = dec.eigenvalues.get(1).copied().unwrap_or(0.0).max(0.0);
    Ok(RankReport { is_rank_one: l2 / l1 <= tol, spectrum: dec.eigenvalues })
}

/// Number of eigenvalues above `rel_tol * lambda_max` (input descending).
pub fn numerical_rank(spectrum: &[f64], rel_tol: f64) -> usize {
    let max = spectrum.first().copied().unwrap_or(0.0).max(0.0);
    if max <= 0.0 {
        return 0;
    }
    spectrum.iter().filter(|&&l| l > rel_tol * max).count()
}

#[derive(Debug, Clone)]
pub struct ProjectionScore {
    /// `tr(Phi_true Phi_k)` in `[0, min(rank_true, rank_k)]`.
    pub score: f64,
    /// Whether the 1e-10 ridge fallback was needed for either Gram matrix.
    pub ridged: bool,
}

/// Overlap between the column spans of two label matrices through their
/// orthogonal projectors `Phi = Y (Y^T Y)^{-1} Y^T`.
pub fn label_projection_score(
    y_true: &MultiLabeling,
    y_k: &MultiLabeling,
) -> Result<ProjectionScore> {
    if y_true.n() != y_k.n() {
        return Err(Error::LengthMismatch { left: y_true.n(), right: y_k.n() });
    }
    let a = y_true.mat();
    let b = y_k.mat();
    let (ga_inv, r1) = gram_inverse(a)?;
    let (gb_inv, r2) = gram_inverse(b)?;
    // tr(Phi_a Phi_b) = tr[ Ga^{-1} (A^T B) Gb^{-1} (B^T A) ]
    let atb = a.transpose().matmul(b);
    let t = ga_inv.matmul(&atb).matmul(&gb_inv).matmul(&atb.transpose());
    let score = (0..t.rows()).map(|i| t[(i, i)]).sum();
    Ok(ProjectionScore { score, ridged: r1 || r2 })
}

fn gram_inverse(y: &Mat) -> Result<(Mat, bool)> {
    let g = SymMatrix::symmetrized(y.gram());
    let dec = sym_eig(&g)?;
    let max = dec.eigenvalues[0].max(0.0);
    let min = dec.eigenvalues.last().copied().unwrap_or(0.0);
    if min > 1e-12 * max && max > 0.0 {
        return Ok((dec.apply(|l| 1.0 / l).into_mat(), false));
    }
    let ridge = 1e-10 * max.max(1.0);
    let min_r = min + ridge;
    if min_r <= 1e-14 * max.max(1.0) {
        return Err(Error::RankDeficient { min_eigenvalue: min });
    }
    Ok((dec.apply(|l| 1.0 / (l + ridge)).into_mat(), true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::outer;
    use crate::rng::SeedStream;
    use alloc::vec;

    fn labels(v: &[f64]) -> Labeling {
        Labeling::from_signs(v.to_vec()).unwrap()
    }

    #[test]
    fn clustering_error_basics() {
        let y = labels(&[1.0, 1.0, -1.0, -1.0]);
        assert_eq!(clustering_error(&y, &y).unwrap(), 0.0);
        assert_eq!(clustering_error(&y.flipped(), &y).unwrap(), 0.0);
        let half = labels(&[1.0, -1.0, -1.0, -1.0]);
        let e = clustering_error(&half, &y).unwrap();
        assert!(e > 0.0 && e <= 1.0);
        let orth = labels(&[1.0, -1.0, 1.0, -1.0]);
        assert_eq!(clustering_error(&orth, &y).unwrap(), 1.0);
        let short = labels(&[1.0, -1.0]);
        assert!(clustering_error(&short, &y).is_err());
    }

    #[test]
    fn rank_one_detector() {
        let v = [1.0, -2.0, 0.5];
        let m = SymMatrix::symmetrized(outer(&v, &v));
        assert!(rank_one_fraction(&m, 1e-3).unwrap().is_rank_one);
        assert!(!rank_one_fraction(&SymMatrix::identity(3), 1e-3).unwrap().is_rank_one);
        assert!(rank_one_fraction(&SymMatrix::zeros(2), 1e-3).is_err());
    }

    #[test]
    fn rank_one_boundary_at_tol() {
        let u = [1.0, 0.0];
        let w = [0.0, 1.0];
        let spiked = |e: f64| {
            SymMatrix::symmetrized(outer(&u, &u).add(&outer(&w, &w).scale(e)))
        };
        assert!(rank_one_fraction(&spiked(0.5e-3), 1e-3).unwrap().is_rank_one);
        assert!(!rank_one_fraction(&spiked(2e-3), 1e-3).unwrap().is_rank_one);
    }

    #[test]
    fn projection_score_self_and_orthogonal() {
        let mut rng = SeedStream::new(4);
        let y = Mat::from_fn(40, 3, |_, _| rng.sign());
        if !crate::data::labels_independent(&y) {
            return; // astronomically unlikely at n = 40
        }
        let ml = MultiLabeling::from_mat(y.clone()).unwrap();
        let s = label_projection_score(&ml, &ml).unwrap();
        assert!((s.score - 3.0).abs() < 1e-8);

        // permutation and per-column sign flips leave the score unchanged
        let permuted = Mat::from_fn(40, 3, |i, j| match j {
            0 => -y[(i, 2)],
            1 => y[(i, 0)],
            _ => -y[(i, 1)],
        });
        let mp = MultiLabeling::from_mat(permuted).unwrap();
        let s2 = label_projection_score(&ml, &mp).unwrap();
        assert!((s2.score - 3.0).abs() < 1e-8);
    }

    #[test]
    fn projection_score_matches_direct_projectors() {
        let mut rng = SeedStream::new(21);
        let a = Mat::from_fn(20, 3, |_, _| rng.sign());
        let b = Mat::from_fn(20, 2, |_, _| rng.sign());
        let (ml_a, ml_b) =
            (MultiLabeling::from_mat(a.clone()).unwrap(), MultiLabeling::from_mat(b.clone()).unwrap());
        let got = label_projection_score(&ml_a, &ml_b).unwrap();
        // direct projector construction as oracle
        let proj = |y: &Mat| {
            let (gi, _) = gram_inverse(y).unwrap();
            y.matmul(&gi).matmul(&y.transpose())
        };
        let pa = proj(&a);
        let pb = proj(&b);
        let prod = pa.matmul(&pb);
        let tr: f64 = (0..20).map(|i| prod[(i, i)]).sum();
        assert!((got.score - tr).abs() < 1e-8);
    }

    #[test]
    fn correlation_score_extremes() {
        let y = vec![1.0, 1.0, -1.0, -1.0];
        let p = vec![2.0, 2.0, -2.0, -2.0];
        assert!((correlation_score(&y, &p) - 1.0).abs() < 1e-12);
        let orth = vec![1.0, -1.0, 1.0, -1.0];
        assert!(correlation_score(&orth, &p).abs() < 1e-12);
        let degenerate = vec![1.0, 1.0, 1.0, 1.0];
        assert_eq!(correlation_score(&degenerate, &p), 0.0);
    }
}
