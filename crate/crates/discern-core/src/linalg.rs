//! Symmetric dense linear algebra: Jacobi eigendecomposition, inverse square
//! roots of SPD matrices, the entropy-smoothed spectral maximum, and column
//! centering.

use alloc::vec;
use alloc::vec::Vec;

use crate::fmath;
use crate::mat::Mat;
use crate::{Error, Result};

/// Relative asymmetry accepted by [`SymMatrix::from_mat`].
pub const SYMMETRY_TOL: f64 = 1e-12;

const MAX_JACOBI_SWEEPS: usize = 64;

/// Symmetric matrix. Construction symmetrizes `(M + M^T)/2`; the strict
/// constructor rejects inputs whose asymmetry exceeds [`SYMMETRY_TOL`]
/// relative to the largest entry.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    m: Mat,
}

impl SymMatrix {
    pub fn from_mat(m: Mat) -> Result<Self> {
        let dev = asymmetry(&m)?;
        let scale = m.max_abs().max(1.0);
        if dev > SYMMETRY_TOL * scale {
            return Err(Error::Asymmetric { max_relative_deviation: dev / scale });
        }
        Ok(Self::symmetrized(m))
    }

    /// Symmetrizes unconditionally. For matrices that are symmetric by
    /// construction up to rounding (products `S M S`, softmax outputs).
    pub fn symmetrized(m: Mat) -> Self {
        assert_eq!(m.rows(), m.cols(), "SymMatrix requires a square matrix");
        let n = m.rows();
        let mut s = m;
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (s[(i, j)] + s[(j, i)]);
                s[(i, j)] = v;
                s[(j, i)] = v;
            }
        }
        SymMatrix { m: s }
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix { m: Mat::identity(n) }
    }

    pub fn diag(entries: &[f64]) -> Self {
        SymMatrix { m: Mat::diag(entries) }
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix { m: Mat::zeros(n, n) }
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn mat(&self) -> &Mat {
        &self.m
    }

    pub fn into_mat(self) -> Mat {
        self.m
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.m[(i, i)]).sum()
    }

    /// `self · other · self` for symmetric factors, re-symmetrized.
    pub fn sandwich(&self, inner: &Mat) -> SymMatrix {
        SymMatrix::symmetrized(self.m.matmul(inner).matmul(&self.m))
    }
}

impl core::ops::Index<(usize, usize)> for SymMatrix {
    type Output = f64;
    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.m[idx]
    }
}

fn asymmetry(m: &Mat) -> Result<f64> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut dev: f64 = 0.0;
    for i in 0..m.rows() {
        for j in (i + 1)..m.cols() {
            dev = dev.max(fmath::abs(m[(i, j)] - m[(j, i)]));
        }
    }
    Ok(dev)
}

/// Eigendecomposition of a symmetric matrix; eigenvalues sorted descending,
/// column `i` of `eigenvectors` pairs with `eigenvalues[i]`.
#[derive(Debug, Clone)]
pub struct SpectralDecomp {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Mat,
}

impl SpectralDecomp {
    /// `U Diag(f(lambda)) U^T`, re-symmetrized.
    pub fn apply(&self, mut f: impl FnMut(f64) -> f64) -> SymMatrix {
        let n = self.eigenvalues.len();
        let u = &self.eigenvectors;
        let mut out = Mat::zeros(n, n);
        for k in 0..n {
            let fk = f(self.eigenvalues[k]);
            if fk == 0.0 {
                continue;
            }
            for i in 0..n {
                let s = fk * u[(i, k)];
                if s == 0.0 {
                    continue;
                }
                for j in i..n {
                    out[(i, j)] += s * u[(j, k)];
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                out[(i, j)] = out[(j, i)];
            }
        }
        SymMatrix { m: out }
    }

    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.col(k)
    }
}

/// Symmetric eigendecomposition: Householder tridiagonalization followed by
/// the implicit-shift QL iteration, with accumulated transformations.
/// Deterministic for identical input. [`sym_eig_jacobi`] is the slower
/// reference route used to cross-check this one in tests.
pub fn sym_eig(m: &SymMatrix) -> Result<SpectralDecomp> {
    let n = m.dim();
    if n == 0 {
        return Ok(SpectralDecomp { eigenvalues: Vec::new(), eigenvectors: Mat::zeros(0, 0) });
    }
    let mut a = m.m.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut a, &mut d, &mut e);
    // accumulate rotations on rows (transposed eigenvector storage)
    let mut zt = a.transpose();
    ql_implicit_shift(&mut d, &mut e, &mut zt)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).unwrap_or(core::cmp::Ordering::Equal));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let eigenvectors = Mat::from_fn(n, n, |i, k| zt[(order[k], i)]);
    Ok(SpectralDecomp { eigenvalues, eigenvectors })
}

/// Householder reduction to tridiagonal form; on return `a` holds the
/// accumulated orthogonal transformation, `d` the diagonal and `e` the
/// subdiagonal (in `e[1..]`).
fn tridiagonalize(a: &mut Mat, d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += fmath::abs(a[(i, k)]);
            }
            if scale == 0.0 {
                e[i] = a[(i, l)];
            } else {
                for k in 0..=l {
                    a[(i, k)] /= scale;
                    h += a[(i, k)] * a[(i, k)];
                }
                let f = a[(i, l)];
                let g = if f >= 0.0 { -fmath::sqrt(h) } else { fmath::sqrt(h) };
                e[i] = scale * g;
                h -= f * g;
                a[(i, l)] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    a[(j, i)] = a[(i, j)] / h;
                    let mut g_acc = 0.0;
                    for k in 0..=j {
                        g_acc += a[(j, k)] * a[(i, k)];
                    }
                    for k in (j + 1)..=l {
                        g_acc += a[(k, j)] * a[(i, k)];
                    }
                    e[j] = g_acc / h;
                    f_acc += e[j] * a[(i, j)];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[(j, k)] -= f * e[k] + g * a[(i, k)];
                    }
                }
            }
        } else {
            e[i] = a[(i, l)];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += a[(i, k)] * a[(k, j)];
                }
                for k in 0..i {
                    a[(k, j)] -= g * a[(k, i)];
                }
            }
        }
        d[i] = a[(i, i)];
        a[(i, i)] = 1.0;
        for j in 0..i {
            a[(j, i)] = 0.0;
            a[(i, j)] = 0.0;
        }
    }
}

const MAX_QL_ITERS: usize = 50;

/// Implicit-shift QL on a tridiagonal matrix, rotating the rows of the
/// transposed accumulator `zt` in step.
fn ql_implicit_shift(d: &mut [f64], e: &mut [f64], zt: &mut Mat) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    // norm-scaled deflation floor; the purely local test stalls on blocks
    // of (numerically) zero eigenvalues, where |d[m]| + |d[m+1]| vanishes
    let anchor = f64::EPSILON
        * d.iter()
            .zip(e.iter())
            .fold(0.0f64, |m, (a, b)| m.max(fmath::abs(*a) + fmath::abs(*b)));
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = fmath::abs(d[m]) + fmath::abs(d[m + 1]);
                if fmath::abs(e[m]) <= f64::EPSILON * dd || fmath::abs(e[m]) <= anchor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERS {
                return Err(Error::EigNonConvergence { sweeps: MAX_QL_ITERS });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = fmath::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + fmath::copysign(r, g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut restart = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = fmath::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    restart = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                // rotate accumulator rows i and i+1 (contiguous)
                let (zi, zi1) = zt.two_rows_mut(i, i + 1);
                for (x, y) in zi.iter_mut().zip(zi1.iter_mut()) {
                    f = *y;
                    *y = s * *x + c * f;
                    *x = c * *x - s * f;
                }
            }
            if restart {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Cyclic Jacobi eigendecomposition (Rutishauser's variant); slower than
/// [`sym_eig`] but with independent arithmetic, kept as the cross-check
/// oracle.
pub fn sym_eig_jacobi(m: &SymMatrix) -> Result<SpectralDecomp> {
    let n = m.dim();
    if n == 0 {
        return Ok(SpectralDecomp { eigenvalues: Vec::new(), eigenvectors: Mat::zeros(0, 0) });
    }
    let mut a = m.m.clone();
    let mut vt = Mat::identity(n); // row k accumulates eigenvector k
    let mut b: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    let mut d = b.clone();
    let mut z = vec![0.0; n];

    let mut converged = false;
    for sweep in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            let row = a.row(p);
            for &v in &row[(p + 1)..] {
                off += fmath::abs(v);
            }
        }
        if off == 0.0 {
            converged = true;
            break;
        }
        let tresh = if sweep < 3 { 0.2 * off / ((n * n) as f64) } else { 0.0 };
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = 100.0 * fmath::abs(apq);
                if sweep > 3
                    && fmath::abs(d[p]) + g == fmath::abs(d[p])
                    && fmath::abs(d[q]) + g == fmath::abs(d[q])
                {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                } else if fmath::abs(apq) > tresh {
                    let mut h = d[q] - d[p];
                    let t = if fmath::abs(h) + g == fmath::abs(h) {
                        apq / h
                    } else {
                        let theta = 0.5 * h / apq;
                        let mut t = 1.0 / (fmath::abs(theta) + fmath::sqrt(1.0 + theta * theta));
                        if theta < 0.0 {
                            t = -t;
                        }
                        t
                    };
                    let c = 1.0 / fmath::sqrt(1.0 + t * t);
                    let s = t * c;
                    let tau = s / (1.0 + c);
                    h = t * apq;
                    z[p] -= h;
                    z[q] += h;
                    d[p] -= h;
                    d[q] += h;

                    // rows p and q of the symmetric work matrix
                    let (rp, rq) = a.two_rows_mut(p, q);
                    rotate_rows(rp, rq, s, tau);
                    rp[p] = d[p];
                    rq[q] = d[q];
                    rp[q] = 0.0;
                    rq[p] = 0.0;
                    // mirror into the columns
                    for j in 0..n {
                        if j != p && j != q {
                            a[(j, p)] = a[(p, j)];
                            a[(j, q)] = a[(q, j)];
                        }
                    }
                    let (vp, vq) = vt.two_rows_mut(p, q);
                    rotate_rows(vp, vq, s, tau);
                }
            }
        }
        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
            a[(i, i)] = b[i];
        }
    }
    if !converged {
        return Err(Error::EigNonConvergence { sweeps: MAX_JACOBI_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).unwrap_or(core::cmp::Ordering::Equal));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let eigenvectors = Mat::from_fn(n, n, |i, k| vt[(order[k], i)]);
    Ok(SpectralDecomp { eigenvalues, eigenvectors })
}

#[inline]
fn rotate_rows(rp: &mut [f64], rq: &mut [f64], s: f64, tau: f64) {
    for (x, y) in rp.iter_mut().zip(rq.iter_mut()) {
        let (xv, yv) = (*x, *y);
        *x = xv - s * (yv + tau * xv);
        *y = yv + s * (xv - tau * yv);
    }
}

/// `A^{-1/2}` of a symmetric positive definite matrix. Requires
/// `min eig > 1e-12 * max eig`.
pub fn spd_inv_sqrt(a: &SymMatrix) -> Result<SymMatrix> {
    let dec = sym_eig(a)?;
    let max = dec.eigenvalues.first().copied().unwrap_or(0.0);
    let min = dec.eigenvalues.last().copied().unwrap_or(0.0);
    if min <= 1e-12 * max.max(0.0) || max <= 0.0 {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min, max_eigenvalue: max });
    }
    Ok(dec.apply(|l| 1.0 / fmath::sqrt(l)))
}

/// Entropy-smoothed spectral maximum of a symmetric matrix:
/// `value = eps * log tr exp(D / eps)`, together with the Gibbs weight matrix
/// `softmax = exp(D/eps) / tr exp(D/eps)` (PSD, unit trace, same eigenvectors
/// as `D`) and its von Neumann entropy `-tr[softmax log softmax]`.
#[derive(Debug, Clone)]
pub struct SmoothMax {
    pub value: f64,
    pub softmax: SymMatrix,
    /// Eigenvalues of `softmax` (descending, nonnegative, summing to one).
    pub weights: Vec<f64>,
    pub entropy: f64,
}

/// All exponentials are taken after subtracting the top eigenvalue, so the
/// result stays finite for `eps` as small as the termination tests need.
pub fn smooth_max_eig(d: &SymMatrix, eps: f64) -> Result<SmoothMax> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument("smoothing level eps must be > 0"));
    }
    let dec = sym_eig(d)?;
    smooth_max_from_decomp(&dec, eps)
}

pub(crate) fn smooth_max_from_decomp(dec: &SpectralDecomp, eps: f64) -> Result<SmoothMax> {
    let theta_max = dec.eigenvalues.first().copied().unwrap_or(0.0);
    let shifted: Vec<f64> = dec.eigenvalues.iter().map(|&t| fmath::exp((t - theta_max) / eps)).collect();
    let total: f64 = shifted.iter().sum();
    let value = theta_max + eps * fmath::ln(total);
    let weights: Vec<f64> = shifted.iter().map(|w| w / total).collect();
    let entropy = -weights
        .iter()
        .map(|&s| if s > 0.0 { s * fmath::ln(s) } else { 0.0 })
        .sum::<f64>();
    let mut k = 0;
    let softmax = dec.apply(|_| {
        let s = weights[k];
        k += 1;
        s
    });
    Ok(SmoothMax { value, softmax, weights, entropy })
}

/// Removes column means: applies `Pi_n = I - (1/n) 1 1^T` on the left.
pub fn center_columns(x: &Mat) -> Mat {
    let n = x.rows() as f64;
    let mut means = vec![0.0; x.cols()];
    for i in 0..x.rows() {
        for (m, &v) in means.iter_mut().zip(x.row(i)) {
            *m += v;
        }
    }
    for m in &mut means {
        *m /= n;
    }
    Mat::from_fn(x.rows(), x.cols(), |i, j| x[(i, j)] - means[j])
}

/// Centers a vector: `v - mean(v)`.
pub fn center_vec(v: &[f64]) -> Vec<f64> {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter().map(|x| x - mean).collect()
}

/// SVD of a small square matrix via the eigendecomposition of `G^T G`.
/// Returns `(U, sigma, V, degenerate)` with `G = U Diag(sigma) V^T`;
/// `degenerate` flags singular values below `1e-12 * sigma_max`, whose left
/// vectors are completed by Gram-Schmidt instead of `G v / sigma`.
pub fn svd_square(g: &Mat) -> Result<(Mat, Vec<f64>, Mat, bool)> {
    let k = g.rows();
    if k != g.cols() {
        return Err(Error::NotSquare { rows: g.rows(), cols: g.cols() });
    }
    let gtg = SymMatrix::symmetrized(g.gram());
    let dec = sym_eig(&gtg)?;
    let sigma: Vec<f64> = dec.eigenvalues.iter().map(|&l| fmath::sqrt(l.max(0.0))).collect();
    let smax = sigma.first().copied().unwrap_or(0.0);
    let tol = 1e-12 * smax.max(1.0);
    let v = dec.eigenvectors.clone();
    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut degenerate = false;
    for j in 0..k {
        if sigma[j] > tol {
            let vj = v.col(j);
            let gv = g.matvec(&vj);
            u_cols.push(gv.iter().map(|x| x / sigma[j]).collect());
        } else {
            degenerate = true;
            u_cols.push(complete_orthonormal(&u_cols, k));
        }
    }
    let u = Mat::from_fn(k, k, |i, j| u_cols[j][i]);
    Ok((u, sigma, v, degenerate))
}

fn complete_orthonormal(existing: &[Vec<f64>], k: usize) -> Vec<f64> {
    for basis in 0..k {
        let mut cand = vec![0.0; k];
        cand[basis] = 1.0;
        for e in existing {
            let p = crate::mat::dot(&cand, e);
            for (c, &ev) in cand.iter_mut().zip(e) {
                *c -= p * ev;
            }
        }
        let nrm = crate::mat::norm2(&cand);
        if nrm > 1e-6 {
            return cand.iter().map(|x| x / nrm).collect();
        }
    }
    // Unreachable for k orthonormal-deficient columns; keep a safe fallback.
    let mut cand = vec![0.0; k];
    cand[0] = 1.0;
    cand
}
