//! Smoothed dual solver for the trace-normalized sparse relaxation.
//!
//! Primal problem (over PSD `V`, with `A = X^T X / n + Diag(a)^2`):
//!
//! ```text
//! max  (1/n) sum_i sqrt((X V X^T)_ii) - ||Diag(c) V Diag(c)||_1
//!      + eps * vonNeumannEntropy(A^1/2 V A^1/2)
//! s.t. tr(A^1/2 V A^1/2) = 1
//! ```
//!
//! Its dual is minimized over `u in R^n_+` and a box-constrained `C`:
//!
//! ```text
//! min  (1/2n) sum_i 1/u_i
//!      + phi_eps( A^-1/2 ((1/2n) X^T Diag(u) X - C) A^-1/2 ),
//!      |C_ij| <= c_i c_j
//! ```
//!
//! with `phi_eps(D) = eps log tr exp(D/eps)`. FISTA handles the smooth
//! spectral term; the `u` prox is a coordinate-wise Newton iteration and the
//! `C` prox an elementwise clamp. The primal matrix is recovered in closed
//! form from the Gibbs weights of `D`.
//!
//! Cluster-imbalance penalties `nu in [0,1)` are handled by appending a
//! constant column to the design with quadratic weight `sqrt(nu/(1-nu))` and
//! no l1 weight; `nu = 1` solves the unaugmented problem.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::data::Dataset;
use crate::fmath;
use crate::linalg::{
    smooth_max_from_decomp, spd_inv_sqrt, sym_eig, SmoothMax, SpectralDecomp, SymMatrix,
};
use crate::mat::{dot, Mat};
use crate::{Error, Result};

/// KKT pass tolerance on `lambda_max(A_dual)` and `||A_dual V||_max`.
pub const KKT_TOL: f64 = 1e-6;

/// Regularizer configuration: quadratic weights `a`, l1 weights `c`, the
/// imbalance penalty `nu` and the smoothing level `eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularizerWeights {
    pub a: Vec<f64>,
    pub c: Vec<f64>,
    pub nu: f64,
    pub epsilon: f64,
}

impl RegularizerWeights {
    pub fn new(a: Vec<f64>, c: Vec<f64>, nu: f64, epsilon: f64) -> Result<Self> {
        if a.len() != c.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), got: c.len() });
        }
        if !(0.0..=1.0).contains(&nu) {
            return Err(Error::InvalidArgument("nu must lie in [0, 1]"));
        }
        if !(epsilon > 0.0) {
            return Err(Error::InvalidArgument("epsilon must be > 0"));
        }
        if a.iter().chain(c.iter()).any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidArgument("a and c must be finite and nonnegative"));
        }
        Ok(RegularizerWeights { a, c, nu, epsilon })
    }

    /// Uniform weights: `a_i = a_scale` and `c_i = sqrt(lambda)`, so that
    /// `||Diag(c) V Diag(c)||_1 = lambda ||V||_1`.
    pub fn from_scalars(d: usize, a_scale: f64, lambda: f64, nu: f64, epsilon: f64) -> Result<Self> {
        if lambda < 0.0 {
            return Err(Error::InvalidArgument("lambda must be nonnegative"));
        }
        let c = fmath::sqrt(lambda);
        Self::new(vec![a_scale; d], vec![c; d], nu, epsilon)
    }

    /// Default smoothing level `1e-2 / log d` (`d` floored at 2).
    pub fn default_epsilon(d: usize) -> f64 {
        1e-2 / fmath::ln(d.max(2) as f64)
    }
}

/// Immutable solve context: augmented design, Gram matrix `A`, its inverse
/// square root, the whitened rows `g_i = A^-1/2 x_i` and the gradient
/// Lipschitz constant. Shareable across concurrent solves.
#[derive(Debug, Clone)]
pub struct SmoothedProblem {
    xa: Mat,
    a_gram: SymMatrix,
    ainv_sqrt: SymMatrix,
    /// Rows `g_i = A^-1/2 x_i` (n x da).
    g: Mat,
    c_aug: Vec<f64>,
    lipschitz: f64,
    epsilon: f64,
}

impl SmoothedProblem {
    pub fn n(&self) -> usize {
        self.xa.rows()
    }

    /// Solve dimension (`d`, or `d + 1` when `nu < 1`).
    pub fn dim(&self) -> usize {
        self.xa.cols()
    }

    pub fn design(&self) -> &Mat {
        &self.xa
    }

    pub fn gram(&self) -> &SymMatrix {
        &self.a_gram
    }

    pub fn inv_sqrt(&self) -> &SymMatrix {
        &self.ainv_sqrt
    }

    pub fn c_weights(&self) -> &[f64] {
        &self.c_aug
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Duality-gap threshold `eps log(dim)` (dim floored at 2).
    pub fn default_gap_tol(&self) -> f64 {
        self.epsilon * fmath::ln(self.dim().max(2) as f64)
    }
}

/// Builds the solve context from a centered dataset. `nu` values above
/// `1 - 1e-6` (but below 1) are rejected: the augmentation weight
/// `sqrt(nu/(1-nu))` blows up there, use the exact `nu = 1` path instead.
pub fn build_problem(ds: &Dataset, w: &RegularizerWeights) -> Result<SmoothedProblem> {
    if !ds.centered {
        return Err(Error::InvalidArgument(
            "dataset must be centered before solving; center explicitly",
        ));
    }
    let d = ds.d();
    if w.a.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: w.a.len() });
    }
    let n = ds.n();
    let (xa, a_aug, c_aug) = if w.nu == 1.0 {
        (ds.x.clone(), w.a.clone(), w.c.clone())
    } else {
        if w.nu > 1.0 - 1e-6 {
            return Err(Error::InvalidArgument(
                "nu too close to 1: the augmentation weight diverges, use nu = 1",
            ));
        }
        let ones = Mat::from_col(&vec![1.0; n]);
        let mut a = w.a.clone();
        a.push(fmath::sqrt(w.nu / (1.0 - w.nu)));
        let mut c = w.c.clone();
        c.push(0.0);
        (ds.x.hcat(&ones), a, c)
    };

    let mut gram = xa.gram().scale(1.0 / n as f64);
    for (i, ai) in a_aug.iter().enumerate() {
        gram[(i, i)] += ai * ai;
    }
    let a_gram = SymMatrix::symmetrized(gram);
    let dec = sym_eig(&a_gram)?;
    let max_eig = dec.eigenvalues[0];
    let min_eig = *dec.eigenvalues.last().unwrap();
    if min_eig < 1e-10 * max_eig.max(0.0) || max_eig <= 0.0 {
        return Err(Error::GramSingular { min_eigenvalue: min_eig, max_eigenvalue: max_eig });
    }
    let ainv_sqrt = spd_inv_sqrt(&a_gram)?;
    let g = xa.matmul(ainv_sqrt.mat());
    let lipschitz = lipschitz_constant(&g, min_eig, w.epsilon, n);
    Ok(SmoothedProblem { xa, a_gram, ainv_sqrt, g, c_aug, lipschitz, epsilon: w.epsilon })
}

/// Gradient Lipschitz constant
/// `L = (2/eps) max(lambda_max(B^T B ⊙ B^T B), lambda_max(A^{-1})^2)`
/// with `B = (1/sqrt(2n)) A^{-1/2} X^T`. Computed once per problem.
pub fn lipschitz(p: &SmoothedProblem) -> f64 {
    p.lipschitz
}

fn lipschitz_constant(g: &Mat, min_eig_a: f64, eps: f64, n: usize) -> f64 {
    let had = hadamard_sq_top_eig(g) / ((2 * n) as f64 * (2 * n) as f64);
    let inv_sq = 1.0 / (min_eig_a * min_eig_a);
    (2.0 / eps) * had.max(inv_sq)
}

/// `lambda_max(M ⊙ M)` for `M_ij = g_i^T g_j`, by power iteration on the
/// implicit operator `v -> (g_i^T S g_i)_i` with `S = sum_j v_j g_j g_j^T`.
/// The matrix has nonnegative entries, so a positive start converges to the
/// Perron eigenvalue; fully deterministic.
fn hadamard_sq_top_eig(g: &Mat) -> f64 {
    let n = g.rows();
    let mut v = vec![1.0 / fmath::sqrt(n as f64); n];
    let mut lambda = 0.0;
    for _ in 0..500 {
        let s = g.weighted_gram(Some(&v));
        let mut w: Vec<f64> = (0..n)
            .map(|i| {
                let gi = g.row(i);
                let sg = s.matvec(gi);
                dot(gi, &sg)
            })
            .collect();
        let new_lambda = dot(&v, &w);
        let nrm = crate::mat::norm2(&w);
        if nrm == 0.0 {
            return 0.0;
        }
        for wi in &mut w {
            *wi /= nrm;
        }
        v = w;
        if fmath::abs(new_lambda - lambda) <= 1e-12 * new_lambda.max(1.0) {
            return new_lambda;
        }
        lambda = new_lambda;
    }
    lambda
}

/// FISTA iterate: prox outputs `(u, C)`, the previous pair and the
/// extrapolated pair, plus the momentum scalar.
#[derive(Debug, Clone)]
pub struct DualState {
    pub u: Vec<f64>,
    pub c: Mat,
    u_prev: Vec<f64>,
    c_prev: Mat,
    u_bar: Vec<f64>,
    c_bar: Mat,
    t: f64,
}

impl DualState {
    fn init(n: usize, d: usize) -> Self {
        let u = vec![1.0; n];
        let c = Mat::zeros(d, d);
        DualState {
            u_prev: u.clone(),
            c_prev: c.clone(),
            u_bar: u.clone(),
            c_bar: c.clone(),
            u,
            c,
            t: 1.0,
        }
    }

    pub fn momentum(&self) -> f64 {
        self.t
    }
}

/// Recovered primal solution. `primal_value` is the unsmoothed objective of
/// the trace-normalized problem at `V`; the duality gap is evaluated on the
/// smoothed pair, `gap = dual_value - (primal_value + eps * entropy)`.
#[derive(Debug, Clone)]
pub struct PrimalSolution {
    pub v: SymMatrix,
    pub primal_value: f64,
    pub dual_value: f64,
    pub entropy: f64,
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Dual-objective increases (beyond burn-in and tolerance) observed
    /// across gap evaluations.
    pub monotone_violations: usize,
}

/// One duality-gap evaluation, reported to observers.
#[derive(Debug, Clone)]
pub struct TraceRow {
    pub iteration: usize,
    pub dual: f64,
    pub primal_smoothed: f64,
    pub gap: f64,
}

/// Hooks into the solve loop; all methods default to no-ops.
pub trait SolveObserver {
    fn on_iteration(&mut self, _iteration: usize) {}
    fn on_gap_eval(&mut self, _row: &TraceRow) {}
}

pub struct NoopObserver;
impl SolveObserver for NoopObserver {}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Stop once the smoothed duality gap drops below this; `None` means
    /// `eps log(dim)`.
    pub gap_tol: Option<f64>,
    pub max_iter: usize,
    pub newton_steps: usize,
    /// Evaluate the duality gap every this many iterations (it costs an
    /// extra eigendecomposition).
    pub gap_check_every: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { gap_tol: None, max_iter: 100_000, newton_steps: 30, gap_check_every: 10 }
    }
}

fn check_u_positive(u: &[f64]) -> Result<()> {
    for (i, &v) in u.iter().enumerate() {
        if !(v > 0.0) {
            return Err(Error::DualDomain { index: i, value: v });
        }
    }
    Ok(())
}

fn build_d(p: &SmoothedProblem, u: &[f64], c: &Mat) -> SymMatrix {
    let n2 = 2.0 * p.n() as f64;
    let quad = p.g.weighted_gram(Some(u)).scale(1.0 / n2);
    let shift = p.ainv_sqrt.sandwich(c);
    SymMatrix::symmetrized(quad.sub(shift.mat()))
}

fn smooth_part(p: &SmoothedProblem, u: &[f64], c: &Mat) -> Result<(SpectralDecomp, SmoothMax)> {
    let d_mat = build_d(p, u, c);
    let dec = sym_eig(&d_mat)?;
    let sm = smooth_max_from_decomp(&dec, p.epsilon)?;
    Ok((dec, sm))
}

/// Dual objective `(1/2n) sum 1/u_i + phi_eps(D(u, C))`; requires `u > 0`.
pub fn dual_objective(p: &SmoothedProblem, u: &[f64], c: &Mat) -> Result<f64> {
    check_u_positive(u)?;
    let (_, sm) = smooth_part(p, u, c)?;
    let barrier: f64 = u.iter().map(|ui| 1.0 / ui).sum::<f64>() / (2.0 * p.n() as f64);
    Ok(barrier + sm.value)
}

/// Gradients of the smooth spectral term:
/// `grad_u_i = (1/2n) g_i^T Q g_i` and `grad_C = -A^{-1/2} Q A^{-1/2}`
/// where `Q` is the Gibbs weight matrix of `D`. The `C` gradient carries a
/// minus sign because `D` depends on `-C`; the finite-difference tests pin
/// this down.
pub fn gradients(p: &SmoothedProblem, u: &[f64], c: &Mat) -> Result<(Vec<f64>, Mat)> {
    let (_, sm) = smooth_part(p, u, c)?;
    Ok(gradients_from_softmax(p, &sm.softmax))
}

fn gradients_from_softmax(p: &SmoothedProblem, q: &SymMatrix) -> (Vec<f64>, Mat) {
    let n2 = 2.0 * p.n() as f64;
    let t = p.g.matmul(q.mat());
    let grad_u: Vec<f64> = (0..p.n()).map(|i| dot(p.g.row(i), t.row(i)) / n2).collect();
    let grad_c = p.ainv_sqrt.sandwich(q.mat()).into_mat().scale(-1.0);
    (grad_u, grad_c)
}

/// Prox of `(1/2n) sum 1/u_i` at `u_bar` with step `1/L`: coordinate-wise
/// Newton on `L(u - u_bar) = 1/(2n u^2)`, started at
/// `max(u_bar, (2nL)^{-1/3})`. A step that would leave the positive domain
/// falls back to halving, after which the iteration is monotone from the
/// left.
pub fn prox_u(u_bar: &[f64], n: usize, l: f64, newton_steps: usize) -> Vec<f64> {
    let nl = n as f64 * l;
    let floor = 1.0 / fmath::cbrt(2.0 * nl);
    u_bar
        .iter()
        .map(|&ub| {
            let mut u = ub.max(floor);
            for _ in 0..newton_steps {
                let u3 = u * u * u;
                let next = (2.0 * nl * u3 * ub + 3.0 * u) / (2.0 * (nl * u3 + 1.0));
                let next = if next > 0.0 { next } else { 0.5 * u };
                if fmath::abs(next - u) <= 1e-16 * (1.0 + fmath::abs(u)) {
                    u = next;
                    break;
                }
                u = next;
            }
            u
        })
        .collect()
}

/// Euclidean projection onto `{ |C_ij| <= c_i c_j }`: symmetrize, then clamp
/// elementwise. Entries already inside the box are untouched.
pub fn prox_c(c_bar: &Mat, c: &[f64]) -> Mat {
    let d = c.len();
    debug_assert_eq!(c_bar.rows(), d);
    let sym = SymMatrix::symmetrized(c_bar.clone());
    Mat::from_fn(d, d, |i, j| {
        let bound = c[i] * c[j];
        sym[(i, j)].clamp(-bound, bound)
    })
}

/// Recovers the primal matrix from a dual state:
/// `V = A^{-1/2} Q A^{-1/2}` with `Q` the Gibbs weights of `D(u, C)`, so the
/// trace constraint `tr(A^{1/2} V A^{1/2}) = tr Q = 1` holds by construction.
/// Iteration statistics are filled in by [`fista_solve`].
pub fn recover_primal(p: &SmoothedProblem, u: &[f64], c: &Mat) -> Result<PrimalSolution> {
    check_u_positive(u)?;
    let (_, sm) = smooth_part(p, u, c)?;
    let barrier: f64 = u.iter().map(|ui| 1.0 / ui).sum::<f64>() / (2.0 * p.n() as f64);
    let dual_value = barrier + sm.value;
    let v = p.ainv_sqrt.sandwich(sm.softmax.mat());
    let primal = primal_value(p, &v)?;
    let gap = dual_value - (primal + p.epsilon * sm.entropy);
    Ok(PrimalSolution {
        v,
        primal_value: primal,
        dual_value,
        entropy: sm.entropy,
        gap,
        iterations: 0,
        converged: true,
        monotone_violations: 0,
    })
}

/// Unsmoothed primal objective
/// `(1/n) sum_i sqrt((X V X^T)_ii) - ||Diag(c) V Diag(c)||_1` at a feasible
/// `V` (trace constraint checked to 1e-6). Diagonal entries of `X V X^T`
/// below `-1e-12` are a PSD violation and rejected.
pub fn primal_value(p: &SmoothedProblem, v: &SymMatrix) -> Result<f64> {
    if v.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: v.dim() });
    }
    let tr = trace_product(v, &p.a_gram);
    if fmath::abs(tr - 1.0) > 1e-6 {
        return Err(Error::InvalidArgument("V violates the trace constraint tr(V A) = 1"));
    }
    let quad = row_quadratic_forms(&p.xa, v);
    let mut sum = 0.0;
    for &q in &quad {
        if q < -1e-12 {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: q, max_eigenvalue: 0.0 });
        }
        sum += fmath::sqrt(q.max(0.0));
    }
    let mut l1 = 0.0;
    for i in 0..v.dim() {
        for j in 0..v.dim() {
            l1 += p.c_aug[i] * p.c_aug[j] * fmath::abs(v[(i, j)]);
        }
    }
    Ok(sum / p.n() as f64 - l1)
}

pub(crate) fn trace_product(a: &SymMatrix, b: &SymMatrix) -> f64 {
    let d = a.dim();
    let mut t = 0.0;
    for i in 0..d {
        for j in 0..d {
            t += a[(i, j)] * b[(j, i)];
        }
    }
    t
}

/// `x_i^T V x_i` for every row of `x`.
pub fn row_quadratic_forms(x: &Mat, v: &SymMatrix) -> Vec<f64> {
    let w = x.matmul(v.mat());
    (0..x.rows()).map(|i| dot(w.row(i), x.row(i))).collect()
}

/// FISTA (Algorithm: gradient step at the extrapolated point, Newton prox in
/// `u`, clamp prox in `C`, momentum `t_k = (1 + sqrt(1 + 4 t_{k-1}^2)) / 2`).
/// Stops at the first gap evaluation with `gap <= gap_tol`, or after
/// `max_iter` iterations with `converged = false`.
pub fn fista_solve(p: &SmoothedProblem, opts: &SolveOptions) -> Result<(DualState, PrimalSolution)> {
    fista_solve_observed(p, opts, &mut NoopObserver)
}

pub fn fista_solve_observed(
    p: &SmoothedProblem,
    opts: &SolveOptions,
    observer: &mut dyn SolveObserver,
) -> Result<(DualState, PrimalSolution)> {
    let gap_tol = opts.gap_tol.unwrap_or_else(|| p.default_gap_tol());
    let n = p.n();
    let l = p.lipschitz;
    let mut state = DualState::init(n, p.dim());
    let mut last_dual: Option<f64> = None;
    let mut violations = 0usize;
    let mut samples = 0usize;

    let finish = |state: DualState,
                      iterations: usize,
                      converged: bool,
                      violations: usize|
     -> Result<(DualState, PrimalSolution)> {
        let mut sol = recover_primal(p, &state.u, &state.c)?;
        sol.iterations = iterations;
        sol.converged = converged;
        sol.monotone_violations = violations;
        Ok((state, sol))
    };

    if opts.max_iter == 0 {
        return finish(state, 0, false, 0);
    }

    let check_every = opts.gap_check_every.max(1);
    for k in 1..=opts.max_iter {
        let (_, sm) = smooth_part(p, &state.u_bar, &state.c_bar)
            .map_err(|e| diverged(k, &state, Some(e)))?;
        let (grad_u, grad_c) = gradients_from_softmax(p, &sm.softmax);
        if grad_u.iter().any(|g| !g.is_finite()) || !grad_c.is_finite() {
            return Err(diverged(k, &state, None));
        }

        let u_half: Vec<f64> =
            state.u_bar.iter().zip(&grad_u).map(|(ub, g)| ub - g / l).collect();
        let c_half = state.c_bar.sub(&grad_c.scale(1.0 / l));
        let u_new = prox_u(&u_half, n, l, opts.newton_steps);
        let c_new = prox_c(&c_half, &p.c_aug);

        let t_new = 0.5 * (1.0 + fmath::sqrt(1.0 + 4.0 * state.t * state.t));
        let beta = (state.t - 1.0) / t_new;
        state.u_bar = u_new
            .iter()
            .zip(&state.u)
            .map(|(new, old)| new + beta * (new - old))
            .collect();
        state.c_bar = c_new.add(&c_new.sub(&state.c).scale(beta));
        state.u_prev = core::mem::replace(&mut state.u, u_new);
        state.c_prev = core::mem::replace(&mut state.c, c_new);
        state.t = t_new;
        observer.on_iteration(k);

        if k % check_every == 0 || k == opts.max_iter {
            let sol = recover_primal(p, &state.u, &state.c)
                .map_err(|e| diverged(k, &state, Some(e)))?;
            if !sol.dual_value.is_finite() || !sol.gap.is_finite() {
                return Err(diverged(k, &state, None));
            }
            samples += 1;
            if let Some(prev) = last_dual {
                // burn-in: ignore the first few evaluations where momentum
                // still rings
                if samples > 3 && sol.dual_value > prev + 1e-9 * (1.0 + fmath::abs(prev)) {
                    violations += 1;
                }
            }
            last_dual = Some(sol.dual_value);
            observer.on_gap_eval(&TraceRow {
                iteration: k,
                dual: sol.dual_value,
                primal_smoothed: sol.primal_value + p.epsilon * sol.entropy,
                gap: sol.gap,
            });
            if sol.gap <= gap_tol {
                let mut sol = sol;
                sol.iterations = k;
                sol.converged = true;
                sol.monotone_violations = violations;
                return Ok((state, sol));
            }
        }
    }
    finish(state, opts.max_iter, false, violations)
}

fn diverged(iteration: usize, state: &DualState, cause: Option<Error>) -> Error {
    let (mut umin, mut umax) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in &state.u {
        umin = umin.min(v);
        umax = umax.max(v);
    }
    let mut detail: String = format!(
        "u in [{umin:.3e}, {umax:.3e}], |C|_max = {:.3e}, t = {:.3e}",
        state.c.max_abs(),
        state.t
    );
    if let Some(cause) = cause {
        detail = format!("{cause}; {detail}");
    }
    Error::Diverged { iteration, detail }
}

/// Correlation-normalized label matrix
/// `Y = Diag(diag(X V X^T))^{-1/2} X V X^T Diag(diag(X V X^T))^{-1/2}`.
/// Rows whose diagonal entry falls below 1e-12 are zeroed out with a unit
/// diagonal and reported; an all-zero diagonal is an error.
#[derive(Debug, Clone)]
pub struct ReconstructedY {
    pub y: SymMatrix,
    pub degenerate_rows: Vec<usize>,
}

pub fn reconstruct_y(x: &Mat, v: &SymMatrix) -> Result<ReconstructedY> {
    let n = x.rows();
    let quad = row_quadratic_forms(x, v);
    let mut scale = vec![0.0; n];
    let mut degenerate_rows = Vec::new();
    let mut any = false;
    for i in 0..n {
        if quad[i] > 1e-12 {
            scale[i] = 1.0 / fmath::sqrt(quad[i]);
            any = true;
        } else {
            degenerate_rows.push(i);
        }
    }
    if !any {
        return Err(Error::ZeroDiagonal);
    }
    let w = x.matmul(v.mat());
    let mut y = Mat::zeros(n, n);
    for i in 0..n {
        if scale[i] == 0.0 {
            y[(i, i)] = 1.0;
            continue;
        }
        for j in i..n {
            let val = scale[i] * scale[j] * dot(w.row(i), x.row(j));
            y[(i, j)] = val;
            y[(j, i)] = val;
        }
        y[(i, i)] = 1.0;
    }
    Ok(ReconstructedY { y: SymMatrix::symmetrized(y), degenerate_rows })
}

/// KKT certificate for the unnormalized relaxation at a candidate `V`:
/// `A_dual = (1/n) sum_i x_i x_i^T / sqrt(x_i^T V x_i) - lambda U - (1/n) X^T X`
/// must be negative semidefinite and satisfy `A_dual V = 0`. `U` is the
/// best-effort subgradient of `||V||_1`: `sign(V_ij)` on the support,
/// `clamp(A_res / lambda, +/-1)` off it; for `lambda = 0` the `U` term is
/// dropped.
#[derive(Debug, Clone)]
pub struct KktReport {
    pub max_eigenvalue: f64,
    pub complementarity: f64,
    pub pass: bool,
}

pub fn kkt_check(x: &Mat, v: &SymMatrix, lambda: f64) -> Result<KktReport> {
    let n = x.rows() as f64;
    let quad = row_quadratic_forms(x, v);
    let mut inv_sqrt = Vec::with_capacity(quad.len());
    for &q in &quad {
        if q <= 1e-12 {
            return Err(Error::InvalidArgument("zero projection x_i^T V x_i in KKT check"));
        }
        inv_sqrt.push(1.0 / fmath::sqrt(q));
    }
    let weighted = x.weighted_gram(Some(&inv_sqrt)).scale(1.0 / n);
    let gram = x.gram().scale(1.0 / n);
    let a_res = weighted.sub(&gram);
    let d = v.dim();
    let a_dual = if lambda > 0.0 {
        let support_tol = 1e-8 * v.mat().max_abs().max(1e-300);
        let u = Mat::from_fn(d, d, |i, j| {
            if fmath::abs(v[(i, j)]) > support_tol {
                if v[(i, j)] >= 0.0 {
                    1.0
                } else {
                    -1.0
                }
            } else {
                (a_res[(i, j)] / lambda).clamp(-1.0, 1.0)
            }
        });
        a_res.sub(&u.scale(lambda))
    } else {
        a_res
    };
    let a_dual = SymMatrix::symmetrized(a_dual);
    let dec = sym_eig(&a_dual)?;
    let max_eigenvalue = dec.eigenvalues[0];
    let complementarity = a_dual.mat().matmul(v.mat()).max_abs();
    Ok(KktReport {
        max_eigenvalue,
        complementarity,
        pass: max_eigenvalue <= KKT_TOL && complementarity <= KKT_TOL,
    })
}
