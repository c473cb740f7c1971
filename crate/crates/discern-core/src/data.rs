//! Datasets, labelings, bounded noise laws and the synthetic generators used
//! by the experiment harnesses. Every generator is a pure function of its
//! arguments and seed.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::fmath;
use crate::linalg::{center_columns, SymMatrix};
use crate::mat::Mat;
use crate::rng::SeedStream;
use crate::{Error, Result};

/// Two-cluster labeling: entries exactly `+1`/`-1`, with the squared
/// imbalance `alpha = (y^T 1 / n)^2` cached.
#[derive(Debug, Clone, PartialEq)]
pub struct Labeling {
    y: Vec<f64>,
    alpha: f64,
}

impl Labeling {
    pub fn from_signs(y: Vec<f64>) -> Result<Self> {
        if y.is_empty() {
            return Err(Error::InvalidArgument("labeling must be non-empty"));
        }
        if y.iter().any(|&v| v != 1.0 && v != -1.0) {
            return Err(Error::InvalidArgument("labeling entries must be exactly +1 or -1"));
        }
        let s: f64 = y.iter().sum();
        let alpha = (s / y.len() as f64) * (s / y.len() as f64);
        Ok(Labeling { y, alpha })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    /// Squared imbalance `(y^T 1 / n)^2` in `[0, 1]`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn flipped(&self) -> Labeling {
        Labeling { y: self.y.iter().map(|v| -v).collect(), alpha: self.alpha }
    }
}

/// `n x k` matrix of `+1`/`-1` labels with per-label imbalances.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiLabeling {
    y: Mat,
    alphas: Vec<f64>,
}

impl MultiLabeling {
    pub fn from_mat(y: Mat) -> Result<Self> {
        if y.cols() == 0 || y.rows() == 0 {
            return Err(Error::InvalidArgument("multi-labeling must be non-empty"));
        }
        if y.data().iter().any(|&v| v != 1.0 && v != -1.0) {
            return Err(Error::InvalidArgument("labeling entries must be exactly +1 or -1"));
        }
        let n = y.rows() as f64;
        let alphas = (0..y.cols())
            .map(|j| {
                let s: f64 = y.col(j).iter().sum();
                (s / n) * (s / n)
            })
            .collect();
        Ok(MultiLabeling { y, alphas })
    }

    pub fn mat(&self) -> &Mat {
        &self.y
    }

    pub fn k(&self) -> usize {
        self.y.cols()
    }

    pub fn n(&self) -> usize {
        self.y.rows()
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn label(&self, j: usize) -> Result<Labeling> {
        Labeling::from_signs(self.y.col(j))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Truth {
    Single(Labeling),
    Multi(MultiLabeling),
}

/// Bounded symmetric noise law with its second moment `m`, kurtosis
/// `beta = E z^4 / m^2` and almost-sure bound `R`.
#[derive(Debug, Clone, PartialEq)]
pub enum NoiseLaw {
    Rademacher,
    Uniform,
    TruncatedGaussian,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSpec {
    pub law: NoiseLaw,
    /// Second moment `E z^2`.
    pub m: f64,
    /// Kurtosis `E z^4 / (E z^2)^2`; equals 1 exactly for Rademacher noise.
    pub beta: f64,
    /// Almost-sure bound on `|z|`.
    pub r: f64,
}

impl NoiseSpec {
    pub fn rademacher() -> Self {
        NoiseSpec { law: NoiseLaw::Rademacher, m: 1.0, beta: 1.0, r: 1.0 }
    }

    pub fn uniform(r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::InvalidArgument("uniform noise bound R must be > 0"));
        }
        Ok(NoiseSpec { law: NoiseLaw::Uniform, m: r * r / 3.0, beta: 9.0 / 5.0, r })
    }

    /// Standard normal resampled until `|z| <= r`; the truncated moments are
    /// computed from the Gaussian tail formulas.
    pub fn truncated_gaussian(r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::InvalidArgument("truncation bound R must be > 0"));
        }
        let mass = 2.0 * fmath::normal_cdf(r) - 1.0;
        let phi = fmath::normal_pdf(r);
        let m = 1.0 - 2.0 * r * phi / mass;
        let fourth = 3.0 - 2.0 * r * phi * (r * r + 3.0) / mass;
        let beta = fourth / (m * m);
        Ok(NoiseSpec { law: NoiseLaw::TruncatedGaussian, m, beta, r })
    }

    pub fn sample(&self, rng: &mut SeedStream) -> f64 {
        match self.law {
            NoiseLaw::Rademacher => rng.sign(),
            NoiseLaw::Uniform => rng.uniform(-self.r, self.r),
            NoiseLaw::TruncatedGaussian => loop {
                let z = rng.standard_normal();
                if fmath::abs(z) <= self.r {
                    return z;
                }
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self.law {
            NoiseLaw::Rademacher => "rademacher",
            NoiseLaw::Uniform => "uniform",
            NoiseLaw::TruncatedGaussian => "truncated-gaussian",
        }
    }
}

/// An `n x d` design matrix together with centering state, optional ground
/// truth and a provenance string. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub x: Mat,
    pub centered: bool,
    pub truth: Option<Truth>,
    pub provenance: String,
}

impl Dataset {
    pub fn new(x: Mat, centered: bool, truth: Option<Truth>, provenance: String) -> Result<Self> {
        if x.rows() < 2 || x.cols() < 1 {
            return Err(Error::InvalidArgument("dataset needs n >= 2 and d >= 1"));
        }
        if !x.is_finite() {
            return Err(Error::NonFinite);
        }
        if centered {
            let n = x.rows() as f64;
            for j in 0..x.cols() {
                let (mut sum, mut scale) = (0.0f64, 0.0f64);
                for i in 0..x.rows() {
                    sum += x[(i, j)];
                    scale = scale.max(fmath::abs(x[(i, j)]));
                }
                if fmath::abs(sum) > 1e-8 * n * scale.max(1.0) {
                    return Err(Error::InvalidArgument(
                        "dataset claims to be centered but a column sum is too large",
                    ));
                }
            }
        }
        Ok(Dataset { x, centered, truth, provenance })
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    pub fn d(&self) -> usize {
        self.x.cols()
    }

    /// Returns a centered copy (no-op when already centered).
    pub fn centered(&self) -> Dataset {
        if self.centered {
            return self.clone();
        }
        Dataset {
            x: center_columns(&self.x),
            centered: true,
            truth: self.truth.clone(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn single_truth(&self) -> Option<&Labeling> {
        match &self.truth {
            Some(Truth::Single(l)) => Some(l),
            _ => None,
        }
    }

    pub fn multi_truth(&self) -> Option<&MultiLabeling> {
        match &self.truth {
            Some(Truth::Multi(m)) => Some(m),
            _ => None,
        }
    }
}

fn noise_column(n: usize, noise: &NoiseSpec, seed: u64, stream: u64) -> Vec<f64> {
    let mut rng = SeedStream::with_stream(seed, stream);
    (0..n).map(|_| noise.sample(&mut rng)).collect()
}

fn shuffled_signs(n: usize, n_pos: usize, seed: u64) -> Vec<f64> {
    let mut y = vec![1.0; n];
    for v in y.iter_mut().skip(n_pos) {
        *v = -1.0;
    }
    let mut rng = SeedStream::with_stream(seed, 0);
    rng.shuffle(&mut y);
    y
}

/// Balanced planted model: `X = [y, Z]` with `y^T 1 = 0` and the `d - 1`
/// noise columns drawn i.i.d. from `noise`. Returned uncentered; callers
/// center explicitly before solving.
pub fn gen_balanced(n: usize, d: usize, noise: &NoiseSpec, seed: u64) -> Result<Dataset> {
    if n % 2 != 0 {
        return Err(Error::InvalidArgument("balanced generator requires even n"));
    }
    if n < 2 || d < 1 {
        return Err(Error::InvalidArgument("need n >= 2 and d >= 1"));
    }
    let y = shuffled_signs(n, n / 2, seed);
    let mut x = Mat::zeros(n, d);
    for i in 0..n {
        x[(i, 0)] = y[i];
    }
    for j in 1..d {
        let col = noise_column(n, noise, seed, j as u64);
        for i in 0..n {
            x[(i, j)] = col[i];
        }
    }
    let truth = Labeling::from_signs(y)?;
    Dataset::new(
        x,
        false,
        Some(Truth::Single(truth)),
        format!("balanced(n={n},d={d},noise={},seed={seed})", noise.name()),
    )
}

/// Imbalanced planted model with target squared imbalance `alpha_star`.
/// The positive-class count is rounded to an integer and the realized alpha
/// recomputed exactly; the returned dataset is centered, `X = [Pi_n y, Z_c]`.
pub fn gen_unbalanced(
    n: usize,
    d: usize,
    alpha_star: f64,
    noise: &NoiseSpec,
    seed: u64,
) -> Result<Dataset> {
    if !(0.0..1.0).contains(&alpha_star) {
        return Err(Error::InvalidArgument("alpha_star must lie in [0, 1)"));
    }
    if n < 2 || d < 1 {
        return Err(Error::InvalidArgument("need n >= 2 and d >= 1"));
    }
    let n_pos = fmath::round(n as f64 * (1.0 + fmath::sqrt(alpha_star)) / 2.0) as usize;
    let n_pos = n_pos.min(n - 1).max(1);
    let y = shuffled_signs(n, n_pos, seed);
    let mut x = Mat::zeros(n, d);
    for i in 0..n {
        x[(i, 0)] = y[i];
    }
    for j in 1..d {
        let col = noise_column(n, noise, seed, j as u64);
        for i in 0..n {
            x[(i, j)] = col[i];
        }
    }
    let truth = Labeling::from_signs(y)?;
    Dataset::new(
        center_columns(&x),
        true,
        Some(Truth::Single(truth)),
        format!(
            "unbalanced(n={n},d={d},alpha_star={alpha_star},noise={},seed={seed})",
            noise.name()
        ),
    )
}

/// `l`-sparse planted model: an `l`-column clustered block `[y, Z_sig]`
/// rotated by a random orthogonal map inside the block, then `d - l` pure
/// noise columns. The planted direction stays supported on the first `l`
/// coordinates and satisfies `X v = y` exactly.
pub fn gen_sparse(
    n: usize,
    d: usize,
    l: usize,
    noise: &NoiseSpec,
    seed: u64,
) -> Result<(Dataset, Vec<f64>)> {
    if l < 1 || l > d {
        return Err(Error::InvalidArgument("sparsity l must satisfy 1 <= l <= d"));
    }
    if n % 2 != 0 {
        return Err(Error::InvalidArgument("sparse generator requires even n"));
    }
    let y = shuffled_signs(n, n / 2, seed);
    let mut x = Mat::zeros(n, d);
    // signal block, pre-rotation: column 0 is y, columns 1..l are noise
    let mut block = Mat::zeros(n, l);
    for i in 0..n {
        block[(i, 0)] = y[i];
    }
    for j in 1..l {
        let col = noise_column(n, noise, seed, j as u64);
        for i in 0..n {
            block[(i, j)] = col[i];
        }
    }
    let (rotated, v_block) = if l == 1 {
        (block, vec![1.0])
    } else {
        let rot = random_orthogonal(l, seed);
        // X_block = B R^T, so v = R e_1 gives X_block v = B e_1 = y
        (block.matmul(&rot.transpose()), rot.col(0))
    };
    for j in 0..l {
        for i in 0..n {
            x[(i, j)] = rotated[(i, j)];
        }
    }
    for j in l..d {
        let col = noise_column(n, noise, seed, j as u64);
        for i in 0..n {
            x[(i, j)] = col[i];
        }
    }
    let mut planted = vec![0.0; d];
    planted[..l].copy_from_slice(&v_block);
    let truth = Labeling::from_signs(y)?;
    let ds = Dataset::new(
        x,
        false,
        Some(Truth::Single(truth)),
        format!("sparse(n={n},d={d},l={l},noise={},seed={seed})", noise.name()),
    )?;
    Ok((ds, planted))
}

fn random_orthogonal(l: usize, seed: u64) -> Mat {
    // Gram-Schmidt on a Gaussian matrix; dedicated stream so the noise
    // columns are unaffected by the rotation draws.
    let mut rng = SeedStream::with_stream(seed, 0x524f54);
    loop {
        let g = Mat::from_fn(l, l, |_, _| rng.standard_normal());
        if let Some(q) = gram_schmidt(&g) {
            return q;
        }
    }
}

fn gram_schmidt(g: &Mat) -> Option<Mat> {
    let l = g.rows();
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(l);
    for j in 0..l {
        let mut v = g.col(j);
        for c in &cols {
            let p = crate::mat::dot(&v, c);
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= p * ci;
            }
        }
        let nrm = crate::mat::norm2(&v);
        if nrm < 1e-8 {
            return None;
        }
        for vi in &mut v {
            *vi /= nrm;
        }
        cols.push(v);
    }
    Some(Mat::from_fn(l, l, |i, j| cols[j][i]))
}

/// Multi-label planted model `X = [Pi_n y, Z_c]` (centered). The labels are
/// regenerated until `y` has full column rank and the family
/// `{1, y_i, y_i ⊙ y_j}` is linearly independent, the condition under which
/// the label matrix is identifiable from a relaxation solution; gives up
/// after a bounded number of retries.
pub fn gen_multilabel(
    n: usize,
    d: usize,
    k: usize,
    noise: &NoiseSpec,
    seed: u64,
) -> Result<Dataset> {
    if k < 1 || k >= d {
        return Err(Error::InvalidArgument("need 1 <= k < d"));
    }
    let family_size = 1 + k + k * (k - 1) / 2;
    if n < family_size {
        return Err(Error::IndependenceUnachievable { retries: 0 });
    }
    const MAX_RETRIES: usize = 64;
    for retry in 0..MAX_RETRIES {
        let mut rng = SeedStream::with_stream(seed, 0x4d4c_0000 + retry as u64);
        let y = Mat::from_fn(n, k, |_, _| rng.sign());
        if !labels_independent(&y) {
            continue;
        }
        let mut x = Mat::zeros(n, d);
        for j in 0..k {
            for i in 0..n {
                x[(i, j)] = y[(i, j)];
            }
        }
        for j in k..d {
            let col = noise_column(n, noise, seed, 1 + (j - k) as u64);
            for i in 0..n {
                x[(i, j)] = col[i];
            }
        }
        let truth = MultiLabeling::from_mat(y)?;
        return Dataset::new(
            center_columns(&x),
            true,
            Some(Truth::Multi(truth)),
            format!("multilabel(n={n},d={d},k={k},noise={},seed={seed})", noise.name()),
        );
    }
    Err(Error::IndependenceUnachievable { retries: MAX_RETRIES })
}

/// Rank check for `{1, y_i, y_i ⊙ y_j}` (implies full-rank `y`).
pub fn labels_independent(y: &Mat) -> bool {
    let n = y.rows();
    let k = y.cols();
    let fam = 1 + k + k * (k - 1) / 2;
    let mut f = Mat::zeros(n, fam);
    for i in 0..n {
        f[(i, 0)] = 1.0;
    }
    for j in 0..k {
        for i in 0..n {
            f[(i, 1 + j)] = y[(i, j)];
        }
    }
    let mut col = 1 + k;
    for a in 0..k {
        for b in (a + 1)..k {
            for i in 0..n {
                f[(i, col)] = y[(i, a)] * y[(i, b)];
            }
            col += 1;
        }
    }
    let gram = SymMatrix::symmetrized(f.gram());
    match crate::linalg::sym_eig(&gram) {
        Ok(dec) => {
            let max = dec.eigenvalues[0].max(0.0);
            crate::metrics::numerical_rank(&dec.eigenvalues, 1e-10) == fam && max > 0.0
        }
        Err(_) => false,
    }
}
