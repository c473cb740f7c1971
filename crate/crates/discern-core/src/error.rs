use alloc::string::String;
use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// Symmetry violated beyond the construction tolerance.
    Asymmetric { max_relative_deviation: f64 },
    /// A matrix entry was NaN or infinite.
    NonFinite,
    /// Operand shapes do not line up.
    DimensionMismatch { expected: usize, got: usize },
    /// The Jacobi eigensolver did not converge.
    EigNonConvergence { sweeps: usize },
    /// Matrix is not (sufficiently) positive definite; carries the
    /// offending eigenvalue and the largest one for scale.
    NotPositiveDefinite { min_eigenvalue: f64, max_eigenvalue: f64 },
    /// The Gram matrix `X^T X / n + Diag(a)^2` is singular.
    GramSingular { min_eigenvalue: f64, max_eigenvalue: f64 },
    /// A scalar argument left its admissible range.
    InvalidArgument(&'static str),
    /// Dual iterate left the domain (some `u_i <= 0`).
    DualDomain { index: usize, value: f64 },
    /// Objective became NaN/Inf during the solve.
    Diverged { iteration: usize, detail: String },
    /// No usable spectral signal (top eigenvalue below tolerance).
    NoSignal { top_eigenvalue: f64 },
    /// The projected data is constant; rounding is meaningless.
    ConstantProjection,
    /// All diagonal entries of `X V X^T` vanish.
    ZeroDiagonal,
    /// Exhaustive enumeration refused for this problem size.
    TooLargeForEnumeration { n: usize, max: usize },
    /// Multi-label generator could not reach an independent label family.
    IndependenceUnachievable { retries: usize },
    /// Vectors compared elementwise must have equal length.
    LengthMismatch { left: usize, right: usize },
    /// A matrix is rank deficient beyond what the ridge fallback covers.
    RankDeficient { min_eigenvalue: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows} x {cols}")
            }
            Error::Asymmetric { max_relative_deviation } => write!(
                f,
                "matrix asymmetry {max_relative_deviation:.3e} exceeds the 1e-12 relative tolerance"
            ),
            Error::NonFinite => write!(f, "matrix has NaN or infinite entries"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::EigNonConvergence { sweeps } => {
                write!(f, "Jacobi eigensolver did not converge after {sweeps} sweeps")
            }
            Error::NotPositiveDefinite { min_eigenvalue, max_eigenvalue } => write!(
                f,
                "matrix is not positive definite: eigenvalue {min_eigenvalue:.3e} (largest {max_eigenvalue:.3e})"
            ),
            Error::GramSingular { min_eigenvalue, max_eigenvalue } => write!(
                f,
                "Gram matrix is singular (eigenvalues in [{min_eigenvalue:.3e}, {max_eigenvalue:.3e}]); set a nonzero quadratic weight `a`"
            ),
            Error::InvalidArgument(msg) => write!(f, "{msg}"),
            Error::DualDomain { index, value } => {
                write!(f, "dual iterate left the domain: u[{index}] = {value:.3e} <= 0")
            }
            Error::Diverged { iteration, detail } => {
                write!(f, "solve diverged at iteration {iteration}: {detail}")
            }
            Error::NoSignal { top_eigenvalue } => {
                write!(f, "no spectral signal: top eigenvalue {top_eigenvalue:.3e}")
            }
            Error::ConstantProjection => write!(f, "projected data is constant"),
            Error::ZeroDiagonal => write!(f, "diag(X V X^T) is identically zero"),
            Error::TooLargeForEnumeration { n, max } => {
                write!(f, "exhaustive enumeration refused: n = {n} > {max}")
            }
            Error::IndependenceUnachievable { retries } => write!(
                f,
                "label family still linearly dependent after {retries} regenerations (n too small?)"
            ),
            Error::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            Error::RankDeficient { min_eigenvalue } => write!(
                f,
                "rank deficient beyond the ridge fallback (eigenvalue {min_eigenvalue:.3e})"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
