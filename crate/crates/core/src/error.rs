use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A correlation coefficient with |rho| >= 1 was supplied.
    #[error("invalid correlation coefficient: |rho| = {0} must be < 1")]
    InvalidCorrelation(f64),

    /// A matrix that must be Hermitian is not, within tolerance.
    #[error("matrix is not Hermitian: max |a[m,n] - conj(a[n,m])| = {residual:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    /// A matrix that must be positive (semi)definite has a too-negative eigenvalue.
    #[error("matrix is not positive semidefinite: min eigenvalue {0:.3e}")]
    NotPositiveSemidefinite(f64),

    /// A covariance matrix is singular or too ill-conditioned for precoding.
    #[error("covariance matrix is numerically singular: min/max eigenvalue ratio {0:.3e}")]
    NearSingular(f64),

    /// An iteration failed to converge within its sweep/iteration budget.
    #[error("{what} did not converge within {limit} iterations")]
    Convergence { what: &'static str, limit: usize },

    /// Root bracketing failed; the offending interval is reported.
    #[error("root bracketing failed on ({lo}, {hi}): expected {expected} roots, found {found}")]
    Bracketing {
        lo: f64,
        hi: f64,
        expected: usize,
        found: usize,
    },

    /// Mismatched or otherwise invalid dimensions.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A matrix that must be invertible is rank deficient.
    #[error("rank error: {0}")]
    Rank(String),

    /// A power spectral density evaluated to a nonpositive value.
    #[error("nonpositive spectral density: s({omega}) = {value:.3e}")]
    NonpositivePsd { omega: f64, value: f64 },

    /// A constellation order unsupported by the requested kind.
    #[error("invalid constellation order: {0}")]
    InvalidOrder(String),
}

pub type Result<T> = std::result::Result<T, Error>;
