//! Crate-wide error type and result alias.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
///
/// Variants split along the CLI's exit-code contract: `Invalid`, `Dimension`,
/// `Parse` and `Io` are usage/validation failures (exit 1), while
/// `EigenFailed`, `Overflow`, `Diverged` and `DegenerateRank` are numerical
/// failures (exit 3).
#[derive(Debug, Error)]
pub enum Error {
    /// Input violates a documented precondition.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Arguments have inconsistent dimensions.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// The iterative symmetric eigensolver failed to converge.
    #[error("eigendecomposition of a {n}x{n} matrix did not converge")]
    EigenFailed {
        /// Dimension of the offending matrix.
        n: usize,
    },

    /// A scalar function of the spectrum left the representable f64 range.
    #[error("{func}({eigenvalue}) overflows f64; spectrum out of range")]
    Overflow {
        /// Name of the spectral function being evaluated.
        func: &'static str,
        /// The eigenvalue at which evaluation overflowed.
        eigenvalue: f64,
    },

    /// A diffusion run blew past the divergence guard.
    #[error("diffusion diverged at step {t} (max-norm {norm:.3e} exceeds 1e12)")]
    Diverged {
        /// Last step with a finite state.
        t: usize,
        /// Max-norm of the state at that step.
        norm: f64,
    },

    /// An indicator that divides by the low spectrum hit a numerically zero
    /// eigenvalue (rank-deficient correlation matrix).
    #[error("degenerate rank: eigenvalue[{index}] = {value:.6e} is numerically zero")]
    DegenerateRank {
        /// Index of the offending eigenvalue (descending order).
        index: usize,
        /// Its value.
        value: f64,
    },

    /// Malformed CSV, config file, or flag value.
    #[error("parse error: {0}")]
    Parse(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Whether this error is a numerical failure (CLI exit code 3) as
    /// opposed to a usage/validation failure (exit code 1).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::EigenFailed { .. }
                | Error::Overflow { .. }
                | Error::Diverged { .. }
                | Error::DegenerateRank { .. }
        )
    }
}
