//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by constructors and operations.
///
/// Variants split into three groups so callers (in particular the CLI) can
/// map them to distinct exit paths: structural invariant violations of the
/// operator types, precondition violations of individual operations, and
/// internal numerical failures.
#[derive(Debug, Error)]
pub enum Error {
    // --- structural invariant violations -------------------------------
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error(
        "matrix is not Hermitian: max |M_ij - conj(M_ji)| = {deviation:.3e} exceeds {tol:.3e}"
    )]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("density matrix trace is {trace:.17} (must be 1 within {tol:.3e})")]
    NotUnitTrace { trace: f64, tol: f64 },

    #[error("density matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e} below -{tol:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64, tol: f64 },

    #[error("state vector norm is {norm:.17} (must be 1 within {tol:.3e})")]
    NotNormalized { norm: f64, tol: f64 },

    #[error("outcome probabilities sum to {total:.17}, outside tolerance {tol:.3e}")]
    ProbabilityNormalization { total: f64, tol: f64 },

    #[error(
        "outcome probability {value:.3e} at index {index} lies outside [0, 1] beyond tolerance"
    )]
    ProbabilityOutOfRange { index: usize, value: f64 },

    // --- operation precondition violations ------------------------------
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("observable trace has modulus {trace_norm:.3e} (must be traceless within {tol:.3e})")]
    NotTraceless { trace_norm: f64, tol: f64 },

    #[error("observable Frobenius norm is {norm:.17} (must be 1 within {tol:.3e})")]
    NotUnitFrobeniusNorm { norm: f64, tol: f64 },

    #[error("observable is zero after trace removal; it cannot be normalized")]
    ZeroObservable,

    #[error("coefficient vector has length {got}, basis needs {expected}")]
    CoefficientLength { got: usize, expected: usize },

    #[error("basis dimension must be at least 2, got {dim}")]
    BasisDimension { dim: usize },

    #[error("mixed_rank {rank} outside valid range 1..={dim}")]
    InvalidMixedRank { rank: usize, dim: usize },

    #[error("decomposition size {m} is below the state rank {rank}")]
    DecompositionTooSmall { m: usize, rank: usize },

    #[error("isometry parameter vector has length {got}, expected {expected}")]
    IsometryParameterLength { got: usize, expected: usize },

    #[error("isometry parameters produce a rank-deficient column set")]
    DegenerateIsometry,

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("invalid qubit Bloch parametrization: {reason}")]
    InvalidBloch { reason: String },

    // --- numerical failures ---------------------------------------------
    #[error("eigensolver failed to converge for a {dim}x{dim} matrix")]
    EigensolverFailure { dim: usize },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for violations of a type's structural invariants (malformed
    /// density matrices, non-Hermitian inputs, broken probability
    /// normalization).
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::EmptyMatrix
                | Error::NonFiniteEntry { .. }
                | Error::NotHermitian { .. }
                | Error::NotUnitTrace { .. }
                | Error::NotPositiveSemidefinite { .. }
                | Error::NotNormalized { .. }
                | Error::ProbabilityNormalization { .. }
                | Error::ProbabilityOutOfRange { .. }
        )
    }

    /// True for violations of an operation's preconditions (wrong
    /// dimensions, missing normalization, invalid sizes).
    pub fn is_precondition_violation(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::NotTraceless { .. }
                | Error::NotUnitFrobeniusNorm { .. }
                | Error::ZeroObservable
                | Error::CoefficientLength { .. }
                | Error::BasisDimension { .. }
                | Error::InvalidMixedRank { .. }
                | Error::DecompositionTooSmall { .. }
                | Error::IsometryParameterLength { .. }
                | Error::DegenerateIsometry
                | Error::ZeroShots
                | Error::InvalidBloch { .. }
        )
    }
}
