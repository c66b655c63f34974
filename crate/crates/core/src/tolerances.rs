//! Numerical tolerances used across the crate.
//!
//! Every comparison against an "exact" structural property (hermiticity,
//! unit trace, positive semidefiniteness, unit norm) goes through one of
//! these constants so the thresholds live in a single place. Constructors
//! accept a [`Tolerances`] value for callers that need looser or tighter
//! validation than the defaults.

/// Maximum allowed deviation `max_ij |M_ij - conj(M_ji)|` for a matrix
/// accepted as Hermitian. Inputs within this tolerance are symmetrized to
/// `(M + M^dagger)/2`; inputs beyond it are rejected.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Maximum allowed deviation of `tr(rho)` from 1 for a density matrix.
pub const TRACE_TOL: f64 = 1e-9;

/// Most negative eigenvalue accepted when checking positive
/// semidefiniteness. The check runs on the full spectrum, never through a
/// Cholesky factorization, so indefinite inputs produce a clear error.
pub const PSD_TOL: f64 = 1e-9;

/// Maximum allowed deviation of a state vector's 2-norm from 1.
pub const NORM_TOL: f64 = 1e-10;

/// Default threshold on off-diagonal moduli below which a density matrix
/// counts as incoherent (diagonal in the reference basis).
pub const INCOHERENT_TOL: f64 = 1e-12;

/// Trace tolerance for observables required to be traceless.
pub const TRACELESS_TOL: f64 = 1e-9;

/// Allowed deviation of an observable's Frobenius norm from 1 where unit
/// normalization is a precondition.
pub const UNIT_NORM_TOL: f64 = 1e-9;

/// Eigenvalues of a density matrix below this value are treated as zero
/// when extracting the rank for decomposition searches.
pub const RANK_TRUNCATION_TOL: f64 = 1e-12;

/// Eigenvalues of a measured observable closer than this are merged into
/// one projective outcome.
pub const EIGENVALUE_CLUSTER_TOL: f64 = 1e-9;

/// Allowed deviation of a simulated outcome distribution's total
/// probability from 1 before renormalization.
pub const PROBABILITY_TOL: f64 = 1e-9;

/// Validation thresholds applied when constructing operator types.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// See [`HERMITICITY_TOL`].
    pub hermiticity: f64,
    /// See [`TRACE_TOL`].
    pub trace: f64,
    /// See [`PSD_TOL`].
    pub psd: f64,
    /// See [`NORM_TOL`].
    pub norm: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hermiticity: HERMITICITY_TOL,
            trace: TRACE_TOL,
            psd: PSD_TOL,
            norm: NORM_TOL,
        }
    }
}
