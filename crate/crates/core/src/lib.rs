//! Numerical toolkit for coherence lower bounds from observable/dephased
//! observable commutators.
//!
//! For a density matrix `rho` and a Hermitian observable `A`, the quantity
//! `(1/2) |<[A, A^D]>_rho|` (with `A^D` the diagonal part of `A` in the
//! reference basis) is a lower bound on the coherence of `rho`. This crate
//! computes that bound, compares it against the l1 coherence and a
//! convex-roof upper estimate, finds the observable maximizing the bound,
//! and simulates finite-shot measurements of the associated witness
//! operator.

pub mod basis;
pub mod bound;
pub mod coherence;
pub mod error;
pub mod linalg;
pub mod sampling;
pub mod shots;
pub mod tolerances;

pub use basis::{expand, generalized_gell_mann, project, BasisCoefficients, OperatorBasis};
pub use bound::{
    bound_check, commutator_expectation, diagonal_part_state, incoherent_part, optimal_observable,
    qubit_closed_form, witness_operator, BoundOptions, BoundReport, OptimalObservable, QubitBloch,
};
pub use coherence::{
    enumerate_decomposition, is_incoherent, is_incoherent_with, l1_matrix, l1_pure, roof_estimate,
    Decomposition, RoofBudget, RoofEstimate,
};
pub use error::{Error, Result};
pub use linalg::{
    commutator, expectation, frobenius_inner, spectral, variance, ComplexMatrix, DensityMatrix,
    HermitianOperator, PureState, SpectralDecomposition,
};
pub use sampling::{random_density, random_observable, random_pure, SamplerConfig};
pub use shots::{
    estimate_bound_from_shots, simulate_measurement, simulate_measurement_with, Outcome,
    ShotResult, Verdict,
};
pub use tolerances::Tolerances;

// Re-exported so downstream crates use the same linear-algebra types.
pub use nalgebra;
pub use num_complex;
