//! The coherence lower bound `(1/2) |<[A, A^D]>_rho|` and its optimization.
//!
//! `A^D` denotes the diagonal (incoherent) part of the observable `A` in the
//! reference basis. For any state the modulus of the commutator expectation
//! is bounded by twice the coherence of the state, so half the modulus acts
//! as a measurable coherence lower bound. [`bound_check`] evaluates the
//! bound against the l1 coherence, [`optimal_observable`] maximizes it over
//! traceless unit-norm observables, and [`witness_operator`] packages the
//! Hermitian witness `W = i[A, A^D]` whose expectation value is directly
//! measurable.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::basis::{generalized_gell_mann, project, BasisCoefficients, OperatorBasis};
use crate::coherence::{l1_matrix, roof_estimate, RoofBudget};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, HermitianOperator, PureState};
use crate::tolerances::{TRACELESS_TOL, UNIT_NORM_TOL};

/// Bloch parametrization of a qubit pure state and a measurement direction:
/// `|psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>` and the observable
/// direction `n` on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitBloch {
    theta: f64,
    phi: f64,
    n: [f64; 3],
}

impl QubitBloch {
    /// Requires `theta` in `[0, pi]`, `phi` in `[0, 2*pi)` and unit `n`.
    pub fn new(theta: f64, phi: f64, n: [f64; 3]) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidBloch {
                reason: format!("theta = {theta} outside [0, pi]"),
            });
        }
        if !(0.0..std::f64::consts::TAU).contains(&phi) {
            return Err(Error::InvalidBloch {
                reason: format!("phi = {phi} outside [0, 2*pi)"),
            });
        }
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidBloch {
                reason: format!("|n| = {norm}, expected a unit vector"),
            });
        }
        Ok(QubitBloch { theta, phi, n })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn n(&self) -> [f64; 3] {
        self.n
    }

    /// The pure state `|psi(theta, phi)>`.
    pub fn state(&self) -> PureState {
        let amps = nalgebra::DVector::from_vec(vec![
            Complex64::new((self.theta / 2.0).cos(), 0.0),
            Complex64::from_polar((self.theta / 2.0).sin(), self.phi),
        ]);
        PureState::normalized(amps).expect("Bloch amplitudes have unit norm")
    }

    /// The observable `sigma . n` with off-diagonal phase convention
    /// `<0|A|1> = n_x + i n_y` (Frobenius norm `sqrt(2)`).
    pub fn observable(&self) -> HermitianOperator {
        let [nx, ny, nz] = self.n;
        HermitianOperator::from_dmatrix(DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(nz, 0.0),
                Complex64::new(nx, ny),
                Complex64::new(nx, -ny),
                Complex64::new(-nz, 0.0),
            ],
        ))
        .expect("sigma . n is Hermitian")
    }
}

/// Diagonal restriction of a state: off-diagonal entries zeroed.
pub fn diagonal_part_state(rho: &DensityMatrix) -> DensityMatrix {
    let d = rho.dim();
    let m = DMatrix::from_fn(d, d, |i, j| {
        if i == j {
            rho.entry(i, i)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    // The diagonal of a valid density matrix is a probability vector, so
    // the invariants hold by construction.
    DensityMatrix::from_validated(ComplexMatrix::new(m).expect("entries are finite"))
}

/// Diagonal (incoherent) part `A^D` of an observable.
pub fn incoherent_part(a: &HermitianOperator) -> HermitianOperator {
    let d = a.dim();
    let m = DMatrix::from_fn(d, d, |i, j| {
        if i == j {
            a.entry(i, i)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    HermitianOperator::from_dmatrix(m).expect("diagonal of Hermitian is Hermitian")
}

/// `(1/2) <[A, A^D]>_rho` evaluated entrywise:
/// `(1/2) sum_{j != k} rho_kj A_jk (A_kk - A_jj)`.
///
/// The result is purely imaginary up to rounding. The entrywise form avoids
/// the two matrix products of the definition; both paths agree to 1e-11.
pub fn commutator_expectation(a: &HermitianOperator, rho: &DensityMatrix) -> Result<Complex64> {
    if a.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: rho.dim(),
        });
    }
    let d = a.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..d {
        let ajj = a.entry(j, j).re;
        for k in 0..d {
            if j != k {
                let diff = a.entry(k, k).re - ajj;
                acc += rho.entry(k, j) * a.entry(j, k) * diff;
            }
        }
    }
    Ok(acc * 0.5)
}

/// Closed form of `Im((1/2) <[sigma.n, (sigma.n)^D]>)` on the Bloch state:
/// `-n_z sin(theta) (n_x sin(phi) + n_y cos(phi))`.
pub fn qubit_closed_form(b: &QubitBloch) -> f64 {
    let [nx, ny, nz] = b.n();
    -nz * b.theta().sin() * (nx * b.phi().sin() + ny * b.phi().cos())
}

/// Options for [`bound_check`].
#[derive(Debug, Clone, Default)]
pub struct BoundOptions {
    /// Project out the trace and rescale to unit Frobenius norm instead of
    /// rejecting observables that violate the preconditions.
    pub auto_normalize: bool,
    /// Run the convex-roof search and report its value.
    pub roof: Option<RoofBudget>,
}

/// Outcome of evaluating the bound for one `(A, rho)` pair.
#[derive(Debug, Clone)]
pub struct BoundReport {
    /// `(1/2) |<[A, A^D]>_rho|`.
    pub lhs: f64,
    /// l1 coherence of the state.
    pub c_l1: f64,
    /// Convex-roof upper estimate, when requested.
    pub roof_upper: Option<f64>,
    /// `c_l1 - lhs`.
    pub margin: f64,
    /// Coefficients of the (possibly normalized) observable in the
    /// generalized Gell-Mann basis.
    pub observable_coeffs: BasisCoefficients,
    /// True when auto-normalization modified the observable.
    pub normalized: bool,
}

/// Evaluates the coherence lower bound of `rho` witnessed by `a` and
/// compares it with the l1 coherence (and optionally the convex roof).
///
/// Preconditions: `a` traceless within [`TRACELESS_TOL`] and unit Frobenius
/// norm within [`UNIT_NORM_TOL`], unless `options.auto_normalize` is set.
pub fn bound_check(
    a: &HermitianOperator,
    rho: &DensityMatrix,
    options: &BoundOptions,
) -> Result<BoundReport> {
    if a.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: rho.dim(),
        });
    }
    let d = a.dim();
    let mut working = a.clone();
    let mut normalized = false;

    let trace = working.trace_re();
    if trace.abs() > TRACELESS_TOL {
        if !options.auto_normalize {
            return Err(Error::NotTraceless {
                trace_norm: trace.abs(),
                tol: TRACELESS_TOL,
            });
        }
        let shift = Complex64::new(trace / d as f64, 0.0);
        let mut m = working.dmatrix().clone();
        for i in 0..d {
            m[(i, i)] -= shift;
        }
        working = HermitianOperator::from_dmatrix(m)?;
        normalized = true;
    }

    let norm = working.frobenius_norm();
    if (norm - 1.0).abs() > UNIT_NORM_TOL {
        if !options.auto_normalize {
            return Err(Error::NotUnitFrobeniusNorm {
                norm,
                tol: UNIT_NORM_TOL,
            });
        }
        if norm < 1e-14 {
            return Err(Error::ZeroObservable);
        }
        working = HermitianOperator::from_dmatrix(working.dmatrix().scale(1.0 / norm))?;
        normalized = true;
    }

    let lhs = commutator_expectation(&working, rho)?.norm();
    let c_l1 = l1_matrix(rho);
    let roof_upper = match &options.roof {
        Some(budget) => Some(roof_estimate(rho, budget)?.value),
        None => None,
    };
    let basis = generalized_gell_mann(d)?;
    let observable_coeffs = project(&working, &basis)?;

    Ok(BoundReport {
        lhs,
        c_l1,
        roof_upper,
        margin: c_l1 - lhs,
        observable_coeffs,
        normalized,
    })
}

/// Observable maximizing the bound for a fixed state.
#[derive(Debug, Clone)]
pub struct OptimalObservable {
    /// Unit coefficient vector of the maximizer in the given basis.
    pub coefficients: BasisCoefficients,
    /// The achieved bound `(1/2) |<[A*, A*^D]>_rho|`.
    pub lhs: f64,
}

/// Maximizes `(1/2) |<[A, A^D]>_rho|` over traceless unit-Frobenius-norm
/// observables.
///
/// Writing `A = sum_mu a_mu H_mu`, the commutator expectation is the
/// quadratic form `i a^T S a` with the real symmetric matrix
/// `S_{mu nu} = (q_{mu nu} + q_{nu mu}) / 2`,
/// `q_{mu nu} = Im tr(rho [H_mu, H_nu^D])`. The maximizer is the eigenvector
/// of the eigenvalue of largest magnitude; ties resolve to the smallest
/// index in ascending eigenvalue order and the eigenvector sign makes the
/// first nonzero component positive.
pub fn optimal_observable(rho: &DensityMatrix, basis: &OperatorBasis) -> Result<OptimalObservable> {
    if rho.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: basis.dim(),
        });
    }
    let d = rho.dim();
    let n = basis.len();

    // w_mu(t) = sum_j Im(rho_tj (H_mu)_jt) - sum_k Im(rho_kt (H_mu)_tk)
    // collapses q_{mu nu} = sum_t (H_nu)_tt w_mu(t).
    let mut w = vec![vec![0.0f64; d]; n];
    for (mu, h) in basis.elements().iter().enumerate() {
        for j in 0..d {
            for k in 0..d {
                let m = (rho.entry(k, j) * h.entry(j, k)).im;
                w[mu][k] += m;
                w[mu][j] -= m;
            }
        }
    }
    let mut q = DMatrix::<f64>::zeros(n, n);
    for nu in 0..n {
        let hv = basis.element(nu);
        for mu in 0..n {
            let acc: f64 = w[mu]
                .iter()
                .enumerate()
                .map(|(t, wt)| hv.entry(t, t).re * wt)
                .sum();
            q[(mu, nu)] = acc;
        }
    }
    let s = (&q + q.transpose()).scale(0.5);

    let eig = s
        .try_symmetric_eigen(f64::EPSILON, 100_000)
        .ok_or(Error::EigensolverFailure { dim: n })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut pick = order[0];
    let mut best_mag = eig.eigenvalues[pick].abs();
    for &idx in &order[1..] {
        let mag = eig.eigenvalues[idx].abs();
        if mag > best_mag {
            best_mag = mag;
            pick = idx;
        }
    }

    let mut a_star: Vec<f64> = eig.eigenvectors.column(pick).iter().copied().collect();
    let norm = a_star.iter().map(|x| x * x).sum::<f64>().sqrt();
    a_star.iter_mut().for_each(|x| *x /= norm);
    if let Some(first) = a_star.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            a_star.iter_mut().for_each(|x| *x = -*x);
        }
    }

    Ok(OptimalObservable {
        coefficients: BasisCoefficients::new(d, a_star)?,
        lhs: 0.5 * best_mag,
    })
}

/// Hermitian witness `W = i [A, A^D]`; its expectation value satisfies
/// `|<W>_rho| = 2 * |commutator_expectation(A, rho)|`.
pub fn witness_operator(a: &HermitianOperator) -> Result<HermitianOperator> {
    let comm = crate::linalg::commutator(a, &incoherent_part(a))?;
    let i = Complex64::new(0.0, 1.0);
    let m = comm.dmatrix().map(|z| i * z);
    HermitianOperator::from_dmatrix(m)
}
