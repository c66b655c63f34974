//! Coherence measures in the fixed reference basis.
//!
//! For pure states the l1 coherence has the closed form
//! `(sum_j |c_j|)^2 - 1`. For mixed states [`l1_matrix`] sums off-diagonal
//! moduli, and [`roof_estimate`] searches over pure-state decompositions of
//! `rho` for the smallest average pure-state coherence. The search returns a
//! certified upper bound on the convex roof: the reported value is achieved
//! by the returned decomposition.
//!
//! Decompositions are parametrized through the spectral decomposition
//! `rho = sum_k lambda_k |e_k><e_k|` (eigenvalues below
//! `RANK_TRUNCATION_TOL` dropped, descending order): an `m x r` matrix `V`
//! with orthonormal columns defines unnormalized states
//! `|psi_i~> = sum_k V_ik sqrt(lambda_k) |e_k>`, weights `p_i = <psi_i~|psi_i~>`.
//! Every such `V` reproduces `rho` exactly, so the search space is exactly
//! the set of valid size-`m` decompositions.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{spectral, ComplexMatrix, DensityMatrix, PureState};
use crate::sampling::derive_seed;
use crate::tolerances::{INCOHERENT_TOL, RANK_TRUNCATION_TOL};

/// True when every off-diagonal entry of `rho` has modulus at most
/// [`INCOHERENT_TOL`].
pub fn is_incoherent(rho: &DensityMatrix) -> bool {
    is_incoherent_with(rho, INCOHERENT_TOL)
}

/// [`is_incoherent`] with an explicit threshold.
pub fn is_incoherent_with(rho: &DensityMatrix, tol: f64) -> bool {
    let d = rho.dim();
    for i in 0..d {
        for j in 0..d {
            if i != j && rho.entry(i, j).norm() > tol {
                return false;
            }
        }
    }
    true
}

/// l1 coherence of a pure state: `(sum_j |c_j|)^2 - 1`, clamped at 0.
pub fn l1_pure(psi: &PureState) -> f64 {
    let sum: f64 = psi.amplitudes().iter().map(|c| c.norm()).sum();
    (sum * sum - 1.0).max(0.0)
}

/// Sum of off-diagonal moduli of `rho`.
pub fn l1_matrix(rho: &DensityMatrix) -> f64 {
    let d = rho.dim();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                acc += rho.entry(i, j).norm();
            }
        }
    }
    acc
}

/// Pure-state decomposition `rho = sum_i p_i |psi_i><psi_i|`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    weights: Vec<f64>,
    states: Vec<PureState>,
}

impl Decomposition {
    /// Validates matching lengths, nonnegative weights summing to 1 within
    /// 1e-10, and uniform state dimension.
    pub fn new(weights: Vec<f64>, states: Vec<PureState>) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::CoefficientLength {
                got: weights.len(),
                expected: states.len().max(1),
            });
        }
        let dim = states[0].dim();
        for s in &states {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: s.dim(),
                    right: dim,
                });
            }
        }
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|&w| w < -1e-12) || (total - 1.0).abs() > 1e-10 {
            return Err(Error::ProbabilityNormalization { total, tol: 1e-10 });
        }
        Ok(Decomposition { weights, states })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    /// `sum_i p_i * l1_pure(psi_i)`.
    pub fn average_coherence(&self) -> f64 {
        self.weights
            .iter()
            .zip(&self.states)
            .map(|(p, psi)| p * l1_pure(psi))
            .sum()
    }

    /// `sum_i p_i |psi_i><psi_i|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = self.states[0].dim();
        let mut acc = DMatrix::<Complex64>::zeros(d, d);
        for (p, psi) in self.weights.iter().zip(&self.states) {
            let v = psi.amplitudes();
            acc += (v * v.adjoint()).scale(*p);
        }
        ComplexMatrix::new(acc).expect("finite by construction")
    }

    /// Largest entrywise deviation of the reconstruction from `target`.
    pub fn reconstruction_error(&self, target: &DensityMatrix) -> f64 {
        let rebuilt = self.reconstruct();
        let mut worst = 0.0f64;
        for (a, b) in rebuilt.dmatrix().iter().zip(target.dmatrix().iter()) {
            worst = worst.max((a - b).norm());
        }
        worst
    }
}

/// Eigenstructure of `rho` shared by all decomposition evaluations:
/// `b = E * diag(sqrt(lambda))` for the kept (descending) eigenpairs.
struct DecompositionFrame {
    b: DMatrix<Complex64>,
    rank: usize,
    total_weight: f64,
}

impl DecompositionFrame {
    fn build(rho: &DensityMatrix) -> Result<Self> {
        let spec = spectral(&rho.to_hermitian())?;
        let d = rho.dim();
        let kept: Vec<usize> = (0..d)
            .rev()
            .filter(|&k| spec.eigenvalues()[k] > RANK_TRUNCATION_TOL)
            .collect();
        let rank = kept.len();
        let mut b = DMatrix::<Complex64>::zeros(d, rank);
        let mut total_weight = 0.0;
        for (col, &k) in kept.iter().enumerate() {
            let lambda = spec.eigenvalues()[k];
            total_weight += lambda;
            let scaled = spec.eigenvectors().column(k) * Complex64::new(lambda.sqrt(), 0.0);
            b.set_column(col, &scaled);
        }
        Ok(DecompositionFrame {
            b,
            rank,
            total_weight,
        })
    }

    /// Average l1 coherence of the decomposition induced by `v`
    /// (orthonormal columns, `m x rank`):
    /// `(1/T) sum_i (sum_j |(B V^T)_{ji}|)^2 - 1`.
    fn objective(&self, v: &DMatrix<Complex64>) -> f64 {
        let states = &self.b * v.transpose();
        let mut acc = 0.0;
        for i in 0..states.ncols() {
            let sum_abs: f64 = states.column(i).iter().map(|z| z.norm()).sum();
            acc += sum_abs * sum_abs;
        }
        (acc / self.total_weight - 1.0).max(0.0)
    }

    /// Materializes the decomposition for `v`, dropping zero-weight members
    /// and renormalizing the weights.
    fn materialize(&self, v: &DMatrix<Complex64>) -> Result<Decomposition> {
        let states_matrix = &self.b * v.transpose();
        let mut weights = Vec::new();
        let mut states = Vec::new();
        for i in 0..states_matrix.ncols() {
            let col: DVector<Complex64> = states_matrix.column(i).into_owned();
            let p = col.norm_squared();
            if p > 1e-14 {
                weights.push(p);
                states.push(PureState::normalized(col)?);
            }
        }
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        Decomposition::new(weights, states)
    }
}

/// Orthonormalizes the columns of `g` (modified Gram-Schmidt with
/// reorthogonalization). Fails on rank-deficient input.
fn orthonormal_columns(g: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let mut v = g.clone();
    let cols = v.ncols();
    for k in 0..cols {
        for _pass in 0..2 {
            for j in 0..k {
                let proj: Complex64 = (v.column(j).adjoint() * v.column(k))[(0, 0)];
                let prev = v.column(j).into_owned();
                let mut col = v.column_mut(k);
                col.zip_apply(&prev, |c, p| *c -= proj * p);
            }
        }
        let norm = v.column(k).norm();
        if norm < 1e-12 {
            return Err(Error::DegenerateIsometry);
        }
        v.column_mut(k).unscale_mut(norm);
    }
    Ok(v)
}

fn complex_from_params(params: &[f64], m: usize, r: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(m, r, |i, k| {
        let base = 2 * (i * r + k);
        Complex64::new(params[base], params[base + 1])
    })
}

/// Builds the size-`m` decomposition of `rho` encoded by `isometry_params`.
///
/// The parameter vector holds the real and imaginary parts of an `m x r`
/// complex matrix in row-major order (`2 * m * r` values, `r` the rank of
/// `rho`); its columns are orthonormalized to produce `V`.
pub fn enumerate_decomposition(
    rho: &DensityMatrix,
    isometry_params: &[f64],
    m: usize,
) -> Result<Decomposition> {
    let frame = DecompositionFrame::build(rho)?;
    if m < frame.rank {
        return Err(Error::DecompositionTooSmall {
            m,
            rank: frame.rank,
        });
    }
    let expected = 2 * m * frame.rank;
    if isometry_params.len() != expected {
        return Err(Error::IsometryParameterLength {
            got: isometry_params.len(),
            expected,
        });
    }
    let g = complex_from_params(isometry_params, m, frame.rank);
    let v = orthonormal_columns(&g)?;
    frame.materialize(&v)
}

/// Search budget for [`roof_estimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoofBudget {
    /// Independent random restarts; each uses its own derived PRNG stream,
    /// so increasing the count extends (never reshuffles) the search.
    pub restarts: usize,
    /// Local refinement steps per restart.
    pub iterations: usize,
    pub seed: u64,
}

impl Default for RoofBudget {
    fn default() -> Self {
        RoofBudget {
            restarts: 50,
            iterations: 500,
            seed: 0,
        }
    }
}

/// Result of the convex-roof search: an upper bound on the roof coherence,
/// achieved by `best_decomposition`.
#[derive(Debug, Clone)]
pub struct RoofEstimate {
    /// Smallest average coherence found.
    pub value: f64,
    /// Decomposition achieving `value`.
    pub best_decomposition: Decomposition,
    /// True when the second half of the restart schedule brought no
    /// improvement beyond 1e-12; a heuristic \"more budget would likely not
    /// help\" signal, not a certificate.
    pub converged: bool,
}

/// Stochastic multi-start upper bound on the convex-roof coherence of `rho`.
///
/// Decomposition sizes `m` cycle over `rank ..= min(d^2, 2d)` across
/// restarts. Each restart draws a random parameter vector and hill-climbs by
/// single-coordinate Gaussian perturbations with a shrinking step size,
/// accepting only improvements. The eigendecomposition itself is always
/// included as a candidate, so the result never exceeds
/// `sum_k lambda_k l1_pure(e_k)`. For a fixed seed the result is
/// deterministic and monotone non-increasing in either budget component.
pub fn roof_estimate(rho: &DensityMatrix, budget: &RoofBudget) -> Result<RoofEstimate> {
    let frame = DecompositionFrame::build(rho)?;
    let r = frame.rank;
    let d = rho.dim();

    // Baseline: V = I_r, the eigendecomposition itself.
    let identity_v = DMatrix::<Complex64>::identity(r, r);
    let mut best_value = frame.objective(&identity_v);
    let mut best_v = identity_v;
    let mut halfway_value = best_value;

    let m_max = (d * d).min(2 * d).max(r);
    let m_span = m_max - r + 1;
    let halfway = budget.restarts.div_ceil(2);

    for restart in 0..budget.restarts {
        let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(budget.seed, restart as u64));
        let m = r + restart % m_span;
        let len = 2 * m * r;
        let mut params: Vec<f64> = (0..len).map(|_| rng.sample(StandardNormal)).collect();

        let mut current = match evaluate(&frame, &params, m, r) {
            Some(f) => f,
            None => continue,
        };
        let mut step = 0.7f64;
        let mut rejects = 0u32;
        for _ in 0..budget.iterations {
            let idx = rng.random_range(0..len);
            let delta: f64 = rng.sample::<f64, _>(StandardNormal) * step;
            let saved = params[idx];
            params[idx] += delta;
            match evaluate(&frame, &params, m, r) {
                Some(f) if f < current => {
                    current = f;
                    rejects = 0;
                }
                _ => {
                    params[idx] = saved;
                    rejects += 1;
                    if rejects >= 25 {
                        step = (step * 0.5).max(1e-9);
                        rejects = 0;
                    }
                }
            }
        }

        if current < best_value {
            best_value = current;
            let g = complex_from_params(&params, m, r);
            best_v = orthonormal_columns(&g).expect("accepted candidate was evaluated");
        }
        if restart + 1 == halfway {
            halfway_value = best_value;
        }
    }

    let best_decomposition = frame.materialize(&best_v)?;
    let converged = halfway_value - best_value <= 1e-12;
    Ok(RoofEstimate {
        value: best_value,
        best_decomposition,
        converged,
    })
}

fn evaluate(frame: &DecompositionFrame, params: &[f64], m: usize, r: usize) -> Option<f64> {
    let g = complex_from_params(params, m, r);
    let v = orthonormal_columns(&g).ok()?;
    Some(frame.objective(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ket_plus() -> PureState {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        PureState::new(DVector::from_vec(vec![c(s, 0.0), c(s, 0.0)])).unwrap()
    }

    fn diag_density(p: &[f64]) -> DensityMatrix {
        let d = p.len();
        let m = DMatrix::from_fn(d, d, |i, j| if i == j { c(p[i], 0.0) } else { c(0.0, 0.0) });
        DensityMatrix::from_dmatrix(m).unwrap()
    }

    #[test]
    fn incoherence_detection() {
        assert!(is_incoherent(&diag_density(&[0.3, 0.7])));
        assert!(!is_incoherent(&ket_plus().density()));
        assert!(is_incoherent(&DensityMatrix::maximally_mixed(4)));
    }

    #[test]
    fn l1_pure_matches_closed_forms() {
        assert!(l1_pure(&PureState::basis_state(3, 0)) < 1e-15);

        // Qubit |psi(theta, phi)>: l1 = sin(theta).
        let cases: [(f64, f64); 3] = [(0.3, 1.1), (1.2, 4.0), (2.8, 0.2)];
        for &(theta, phi) in &cases {
            let psi = PureState::new(DVector::from_vec(vec![
                c((theta / 2.0).cos(), 0.0),
                Complex64::from_polar((theta / 2.0).sin(), phi),
            ]))
            .unwrap();
            assert!((l1_pure(&psi) - theta.sin()).abs() < 1e-12);
        }

        let uniform = PureState::new(DVector::from_element(3, c(1.0 / 3f64.sqrt(), 0.0))).unwrap();
        assert!((l1_pure(&uniform) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn l1_pure_agrees_with_pairwise_sum() {
        // Independent oracle: sum_{k != j} |c_j* c_k|.
        let amps = vec![c(0.5, 0.1), c(-0.3, 0.4), c(0.2, -0.2), c(0.1, 0.6)];
        let psi = PureState::normalized(DVector::from_vec(amps)).unwrap();
        let mut pairwise = 0.0;
        for j in 0..4 {
            for k in 0..4 {
                if j != k {
                    pairwise += (psi.amplitude(j).conj() * psi.amplitude(k)).norm();
                }
            }
        }
        assert!((l1_pure(&psi) - pairwise).abs() < 1e-12);
    }

    #[test]
    fn l1_pure_is_bounded_by_dim_minus_one() {
        let uniform = PureState::new(DVector::from_element(5, c(1.0 / 5f64.sqrt(), 0.0))).unwrap();
        assert!((l1_pure(&uniform) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn l1_matrix_matches_known_values() {
        assert!(l1_matrix(&diag_density(&[0.25, 0.25, 0.5])) < 1e-15);
        assert!((l1_matrix(&ket_plus().density()) - 1.0).abs() < 1e-14);

        // Equal mixture of |+><+| and |0><0|: off-diagonals 1/4.
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[c(0.75, 0.0), c(0.25, 0.0), c(0.25, 0.0), c(0.25, 0.0)],
        );
        let rho = DensityMatrix::from_dmatrix(m).unwrap();
        assert!((l1_matrix(&rho) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn l1_matrix_of_pure_projector_matches_l1_pure() {
        let psi = PureState::normalized(DVector::from_vec(vec![
            c(0.6, 0.2),
            c(-0.1, 0.5),
            c(0.3, -0.4),
        ]))
        .unwrap();
        assert!((l1_matrix(&psi.density()) - l1_pure(&psi)).abs() < 1e-12);
    }

    #[test]
    fn identity_isometry_recovers_eigendecomposition() {
        let rho = diag_density(&[0.7, 0.3]);
        // rank 2, m = 2: params encode G = I.
        let params = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0];
        let dec = enumerate_decomposition(&rho, &params, 2).unwrap();
        assert_eq!(dec.len(), 2);
        // Descending eigenvalue order.
        assert!((dec.weights()[0] - 0.7).abs() < 1e-12);
        assert!((dec.weights()[1] - 0.3).abs() < 1e-12);
        assert!(dec.reconstruction_error(&rho) < 1e-12);
    }

    #[test]
    fn hadamard_isometry_splits_maximally_mixed_into_plus_minus() {
        let rho = DensityMatrix::maximally_mixed(2);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // G columns (1,1)/sqrt2 and (1,-1)/sqrt2.
        let params = [s, 0.0, s, 0.0, s, 0.0, -s, 0.0];
        let dec = enumerate_decomposition(&rho, &params, 2).unwrap();
        assert_eq!(dec.len(), 2);
        assert!((dec.weights()[0] - 0.5).abs() < 1e-12);
        assert!((dec.weights()[1] - 0.5).abs() < 1e-12);
        for psi in dec.states() {
            // Both states are |+> or |-> up to phase: equal moduli.
            assert!((psi.amplitude(0).norm() - s).abs() < 1e-12);
            assert!((psi.amplitude(1).norm() - s).abs() < 1e-12);
        }
        assert!(dec.reconstruction_error(&rho) < 1e-12);
    }

    #[test]
    fn random_isometry_reconstructs_state() {
        let m = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(0.5, 0.0),
                c(0.1, 0.2),
                c(0.0, -0.1),
                c(0.1, -0.2),
                c(0.3, 0.0),
                c(0.05, 0.02),
                c(0.0, 0.1),
                c(0.05, -0.02),
                c(0.2, 0.0),
            ],
        );
        let rho = DensityMatrix::from_dmatrix(m).unwrap();
        let params: Vec<f64> = (0..2 * 5 * 3)
            .map(|i| ((i * 31 + 7) % 17) as f64 / 17.0 - 0.4)
            .collect();
        let dec = enumerate_decomposition(&rho, &params, 5).unwrap();
        let total: f64 = dec.weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-10);
        assert!(dec.reconstruction_error(&rho) < 1e-8);
        // Any decomposition average dominates the l1 coherence.
        assert!(dec.average_coherence() >= l1_matrix(&rho) - 1e-8);
    }

    #[test]
    fn enumerate_rejects_m_below_rank_and_bad_length() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(matches!(
            enumerate_decomposition(&rho, &[1.0, 0.0, 0.0, 0.0], 1),
            Err(Error::DecompositionTooSmall { m: 1, rank: 2 })
        ));
        assert!(matches!(
            enumerate_decomposition(&rho, &[1.0; 5], 2),
            Err(Error::IsometryParameterLength {
                got: 5,
                expected: 8
            })
        ));
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        let rho = DensityMatrix::maximally_mixed(2);
        // Two identical columns.
        let params = [1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0];
        assert!(matches!(
            enumerate_decomposition(&rho, &params, 2),
            Err(Error::DegenerateIsometry)
        ));
    }

    #[test]
    fn roof_of_pure_state_equals_l1_pure() {
        let psi = PureState::normalized(DVector::from_vec(vec![
            c(0.7, 0.1),
            c(0.2, -0.3),
            c(-0.4, 0.2),
        ]))
        .unwrap();
        let rho = psi.density();
        let budget = RoofBudget {
            restarts: 5,
            iterations: 50,
            seed: 3,
        };
        let est = roof_estimate(&rho, &budget).unwrap();
        assert!((est.value - l1_pure(&psi)).abs() < 1e-8);
    }

    #[test]
    fn roof_of_incoherent_state_is_zero() {
        let est =
            roof_estimate(&DensityMatrix::maximally_mixed(2), &RoofBudget::default()).unwrap();
        assert!(est.value < 1e-8);
        let est = roof_estimate(&diag_density(&[0.2, 0.5, 0.3]), &RoofBudget::default()).unwrap();
        assert!(est.value < 1e-8);
    }

    #[test]
    fn roof_value_matches_returned_decomposition() {
        let m =
            DMatrix::from_row_slice(2, 2, &[c(0.6, 0.0), c(0.2, 0.1), c(0.2, -0.1), c(0.4, 0.0)]);
        let rho = DensityMatrix::from_dmatrix(m).unwrap();
        let est = roof_estimate(&rho, &RoofBudget::default()).unwrap();
        assert!((est.value - est.best_decomposition.average_coherence()).abs() < 1e-10);
        assert!(est.best_decomposition.reconstruction_error(&rho) < 1e-8);
        assert!(est.value >= l1_matrix(&rho) - 1e-8);
    }

    #[test]
    fn roof_is_monotone_in_budget() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[c(0.55, 0.0), c(0.15, 0.2), c(0.15, -0.2), c(0.45, 0.0)],
        );
        let rho = DensityMatrix::from_dmatrix(m).unwrap();
        let small = RoofBudget {
            restarts: 10,
            iterations: 100,
            seed: 7,
        };
        let more_restarts = RoofBudget {
            restarts: 20,
            ..small
        };
        let more_iterations = RoofBudget {
            iterations: 200,
            ..small
        };
        let base = roof_estimate(&rho, &small).unwrap().value;
        assert!(roof_estimate(&rho, &more_restarts).unwrap().value <= base);
        assert!(roof_estimate(&rho, &more_iterations).unwrap().value <= base);
    }

    #[test]
    fn roof_never_exceeds_eigendecomposition_average() {
        let m =
            DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.3, 0.1), c(0.3, -0.1), c(0.5, 0.0)]);
        let rho = DensityMatrix::from_dmatrix(m).unwrap();
        let spec = spectral(&rho.to_hermitian()).unwrap();
        let mut eig_avg = 0.0;
        for k in 0..2 {
            let psi = PureState::normalized(spec.eigenvector(k)).unwrap();
            eig_avg += spec.eigenvalues()[k].max(0.0) * l1_pure(&psi);
        }
        let est = roof_estimate(&rho, &RoofBudget::default()).unwrap();
        assert!(est.value <= eig_avg + 1e-12);
    }

    #[test]
    fn qubit_roof_approaches_l1() {
        // For qubits the convex roof of the l1 coherence coincides with
        // l1_matrix; the search should get close with a modest budget.
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[c(0.65, 0.0), c(0.2, 0.15), c(0.2, -0.15), c(0.35, 0.0)],
        );
        let rho = DensityMatrix::from_dmatrix(m).unwrap();
        let est = roof_estimate(&rho, &RoofBudget::default()).unwrap();
        let gap = est.value - l1_matrix(&rho);
        assert!(gap >= -1e-8, "roof below l1: gap = {gap}");
        assert!(gap < 1e-4, "search missed the qubit optimum: gap = {gap}");
    }
}
