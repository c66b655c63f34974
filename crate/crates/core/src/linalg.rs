//! Core operator types and the small set of linear-algebra operations the
//! rest of the crate is built from.
//!
//! All matrices are dense, square and complex. Validation happens at
//! construction: a [`HermitianOperator`] is symmetrized and checked once, a
//! [`DensityMatrix`] additionally has unit trace and a nonnegative spectrum,
//! and a [`PureState`] has unit norm. Downstream code can therefore assume
//! these properties instead of re-checking them in every operation.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// Dense square complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    data: DMatrix<Complex64>,
}

impl ComplexMatrix {
    /// Wraps a square matrix, rejecting empty or non-finite input.
    pub fn new(data: DMatrix<Complex64>) -> Result<Self> {
        if data.nrows() == 0 || data.nrows() != data.ncols() {
            return Err(Error::EmptyMatrix);
        }
        for col in 0..data.ncols() {
            for row in 0..data.nrows() {
                let z = data[(row, col)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row, col });
                }
            }
        }
        Ok(ComplexMatrix { data })
    }

    /// Builds a matrix from `dim * dim` entries in row-major order.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::CoefficientLength {
                got: entries.len(),
                expected: dim * dim,
            });
        }
        ComplexMatrix::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// The all-zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            data: DMatrix::zeros(dim, dim),
        }
    }

    /// The identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        ComplexMatrix {
            data: DMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[(row, col)]
    }

    /// Entries in row-major order, as used by the file formats.
    pub fn entries_row_major(&self) -> Vec<Complex64> {
        let d = self.dim();
        let mut out = Vec::with_capacity(d * d);
        for row in 0..d {
            for col in 0..d {
                out.push(self.data[(row, col)]);
            }
        }
        out
    }

    /// Borrow the underlying storage.
    pub fn dmatrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.data
    }

    pub fn trace(&self) -> Complex64 {
        self.data.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest deviation from hermiticity, `max_ij |M_ij - conj(M_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                let dev = (self.data[(i, j)] - self.data[(j, i)].conj()).norm();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }
}

/// Hermitian operator; the stored matrix is exactly self-adjoint because
/// construction replaces the input by `(M + M^dagger)/2` after checking the
/// deviation is within tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        HermitianOperator::with_tolerances(matrix, &Tolerances::default())
    }

    pub fn with_tolerances(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let deviation = matrix.hermiticity_deviation();
        if deviation > tol.hermiticity {
            return Err(Error::NotHermitian {
                deviation,
                tol: tol.hermiticity,
            });
        }
        Ok(HermitianOperator {
            matrix: symmetrize(matrix),
        })
    }

    /// Builds directly from storage; same validation as [`Self::new`].
    pub fn from_dmatrix(data: DMatrix<Complex64>) -> Result<Self> {
        HermitianOperator::new(ComplexMatrix::new(data)?)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix.entry(row, col)
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dmatrix(&self) -> &DMatrix<Complex64> {
        self.matrix.dmatrix()
    }

    /// Real trace of the operator.
    pub fn trace_re(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.frobenius_norm()
    }
}

fn symmetrize(matrix: ComplexMatrix) -> ComplexMatrix {
    let m = matrix.into_dmatrix();
    let sym = (&m + m.adjoint()).scale(0.5);
    ComplexMatrix { data: sym }
}

/// Normalized pure state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        PureState::with_tolerances(amplitudes, &Tolerances::default())
    }

    pub fn with_tolerances(amplitudes: DVector<Complex64>, tol: &Tolerances) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        for (row, z) in amplitudes.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry { row, col: 0 });
            }
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > tol.norm {
            return Err(Error::NotNormalized {
                norm,
                tol: tol.norm,
            });
        }
        Ok(PureState { amplitudes })
    }

    /// Builds a state from amplitudes of arbitrary nonzero norm.
    pub fn normalized(mut amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm, tol: 0.0 });
        }
        amplitudes /= Complex64::new(norm, 0.0);
        PureState::new(amplitudes)
    }

    /// Computational basis state `|index>`.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[index] = Complex64::new(1.0, 0.0);
        PureState { amplitudes: v }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// The projector `|psi><psi|` as a density matrix.
    pub fn density(&self) -> DensityMatrix {
        let outer = &self.amplitudes * self.amplitudes.adjoint();
        // Exact by construction: Hermitian, PSD, trace = |psi|^2 = 1.
        DensityMatrix {
            matrix: ComplexMatrix { data: outer },
        }
    }
}

/// Density matrix: Hermitian, unit trace, positive semidefinite.
///
/// The positivity check runs on the full spectrum of the symmetrized input,
/// so slightly negative eigenvalues from rounding (above `-psd_tol`) pass
/// while genuinely indefinite matrices are rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        DensityMatrix::with_tolerances(matrix, &Tolerances::default())
    }

    pub fn with_tolerances(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let herm = HermitianOperator::with_tolerances(matrix, tol)?;
        let trace = herm.trace_re();
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::NotUnitTrace {
                trace,
                tol: tol.trace,
            });
        }
        let spec = spectral(&herm)?;
        let min_eigenvalue = spec.eigenvalues()[0];
        if min_eigenvalue < -tol.psd {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue,
                tol: tol.psd,
            });
        }
        Ok(DensityMatrix {
            matrix: herm.into_matrix(),
        })
    }

    pub fn from_dmatrix(data: DMatrix<Complex64>) -> Result<Self> {
        DensityMatrix::new(ComplexMatrix::new(data)?)
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let m = DMatrix::identity(dim, dim).scale(1.0 / dim as f64);
        DensityMatrix {
            matrix: ComplexMatrix { data: m },
        }
    }

    /// Internal constructor for matrices already known to satisfy the
    /// invariants (projectors of unit vectors, diagonal restrictions of
    /// validated states).
    pub(crate) fn from_validated(matrix: ComplexMatrix) -> Self {
        DensityMatrix { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix.entry(row, col)
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dmatrix(&self) -> &DMatrix<Complex64> {
        self.matrix.dmatrix()
    }

    /// Hermitian view of the state, for spectral decomposition.
    pub fn to_hermitian(&self) -> HermitianOperator {
        HermitianOperator {
            matrix: self.matrix.clone(),
        }
    }

    /// `tr(rho^2)`, equal to 1 exactly for pure states.
    pub fn purity(&self) -> f64 {
        self.matrix.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Eigendecomposition of a Hermitian operator with eigenvalues sorted in
/// ascending order and matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Matrix whose `k`-th column is the eigenvector of `eigenvalues()[k]`.
    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> DVector<Complex64> {
        self.eigenvectors.column(k).into_owned()
    }

    /// Rebuilds `sum_k lambda_k |v_k><v_k|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut acc = DMatrix::<Complex64>::zeros(d, d);
        for k in 0..d {
            let v = self.eigenvectors.column(k);
            let lambda = Complex64::new(self.eigenvalues[k], 0.0);
            acc += (v * v.adjoint()).scale_complex(lambda);
        }
        ComplexMatrix { data: acc }
    }
}

trait ScaleComplex {
    fn scale_complex(self, factor: Complex64) -> Self;
}

impl ScaleComplex for DMatrix<Complex64> {
    fn scale_complex(mut self, factor: Complex64) -> Self {
        for z in self.iter_mut() {
            *z *= factor;
        }
        self
    }
}

/// Commutator `[x, y] = xy - yx`.
pub fn commutator(x: &HermitianOperator, y: &HermitianOperator) -> Result<ComplexMatrix> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let a = x.dmatrix();
    let b = y.dmatrix();
    ComplexMatrix::new(a * b - b * a)
}

/// Expectation value `tr(obs * rho)`, computed entrywise without forming
/// the product.
pub fn expectation(obs: &ComplexMatrix, rho: &DensityMatrix) -> Result<Complex64> {
    if obs.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: obs.dim(),
            right: rho.dim(),
        });
    }
    let d = obs.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += obs.entry(i, j) * rho.entry(j, i);
        }
    }
    Ok(acc)
}

/// Variance `tr(a^2 rho) - tr(a rho)^2`; tiny negative rounding results are
/// clamped to 0.
pub fn variance(a: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    if a.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: rho.dim(),
        });
    }
    let squared = ComplexMatrix::new(a.dmatrix() * a.dmatrix())?;
    let second = expectation(&squared, rho)?.re;
    let first = expectation(a.as_matrix(), rho)?.re;
    let v = second - first * first;
    Ok(v.max(0.0))
}

/// Frobenius inner product `tr(x^dagger y)`.
pub fn frobenius_inner(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<Complex64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b) in x.data.iter().zip(y.data.iter()) {
        acc += a.conj() * b;
    }
    Ok(acc)
}

/// Full eigendecomposition of a Hermitian operator.
///
/// Eigenvalues are returned in ascending order. The decomposition is checked
/// against the input (`max |V L V^dagger - H|` entrywise) so a silently wrong
/// eigensolver result surfaces as [`Error::EigensolverFailure`].
pub fn spectral(h: &HermitianOperator) -> Result<SpectralDecomposition> {
    let dim = h.dim();
    let eig = h
        .dmatrix()
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 100_000)
        .ok_or(Error::EigensolverFailure { dim })?;

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut eigenvectors = DMatrix::<Complex64>::zeros(dim, dim);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }

    let decomposition = SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    };

    let rebuilt = decomposition.reconstruct();
    let scale = decomposition
        .eigenvalues
        .iter()
        .fold(1.0f64, |m, &l| m.max(l.abs()));
    let mut worst = 0.0f64;
    for (a, b) in rebuilt.data.iter().zip(h.dmatrix().iter()) {
        worst = worst.max((a - b).norm());
    }
    if worst > 1e-8 * scale.max(1.0) * dim as f64 {
        return Err(Error::EigensolverFailure { dim });
    }
    Ok(decomposition)
}
