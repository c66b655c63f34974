//! Orthonormal Hermitian operator bases for the traceless sector.
//!
//! [`generalized_gell_mann`] builds the standard generalization of the Pauli
//! (d=2) and Gell-Mann (d=3) matrices, normalized to unit Frobenius norm so
//! that `tr(H_mu H_nu) = delta_{mu nu}`. Any traceless Hermitian observable
//! then corresponds to a real coefficient vector of length `d^2 - 1` via
//! [`expand`] / [`project`].

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{frobenius_inner, HermitianOperator};

/// Orthonormal basis of the `d^2 - 1` dimensional space of traceless
/// Hermitian `d x d` matrices.
///
/// Element order is fixed: first the `d(d-1)/2` symmetric off-diagonal
/// generators `(|j><k| + |k><j|)/sqrt(2)` for `j < k` in lexicographic
/// `(j, k)` order, then the antisymmetric generators
/// `(-i|j><k| + i|k><j|)/sqrt(2)` in the same order, then the `d - 1`
/// diagonal generators.
#[derive(Debug, Clone)]
pub struct OperatorBasis {
    dim: usize,
    elements: Vec<HermitianOperator>,
}

impl OperatorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of basis elements, `d^2 - 1`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, mu: usize) -> &HermitianOperator {
        &self.elements[mu]
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }
}

/// Real coefficient vector of an observable in an [`OperatorBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct BasisCoefficients {
    dim: usize,
    coefficients: Vec<f64>,
}

impl BasisCoefficients {
    /// Wraps a coefficient vector for matrices of dimension `dim`; the
    /// vector must have length `dim^2 - 1`.
    pub fn new(dim: usize, coefficients: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::BasisDimension { dim });
        }
        if coefficients.len() != dim * dim - 1 {
            return Err(Error::CoefficientLength {
                got: coefficients.len(),
                expected: dim * dim - 1,
            });
        }
        Ok(BasisCoefficients { dim, coefficients })
    }

    /// Matrix dimension the coefficients refer to.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coefficients
    }

    /// Euclidean norm; equals the Frobenius norm of the expanded operator.
    pub fn norm(&self) -> f64 {
        self.coefficients.iter().map(|a| a * a).sum::<f64>().sqrt()
    }
}

/// Builds the generalized Gell-Mann basis for dimension `dim >= 2`.
pub fn generalized_gell_mann(dim: usize) -> Result<OperatorBasis> {
    if dim < 2 {
        return Err(Error::BasisDimension { dim });
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut elements = Vec::with_capacity(dim * dim - 1);

    for j in 0..dim {
        for k in (j + 1)..dim {
            let mut m = DMatrix::<Complex64>::zeros(dim, dim);
            m[(j, k)] = Complex64::new(inv_sqrt2, 0.0);
            m[(k, j)] = Complex64::new(inv_sqrt2, 0.0);
            elements.push(hermitian_unchecked(m));
        }
    }
    for j in 0..dim {
        for k in (j + 1)..dim {
            let mut m = DMatrix::<Complex64>::zeros(dim, dim);
            m[(j, k)] = Complex64::new(0.0, -inv_sqrt2);
            m[(k, j)] = Complex64::new(0.0, inv_sqrt2);
            elements.push(hermitian_unchecked(m));
        }
    }
    // Diagonal generator l (1-based) weights the first l basis states by
    // +1 and state l by -l; 1/sqrt(l(l+1)) gives unit Frobenius norm.
    for l in 1..dim {
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        let w = 1.0 / ((l * (l + 1)) as f64).sqrt();
        for j in 0..l {
            m[(j, j)] = Complex64::new(w, 0.0);
        }
        m[(l, l)] = Complex64::new(-(l as f64) * w, 0.0);
        elements.push(hermitian_unchecked(m));
    }

    Ok(OperatorBasis { dim, elements })
}

fn hermitian_unchecked(m: DMatrix<Complex64>) -> HermitianOperator {
    // Generators are Hermitian by construction; validation is cheap and
    // keeps a single construction path.
    HermitianOperator::from_dmatrix(m).expect("generator construction is Hermitian")
}

/// Linear combination `sum_mu a_mu H_mu` of the basis elements.
pub fn expand(
    coefficients: &BasisCoefficients,
    basis: &OperatorBasis,
) -> Result<HermitianOperator> {
    if coefficients.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            left: coefficients.dim(),
            right: basis.dim(),
        });
    }
    let d = basis.dim();
    let mut acc = DMatrix::<Complex64>::zeros(d, d);
    for (a, h) in coefficients.as_slice().iter().zip(basis.elements()) {
        if *a != 0.0 {
            acc += h.dmatrix().scale(*a);
        }
    }
    HermitianOperator::from_dmatrix(acc)
}

/// Coefficients of the traceless part of `h`: `a_mu = Re tr(H_mu h)`.
///
/// For traceless `h` this inverts [`expand`]; any trace component of `h` is
/// orthogonal to the basis and simply dropped.
pub fn project(h: &HermitianOperator, basis: &OperatorBasis) -> Result<BasisCoefficients> {
    if h.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            left: h.dim(),
            right: basis.dim(),
        });
    }
    let coefficients = basis
        .elements()
        .iter()
        .map(|e| frobenius_inner(e.as_matrix(), h.as_matrix()).map(|z| z.re))
        .collect::<Result<Vec<f64>>>()?;
    BasisCoefficients::new(basis.dim(), coefficients)
}
