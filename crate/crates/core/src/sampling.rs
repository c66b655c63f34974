//! Seedable random generation of states and observables.
//!
//! Pure states are Haar-distributed (normalized vectors of i.i.d. complex
//! Gaussians), mixed states follow the Ginibre construction
//! `rho = G G^dagger / tr(G G^dagger)` with a `dim x mixed_rank` Gaussian
//! `G`, and observables are uniform on the unit sphere of traceless
//! Hermitian operators (Gaussian coefficient vectors in the generalized
//! Gell-Mann basis, normalized).
//!
//! Determinism contract: a given [`SamplerConfig`] always produces the same
//! draw within one build. The three sampling operations use disjoint PRNG
//! streams of the same seed, so `random_pure` and `random_density` with one
//! config are statistically independent. Parallel callers derive
//! independent configs with [`SamplerConfig::derive`].

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::basis::{generalized_gell_mann, BasisCoefficients, OperatorBasis};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, HermitianOperator, PureState};

const STREAM_PURE: u64 = 1;
const STREAM_DENSITY: u64 = 2;
const STREAM_OBSERVABLE: u64 = 3;

/// Configuration for one deterministic draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    seed: u64,
    dim: usize,
    mixed_rank: usize,
}

impl SamplerConfig {
    /// `mixed_rank` is the Ginibre factor width used by mixed-state draws;
    /// it must lie in `1..=dim`.
    pub fn new(seed: u64, dim: usize, mixed_rank: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::BasisDimension { dim });
        }
        if mixed_rank < 1 || mixed_rank > dim {
            return Err(Error::InvalidMixedRank {
                rank: mixed_rank,
                dim,
            });
        }
        Ok(SamplerConfig {
            seed,
            dim,
            mixed_rank,
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mixed_rank(&self) -> usize {
        self.mixed_rank
    }

    /// Config with a seed derived from `(seed, stream)`; used to hand
    /// independent deterministic streams to sweep trials or worker threads.
    pub fn derive(&self, stream: u64) -> SamplerConfig {
        SamplerConfig {
            seed: derive_seed(self.seed, stream),
            dim: self.dim,
            mixed_rank: self.mixed_rank,
        }
    }

    fn rng(&self, stream: u64) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// SplitMix64 finalizer over `(base, stream)`; stable seed derivation for
/// independent substreams.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    splitmix64(base ^ splitmix64(stream.wrapping_add(0x9E37_79B9_7F4A_7C15)))
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Haar-random pure state for the configured dimension.
pub fn random_pure(cfg: &SamplerConfig) -> PureState {
    random_pure_with(&mut cfg.rng(STREAM_PURE), cfg.dim)
}

/// Ginibre-induced random density matrix of rank `cfg.mixed_rank`.
pub fn random_density(cfg: &SamplerConfig) -> DensityMatrix {
    random_density_with(&mut cfg.rng(STREAM_DENSITY), cfg.dim, cfg.mixed_rank)
        .expect("config validated the rank range")
}

/// Random traceless unit-Frobenius-norm observable.
pub fn random_observable(cfg: &SamplerConfig) -> HermitianOperator {
    let basis = generalized_gell_mann(cfg.dim).expect("config validated dim >= 2");
    random_observable_with(&mut cfg.rng(STREAM_OBSERVABLE), &basis)
}

/// Haar draw from an explicit PRNG; used by loops that consume a stream.
pub fn random_pure_with<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> PureState {
    loop {
        let v = DVector::from_iterator(dim, (0..dim).map(|_| gaussian_complex(rng)));
        let norm = v.norm();
        if norm > 1e-100 {
            return PureState::normalized(v).expect("nonzero Gaussian vector normalizes");
        }
    }
}

/// Ginibre draw from an explicit PRNG.
pub fn random_density_with<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    mixed_rank: usize,
) -> Result<DensityMatrix> {
    if mixed_rank < 1 || mixed_rank > dim {
        return Err(Error::InvalidMixedRank {
            rank: mixed_rank,
            dim,
        });
    }
    loop {
        let g = DMatrix::from_fn(dim, mixed_rank, |_, _| gaussian_complex(rng));
        let mut m = &g * g.adjoint();
        let trace = m.trace().re;
        if trace <= 1e-100 {
            continue;
        }
        m.iter_mut().for_each(|z| *z /= trace);
        // G G^dagger is Hermitian and PSD by construction and the trace was
        // just normalized, so the invariant checks cannot fail.
        return Ok(DensityMatrix::from_validated(
            ComplexMatrix::new(m).expect("Gaussian entries are finite"),
        ));
    }
}

/// Observable draw from an explicit PRNG and a prebuilt basis.
pub fn random_observable_with<R: Rng + ?Sized>(
    rng: &mut R,
    basis: &OperatorBasis,
) -> HermitianOperator {
    let coeffs = random_coefficients_with(rng, basis.dim());
    crate::basis::expand(&coeffs, basis).expect("coefficient length matches basis")
}

/// Uniform draw from the unit sphere of basis coefficient vectors.
pub fn random_coefficients_with<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> BasisCoefficients {
    let n = dim * dim - 1;
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-100 {
            v.iter_mut().for_each(|x| *x /= norm);
            return BasisCoefficients::new(dim, v).expect("length is dim^2 - 1");
        }
    }
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}
