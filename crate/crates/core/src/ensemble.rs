//! Seeded random families of restricted operators.
//!
//! The infinite-dimensional objects of interest are emulated by families of
//! finite truncations. To make asymptotic statements testable, a family
//! generated from one [`EnsembleSpec`] is *nested*: every matrix entry is
//! drawn from its own counter-based random stream keyed by
//! (seed, generator label, block, row, column), so the operator produced at
//! truncation (2, 2) is exactly the leading sub-block of the one produced at
//! (4, 4). Norm sequences over growing truncations then track a single
//! limiting operator instead of resampling, which is what lets decay
//! profiles produce Cauchy sequences.
//!
//! Entry magnitudes follow decay profiles chosen per block:
//!
//! - [`random_skew`] emulates the restricted Lie algebra u_{res,p}:
//!   off-diagonal block entries at (j, k) are weighted by
//!   `magnitude·(j+k)^(−decay_alpha)` (1-based indices), so ‖[d, A]‖_p
//!   stabilizes once decay_alpha > 2/p; diagonal blocks are banded, weighted
//!   by `magnitude·(1+|j−k|)^(−decay_alpha)`, so their entries stay at full
//!   size along the diagonal (bounded, not decaying) while the operator norm
//!   stays bounded as the truncation grows.
//! - [`random_predual`] emulates the predual u_{1,q}: diagonal blocks decay
//!   as `(j+k)^(−decay_alpha−1)` (summable singular values, trace-class
//!   emulation), off-diagonal blocks as `(j+k)^(−decay_alpha)`.
//!
//! Both generators return `(X − X*)/2` of the weighted Gaussian draw, so the
//! skew-Hermitian invariant holds exactly in floating point, not merely
//! within tolerance.

use nalgebra::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::operator::{BlockOperator, PolarizedSpace, SkewHermitian};
use crate::schatten::SchattenExponent;

/// Parameters of a random truncation family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    seed: u64,
    decay_alpha: f64,
    magnitude: f64,
}

impl EnsembleSpec {
    /// Validated constructor.
    ///
    /// # Errors
    /// [`Error::EnsembleExponent`] if `decay_alpha` is negative or not
    /// finite, or if `magnitude` is negative or not finite. `magnitude = 0`
    /// is allowed and produces the zero operator; `decay_alpha = 0` disables
    /// decay entirely (full Gaussian blocks, the deliberately divergent
    /// control family).
    pub fn new(seed: u64, decay_alpha: f64, magnitude: f64) -> Result<Self> {
        if !decay_alpha.is_finite() || decay_alpha < 0.0 {
            return Err(Error::EnsembleExponent {
                message: format!(
                    "decay_alpha must be a finite nonnegative real, got {decay_alpha}"
                ),
            });
        }
        if !magnitude.is_finite() || magnitude < 0.0 {
            return Err(Error::EnsembleExponent {
                message: format!("magnitude must be a finite nonnegative real, got {magnitude}"),
            });
        }
        Ok(Self {
            seed,
            decay_alpha,
            magnitude,
        })
    }

    /// The family seed.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The entry decay exponent.
    pub fn decay_alpha(&self) -> f64 {
        self.decay_alpha
    }

    /// The overall entry scale.
    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    /// Same family parameters under a different seed.
    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..*self }
    }
}

/// Distinguishes the generator a stream belongs to, so skew and predual
/// draws under one seed are independent.
#[derive(Clone, Copy)]
enum GeneratorLabel {
    Skew = 0,
    Predual = 1,
}

#[derive(Clone, Copy)]
enum Block {
    Pp = 0,
    Pm = 1,
    Mp = 2,
    Mm = 3,
}

/// One standard complex Gaussian draw from the stream owned by
/// (seed, label, block, j, k). Position-keyed streams are what make the
/// truncation family nested.
fn entry_gaussian(
    seed: u64,
    label: GeneratorLabel,
    block: Block,
    j: usize,
    k: usize,
) -> Complex<f64> {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8] = label as u8;
    key[9] = block as u8;
    key[10..14].copy_from_slice(&(j as u32).to_le_bytes());
    key[14..18].copy_from_slice(&(k as u32).to_le_bytes());
    key[18..30].copy_from_slice(b"resgrass-ens");
    let mut rng = ChaCha8Rng::from_seed(key);
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im)
}

/// Off-diagonal decay weight at 0-based block position (j, k): with 1-based
/// indices this is (j+k)^(−alpha).
fn offdiag_weight(magnitude: f64, alpha: f64, j: usize, k: usize) -> f64 {
    magnitude * ((j + k + 2) as f64).powf(-alpha)
}

/// Banded weight for diagonal blocks: full magnitude on the diagonal,
/// decaying away from it.
fn banded_weight(magnitude: f64, alpha: f64, j: usize, k: usize) -> f64 {
    let band = (j as f64 - k as f64).abs() + 1.0;
    magnitude * band.powf(-alpha)
}

/// Trace-class-style weight for predual diagonal blocks: (j+k)^(−alpha−1)
/// in 1-based indices.
fn predual_diag_weight(magnitude: f64, alpha: f64, j: usize, k: usize) -> f64 {
    magnitude * ((j + k + 2) as f64).powf(-(alpha + 1.0))
}

fn weighted_draw(
    space: PolarizedSpace,
    seed: u64,
    label: GeneratorLabel,
    diag_weight: impl Fn(usize, usize) -> f64,
    off_weight: impl Fn(usize, usize) -> f64,
) -> CMatrix {
    let (np, nm) = (space.n_plus(), space.n_minus());
    let n = space.dim();
    let mut x = CMatrix::zeros(n, n);
    for j in 0..np {
        for k in 0..np {
            x[(j, k)] = entry_gaussian(seed, label, Block::Pp, j, k) * diag_weight(j, k);
        }
    }
    for j in 0..np {
        for k in 0..nm {
            x[(j, np + k)] = entry_gaussian(seed, label, Block::Pm, j, k) * off_weight(j, k);
        }
    }
    for j in 0..nm {
        for k in 0..np {
            x[(np + j, k)] = entry_gaussian(seed, label, Block::Mp, j, k) * off_weight(j, k);
        }
    }
    for j in 0..nm {
        for k in 0..nm {
            x[(np + j, np + k)] = entry_gaussian(seed, label, Block::Mm, j, k) * diag_weight(j, k);
        }
    }
    x
}

/// Random element of the truncated restricted Lie algebra u_{res,p}.
///
/// Deterministic in `spec.seed()`; nested across truncations of one spec.
/// The result is `(X − X*)/2` of a decay-weighted Gaussian matrix, hence
/// exactly skew-Hermitian.
///
/// # Errors
/// [`Error::EnsembleExponent`] unless 1 ≤ p ≤ 2.
pub fn random_skew(space: PolarizedSpace, spec: &EnsembleSpec, p: f64) -> Result<SkewHermitian> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::EnsembleExponent {
            message: format!("random_skew requires 1 <= p <= 2, got {p}"),
        });
    }
    let (mag, alpha) = (spec.magnitude(), spec.decay_alpha());
    let x = weighted_draw(
        space,
        spec.seed(),
        GeneratorLabel::Skew,
        |j, k| banded_weight(mag, alpha, j, k),
        |j, k| offdiag_weight(mag, alpha, j, k),
    );
    let skew = (&x - x.adjoint()).map(|z| z * 0.5);
    Ok(SkewHermitian::new_unchecked(
        BlockOperator::new(space, skew).expect("square by construction"),
    ))
}

/// Random element of the truncated predual u_{1,q}.
///
/// Deterministic in `spec.seed()`; nested across truncations of one spec.
/// Diagonal blocks decay one power faster than off-diagonal ones, emulating
/// trace-class diagonal corners. Exactly skew-Hermitian by construction.
///
/// # Errors
/// [`Error::EnsembleExponent`] unless q ≥ 2 or q = ∞.
pub fn random_predual(
    space: PolarizedSpace,
    spec: &EnsembleSpec,
    q: SchattenExponent,
) -> Result<SkewHermitian> {
    match q {
        SchattenExponent::Infinity => {}
        SchattenExponent::Finite(q) if q >= 2.0 => {}
        SchattenExponent::Finite(q) => {
            return Err(Error::EnsembleExponent {
                message: format!("random_predual requires q >= 2 or q = inf, got {q}"),
            });
        }
    }
    let (mag, alpha) = (spec.magnitude(), spec.decay_alpha());
    let x = weighted_draw(
        space,
        spec.seed(),
        GeneratorLabel::Predual,
        |j, k| predual_diag_weight(mag, alpha, j, k),
        |j, k| offdiag_weight(mag, alpha, j, k),
    );
    let skew = (&x - x.adjoint()).map(|z| z * 0.5);
    Ok(SkewHermitian::new_unchecked(
        BlockOperator::new(space, skew).expect("square by construction"),
    ))
}
