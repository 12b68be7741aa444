//! Finite truncations of the restricted Grassmannian of a polarized Hilbert
//! space.
//!
//! The crate models a polarized space H = H₊ ⊕ H₋ at finite truncation and
//! builds, on top of dense block operators, the analytic and geometric layers
//! that make the restricted Grassmannian an affine coadjoint orbit:
//!
//! - [`operator`]: block operators, the sign operator d = i(pr₊ − pr₋),
//!   skew-Hermitian and unitary refinement types, commutators, exponentials.
//! - [`schatten`]: Schatten p-norms, the restricted norm ‖A‖∞ + ‖[d,A]‖_p,
//!   the predual norm, the restricted trace, and the duality pairing.
//! - [`ensemble`]: seeded random families of restricted operators whose
//!   truncations are nested, for convergence studies.
//! - [`grassmann`]: Grassmannian points as projections, graph charts and
//!   transition maps, connected components by relative index, transitivity
//!   witnesses, and Fredholm regularizers.
//! - [`extension`]: the Schwinger cocycle, the centrally extended Lie
//!   algebra, the affine coadjoint action, and the Lie-Poisson bracket with
//!   finite-difference functional gradients.
//! - [`orbit`]: affine coadjoint orbits, the one-cocycle σ, the moment map
//!   onto the Grassmannian, and the homogeneous and orbit symplectic forms.
//! - [`io`]: JSON serialization for matrices and frames.

pub mod ensemble;
pub mod error;
pub mod extension;
pub mod grassmann;
pub mod io;
mod linalg;
pub mod operator;
pub mod orbit;
pub mod schatten;

pub use error::{Error, Result};
pub use operator::{
    commutator, exp_skew, make_d, skew_commutator, BlockOperator, PolarizedSpace,
    RestrictedUnitary, SkewHermitian,
};
pub use schatten::{
    l1q_norm, pairing, restricted_norm, restricted_trace, schatten_norm, SchattenExponent,
};
