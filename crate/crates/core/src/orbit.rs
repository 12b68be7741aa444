//! The affine coadjoint orbit of the vacuum and its symplectic geometry.
//!
//! The restricted unitary group acts on the extended predual by the affine
//! law g·(μ, γ) = (gμg* − γσ(g), γ), where
//!
//! ```text
//!     σ(g) = g d g* − d = [g, d]·g*
//! ```
//!
//! is the group one-cocycle. The orbit of the vacuum point (0, γ) is
//! {(−γσ(g), γ)}, and [`orbit_embed`] realizes the identification of the
//! Grassmannian with this orbit: Φ_γ(W) = (2iγ(pr₊ − pr_W), γ), so that
//! Φ_γ(g·H₊) = (−γσ(g), γ) holds identically and the embedding intertwines
//! [`crate::grassmann::act`] with [`affine_action`]. Membership of a pair
//! (μ, γ) in the orbit shape is certified by the reconstruction
//! P := pr₊ + (i/2γ)·μ being a Hermitian idempotent; P is the projection
//! onto the subspace W with Φ_γ(W) = (μ, γ).
//!
//! Two 2-forms live here: the invariant form of the homogeneous space,
//! Ω([A],[B]) = 2·Im Tr(A₋₊* B₋₊) on classes modulo the isotropy algebra,
//! and the Kirillov-Kostant-Souriau form ω = γ·s of the orbit. They are
//! proportional: ω = −2γ·Ω.

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::extension::schwinger;
use crate::grassmann::{point_from_frame, range_frame, GrassmannPoint};
use crate::linalg::{self, CMatrix};
use crate::operator::{make_d, BlockOperator, PolarizedSpace, RestrictedUnitary, SkewHermitian};

/// Absolute tolerance for the orbit-shape reconstruction invariant.
pub const ORBIT_TOL: f64 = 1e-9;

/// A point (μ, γ) of the affine coadjoint orbit of (0, γ).
#[derive(Debug, Clone)]
pub struct OrbitPoint {
    mu: SkewHermitian,
    gamma: f64,
}

impl OrbitPoint {
    /// Validate and wrap: γ must be nonzero and finite, and the
    /// reconstruction P = pr₊ + (i/2γ)·μ must be a Hermitian idempotent
    /// within [`ORBIT_TOL`]·(1 + ‖P‖).
    ///
    /// # Errors
    /// [`Error::ZeroGamma`] or [`Error::OffOrbit`].
    pub fn new(mu: SkewHermitian, gamma: f64) -> Result<Self> {
        if gamma == 0.0 || !gamma.is_finite() {
            return Err(Error::ZeroGamma);
        }
        let point = Self { mu, gamma };
        let defect = point.reconstruction_defect();
        let tolerance = ORBIT_TOL * (1.0 + linalg::operator_norm(&point.reconstruction_matrix()));
        if defect > tolerance {
            return Err(Error::OffOrbit { defect, tolerance });
        }
        Ok(point)
    }

    pub(crate) fn from_parts(mu: SkewHermitian, gamma: f64) -> Self {
        Self { mu, gamma }
    }

    /// The vacuum point (0, γ).
    ///
    /// # Panics
    /// If γ is zero or not finite.
    pub fn vacuum(space: PolarizedSpace, gamma: f64) -> Self {
        assert!(
            gamma != 0.0 && gamma.is_finite(),
            "the vacuum point needs a nonzero finite gamma"
        );
        Self {
            mu: SkewHermitian::zeros(space),
            gamma,
        }
    }

    /// The predual slot μ.
    pub fn mu(&self) -> &SkewHermitian {
        &self.mu
    }

    /// The central charge γ (constant along the action).
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The ambient polarized space.
    pub fn space(&self) -> PolarizedSpace {
        self.mu.space()
    }

    fn reconstruction_matrix(&self) -> CMatrix {
        let factor = Complex::new(0.0, 1.0 / (2.0 * self.gamma));
        self.space().pr_plus_matrix() + self.mu.matrix().map(|z| z * factor)
    }

    /// How far the reconstruction P = pr₊ + (i/2γ)·μ is from a Hermitian
    /// idempotent: ‖P − P*‖ + ‖P² − P‖ in operator norm. Zero exactly on
    /// the orbit.
    pub fn reconstruction_defect(&self) -> f64 {
        let p = self.reconstruction_matrix();
        let herm = linalg::operator_norm(&(&p - p.adjoint()));
        let idem = linalg::operator_norm(&(&p * &p - &p));
        herm + idem
    }

    /// Invert the orbit identification: the subspace W with Φ_γ(W) = this
    /// point, recovered from the range of the reconstruction projection.
    ///
    /// # Errors
    /// [`Error::OffOrbit`] if the reconstruction has trivial range (the
    /// zero subspace carries no frame), or a frame validation error if μ
    /// is too far from the orbit shape.
    pub fn reconstruct_point(&self) -> Result<GrassmannPoint> {
        let p = self.reconstruction_matrix();
        let frame = range_frame(&p);
        if frame.ncols() == 0 {
            return Err(Error::OffOrbit {
                defect: self.reconstruction_defect(),
                tolerance: ORBIT_TOL,
            });
        }
        point_from_frame(self.space(), frame)
    }
}

/// The group one-cocycle σ(g) = g·d·g* − d.
///
/// Vanishes exactly on block-diagonal g (the isotropy of the vacuum); its
/// blocks are products of off-diagonal blocks of g, which is why σ lands in
/// the predual.
pub fn sigma(g: &RestrictedUnitary) -> SkewHermitian {
    let d = make_d(g.space());
    SkewHermitian::skew_part(&(&g.conjugate(d.as_operator()) - d.as_operator()))
}

/// The affine coadjoint action g·(μ, γ) = (gμg* − γσ(g), γ).
///
/// A left action: composition in the group composes the affine maps, and γ
/// never moves.
///
/// # Panics
/// If the operands live on different polarized spaces.
pub fn affine_action(g: &RestrictedUnitary, m: &OrbitPoint) -> OrbitPoint {
    assert_eq!(
        g.space(),
        m.space(),
        "affine_action requires a unitary and a point on the same polarized space"
    );
    let moved = &g.conjugate_skew(m.mu()) - &sigma(g).scale_re(m.gamma());
    OrbitPoint::from_parts(moved, m.gamma())
}

/// The orbit identification Φ_γ(W) = (2iγ(pr₊ − pr_W), γ).
///
/// Sends H₊ to the vacuum (0, γ) and intertwines the Grassmannian action
/// with [`affine_action`]; Φ_γ(g·H₊) = (−γσ(g), γ) holds identically.
///
/// # Panics
/// If γ is zero or not finite.
pub fn orbit_embed(w: &GrassmannPoint, gamma: f64) -> OrbitPoint {
    assert!(
        gamma != 0.0 && gamma.is_finite(),
        "orbit_embed needs a nonzero finite gamma"
    );
    let factor = Complex::new(0.0, 2.0 * gamma);
    let matrix = (w.space().pr_plus_matrix() - w.projection()).map(|z| z * factor);
    let mu = SkewHermitian::new_unchecked(
        BlockOperator::new(w.space(), matrix).expect("square by construction"),
    );
    OrbitPoint::from_parts(mu, gamma)
}

/// Isotropy diagnostic at the vacuum: ‖off-diagonal blocks of g‖ plus
/// ‖(g·(0,γ)).μ‖, in operator norms. Zero precisely when g is
/// block-diagonal, which is precisely when g fixes the vacuum.
///
/// # Panics
/// If γ is zero or not finite.
pub fn isotropy_defect(g: &RestrictedUnitary, gamma: f64) -> f64 {
    assert!(
        gamma != 0.0 && gamma.is_finite(),
        "isotropy_defect needs a nonzero finite gamma"
    );
    let moved = affine_action(g, &OrbitPoint::vacuum(g.space(), gamma));
    g.offdiagonal_part().operator_norm() + moved.mu().operator_norm()
}

/// The invariant 2-form of the homogeneous space at the identity class:
/// Ω([A], [B]) = 2·Im Tr((A₋₊)*·B₋₊).
///
/// Depends only on the off-diagonal parts (the classes modulo the isotropy
/// algebra) and equals −s(A, B)/2. The exponent tags the algebra and is
/// validated only.
///
/// # Panics
/// If the operands live on different polarized spaces or p is outside
/// [1, 2].
pub fn homogeneous_form(a: &SkewHermitian, b: &SkewHermitian, p: f64) -> f64 {
    assert_eq!(
        a.space(),
        b.space(),
        "homogeneous_form requires operators on the same polarized space"
    );
    assert!(
        (1.0..=2.0).contains(&p),
        "homogeneous_form requires 1 <= p <= 2, got {p}"
    );
    2.0 * (a.block_mp().adjoint() * b.block_mp()).trace().im
}

/// The Kirillov-Kostant-Souriau form of the orbit at the vacuum:
/// ω(X^{(A,a)}, X^{(B,b)}) = γ·s(A, B).
///
/// Well-defined on tangent representatives (block-diagonal shifts of A or B
/// change neither the tangent vector nor the value) and proportional to the
/// homogeneous form: ω = −2γ·Ω.
///
/// # Panics
/// As [`schwinger`], plus γ zero or not finite.
pub fn kks_form(a: &SkewHermitian, b: &SkewHermitian, gamma: f64, p: f64) -> f64 {
    assert!(
        gamma != 0.0 && gamma.is_finite(),
        "kks_form needs a nonzero finite gamma"
    );
    gamma * schwinger(a, b, p)
}

/// The invariant form evaluated at the class [g]: tangent representatives
/// at g are g·A, g·B with A, B in the off-diagonal complement m_p, and left
/// translation brings them back to the identity, so the value is
/// Ω(proj_{m_p} A, proj_{m_p} B) independently of g.
///
/// # Panics
/// If the operands live on different polarized spaces or p is outside
/// [1, 2].
pub fn pushforward_form(
    g: &RestrictedUnitary,
    a: &SkewHermitian,
    b: &SkewHermitian,
    p: f64,
) -> f64 {
    assert_eq!(
        g.space(),
        a.space(),
        "pushforward_form requires a unitary and operators on the same polarized space"
    );
    homogeneous_form(&a.offdiagonal(), &b.offdiagonal(), p)
}
