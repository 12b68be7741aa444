//! The Schwinger central extension and its Lie-Poisson structure.
//!
//! The restricted Lie algebra carries the continuous 2-cocycle
//!
//! ```text
//!     s(A, B) = Tr_res(A·[d, B]),
//! ```
//!
//! which is real-valued, antisymmetric, and satisfies the cyclic cocycle
//! identity. It twists the direct sum u_{res,p} ⊕ ℝ into the centrally
//! extended algebra with bracket [(A,a),(B,b)]_d = ([A,B], s(A,B)); the
//! extended elements pair with predual elements (μ, γ) via
//! ⟨(μ,γ),(A,a)⟩_d = ⟨μ,A⟩ + γ·a.
//!
//! The (negative) coadjoint action of the extension has the closed form
//! −ad*_{(A,a)}(μ,γ) = ([A, μ − γd], 0): the central direction acts
//! trivially and γ never moves, which is why each affine slice
//! u_{1,q} ⊕ {γ} is a Poisson manifold with bracket
//!
//! ```text
//!     {f, g}_d(μ, γ) = ⟨μ, [D_μf, D_μg]⟩ + γ·s(D_μf, D_μg).
//! ```
//!
//! Functional derivatives D_μf are taken analytically when supplied and by
//! central finite differences otherwise, assembled over the canonical real
//! basis of the skew-Hermitian matrices (whose duality Gram is diagonal, so
//! no linear solve is needed).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operator::{commutator, make_d, skew_commutator, PolarizedSpace, SkewHermitian};
use crate::schatten::{canonical_skew_basis, pairing, restricted_trace};

/// Relative tolerance on the imaginary residue accepted by [`schwinger`].
pub const SCHWINGER_IMAGINARY_TOL: f64 = 1e-10;

/// Relative scale of the central finite-difference step.
pub const FD_STEP_SCALE: f64 = 1e-5;

/// Relative tolerance for analytic-vs-numeric gradient agreement.
pub const GRADIENT_TOL: f64 = 1e-5;

/// Element (A, a) of the centrally extended algebra, or (μ, γ) of its
/// predual: a skew-Hermitian operator together with a real scalar.
#[derive(Debug, Clone)]
pub struct ExtendedElement {
    operator: SkewHermitian,
    scalar: f64,
}

impl ExtendedElement {
    /// Pair an operator with a scalar slot.
    pub fn new(operator: SkewHermitian, scalar: f64) -> Self {
        Self { operator, scalar }
    }

    /// The central element (0, a).
    pub fn central(space: PolarizedSpace, a: f64) -> Self {
        Self {
            operator: SkewHermitian::zeros(space),
            scalar: a,
        }
    }

    /// The operator slot.
    pub fn operator(&self) -> &SkewHermitian {
        &self.operator
    }

    /// The scalar slot.
    pub fn scalar(&self) -> f64 {
        self.scalar
    }

    /// The ambient polarized space.
    pub fn space(&self) -> PolarizedSpace {
        self.operator.space()
    }

    /// Same operator, different scalar.
    pub fn with_scalar(&self, scalar: f64) -> Self {
        Self {
            operator: self.operator.clone(),
            scalar,
        }
    }

    /// Same scalar, operator shifted by `delta`.
    pub fn with_operator_shift(&self, delta: &SkewHermitian) -> Self {
        Self {
            operator: &self.operator + delta,
            scalar: self.scalar,
        }
    }
}

/// The Schwinger cocycle s(A, B) = Tr_res(A·[d, B]).
///
/// Computed through the restricted trace of the full product; the block
/// shortcut (−2i)Tr(A₊₋B₋₊) + (2i)Tr(A₋₊B₊₋) serves as an independent test
/// oracle, not as the implementation. The value does not depend on p; the
/// exponent tags the algebra the arguments live in and is validated only.
///
/// # Panics
/// If the operands live on different polarized spaces, if p is outside
/// [1, 2], or if the imaginary residue of the trace exceeds
/// `SCHWINGER_IMAGINARY_TOL · (1 + ‖A‖_F·‖B‖_F)`, which signals non-skew
/// inputs.
pub fn schwinger(a: &SkewHermitian, b: &SkewHermitian, p: f64) -> f64 {
    assert_eq!(
        a.space(),
        b.space(),
        "schwinger requires operators on the same polarized space"
    );
    assert!(
        (1.0..=2.0).contains(&p),
        "schwinger requires 1 <= p <= 2, got {p}"
    );
    let d = make_d(a.space());
    let product = a.as_operator() * &commutator(d.as_operator(), b.as_operator());
    let t = restricted_trace(&product);
    let scale = 1.0 + a.frobenius_norm() * b.frobenius_norm();
    assert!(
        t.im.abs() <= SCHWINGER_IMAGINARY_TOL * scale,
        "Schwinger cocycle must be real on skew-Hermitian pairs; residue {} exceeds {}",
        t.im.abs(),
        SCHWINGER_IMAGINARY_TOL * scale
    );
    t.re
}

/// Extended bracket [(A,a),(B,b)]_d = ([A,B], s(A,B)).
///
/// The scalar slots of the inputs never enter: the center is, as it must
/// be, bracketed to zero.
///
/// # Panics
/// As [`schwinger`].
pub fn extended_bracket(x: &ExtendedElement, y: &ExtendedElement, p: f64) -> ExtendedElement {
    let operator = skew_commutator(x.operator(), y.operator());
    let scalar = schwinger(x.operator(), y.operator(), p);
    ExtendedElement::new(operator, scalar)
}

/// Extended pairing ⟨(μ,γ),(A,a)⟩_d = ⟨μ,A⟩ + γ·a.
///
/// # Panics
/// If the operands live on different polarized spaces, or if the operator
/// pairing has a non-real residue (non-dual arguments).
pub fn extended_pairing(m: &ExtendedElement, x: &ExtendedElement) -> f64 {
    pairing(m.operator(), x.operator()) + m.scalar() * x.scalar()
}

/// Negative coadjoint action −ad*_{(A,a)}(μ,γ) = ([A, μ − γd], 0).
///
/// The scalar slot of the result is identically zero (the formula is exact,
/// not recomputed), and the γ of the predual point is consumed through the
/// affine shift μ − γd. Satisfies the defining relation
/// ⟨coadjoint(x, m), y⟩_d = −⟨m, [x, y]_d⟩_d for every y, exactly up to
/// roundoff, by trace cyclicity at finite truncation.
///
/// # Panics
/// If the operands live on different polarized spaces.
pub fn coadjoint(x: &ExtendedElement, m: &ExtendedElement) -> ExtendedElement {
    assert_eq!(
        x.space(),
        m.space(),
        "coadjoint requires elements on the same polarized space"
    );
    let d = make_d(m.space());
    let shifted = &m.operator().clone() - &d.scale_re(m.scalar());
    let operator = skew_commutator(x.operator(), &shifted);
    ExtendedElement::new(operator, 0.0)
}

type EvalFn = dyn Fn(&ExtendedElement) -> f64 + Send + Sync;
type GradFn = dyn Fn(&ExtendedElement) -> (SkewHermitian, f64) + Send + Sync;

/// A real-valued functional on the extended predual, with an optional
/// analytic gradient (D_μf as a skew-Hermitian operator, ∂f/∂γ as a real).
///
/// Evaluation closures must be pure: the finite-difference fallback calls
/// them at many shifted points and assumes re-entrancy.
#[derive(Clone)]
pub struct SmoothFunctional {
    evaluate: Arc<EvalFn>,
    analytic_gradient: Option<Arc<GradFn>>,
}

impl std::fmt::Debug for SmoothFunctional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SmoothFunctional")
            .field("analytic_gradient", &self.analytic_gradient.is_some())
            .finish()
    }
}

impl SmoothFunctional {
    /// A functional with finite-difference gradients only.
    pub fn new(evaluate: impl Fn(&ExtendedElement) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            evaluate: Arc::new(evaluate),
            analytic_gradient: None,
        }
    }

    /// A functional with an analytic gradient.
    pub fn with_gradient(
        evaluate: impl Fn(&ExtendedElement) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(&ExtendedElement) -> (SkewHermitian, f64) + Send + Sync + 'static,
    ) -> Self {
        Self {
            evaluate: Arc::new(evaluate),
            analytic_gradient: Some(Arc::new(gradient)),
        }
    }

    /// The linear functional f(μ, γ) = ⟨(μ,γ), x⟩_d; its gradient is the
    /// constant (operator of x, scalar of x).
    pub fn linear(x: ExtendedElement) -> Self {
        let x_eval = x.clone();
        Self::with_gradient(
            move |m| extended_pairing(m, &x_eval),
            move |_| (x.operator().clone(), x.scalar()),
        )
    }

    /// The pointwise product (f·g)(m) = f(m)·g(m); the gradient, when both
    /// factors carry one, follows the Leibniz rule.
    pub fn product(f: &SmoothFunctional, g: &SmoothFunctional) -> Self {
        let (fe, ge) = (f.evaluate.clone(), g.evaluate.clone());
        let eval = move |m: &ExtendedElement| fe(m) * ge(m);
        match (&f.analytic_gradient, &g.analytic_gradient) {
            (Some(fg), Some(gg)) => {
                let (fe2, ge2) = (f.evaluate.clone(), g.evaluate.clone());
                let (fg, gg) = (fg.clone(), gg.clone());
                Self::with_gradient(eval, move |m| {
                    let (df, dfg) = fg(m);
                    let (dg, dgg) = gg(m);
                    let (fv, gv) = (fe2(m), ge2(m));
                    (&df.scale_re(gv) + &dg.scale_re(fv), dfg * gv + dgg * fv)
                })
            }
            _ => Self::new(eval),
        }
    }

    /// Shed the analytic gradient, forcing the finite-difference path.
    pub fn without_gradient(&self) -> Self {
        Self {
            evaluate: self.evaluate.clone(),
            analytic_gradient: None,
        }
    }

    /// Evaluate at a predual point.
    pub fn evaluate(&self, m: &ExtendedElement) -> f64 {
        (self.evaluate)(m)
    }

    /// Whether an analytic gradient is attached.
    pub fn has_analytic_gradient(&self) -> bool {
        self.analytic_gradient.is_some()
    }

    /// The gradient (D_μf, ∂f/∂γ) at `m`: analytic when attached, central
    /// finite differences otherwise.
    pub fn gradient(&self, m: &ExtendedElement) -> (SkewHermitian, f64) {
        match &self.analytic_gradient {
            Some(g) => g(m),
            None => self.fd_gradient(m),
        }
    }

    /// Central finite-difference gradient with step
    /// h = `FD_STEP_SCALE`·(1 + ‖μ‖).
    ///
    /// Directional derivatives along the canonical real basis of the
    /// skew-Hermitian matrices are reassembled through the diagonal duality
    /// Gram: D_μf = Σ_β (d_β / ⟨β, β⟩)·β.
    pub fn fd_gradient(&self, m: &ExtendedElement) -> (SkewHermitian, f64) {
        let space = m.space();
        let h = FD_STEP_SCALE * (1.0 + m.operator().operator_norm());
        let mut grad = SkewHermitian::zeros(space);
        for beta in canonical_skew_basis(space) {
            let step = beta.scale_re(h);
            let plus = self.evaluate(&m.with_operator_shift(&step));
            let minus = self.evaluate(&m.with_operator_shift(&-&step));
            let directional = (plus - minus) / (2.0 * h);
            if directional != 0.0 {
                let gram = pairing(&beta, &beta);
                grad = &grad + &beta.scale_re(directional / gram);
            }
        }
        let h_gamma = FD_STEP_SCALE * (1.0 + m.scalar().abs());
        let plus = self.evaluate(&m.with_scalar(m.scalar() + h_gamma));
        let minus = self.evaluate(&m.with_scalar(m.scalar() - h_gamma));
        (grad, (plus - minus) / (2.0 * h_gamma))
    }

    /// Compare the analytic gradient against finite differences at `m`.
    ///
    /// # Errors
    /// [`Error::GradientMismatch`] when they disagree beyond
    /// [`GRADIENT_TOL`] relative; Ok(()) when no analytic gradient is
    /// attached (nothing to check).
    pub fn check_gradient(&self, m: &ExtendedElement) -> Result<()> {
        let Some(analytic) = &self.analytic_gradient else {
            return Ok(());
        };
        let (ga, gamma_a) = analytic(m);
        let (gn, gamma_n) = self.fd_gradient(m);
        let num = (&ga - &gn).frobenius_norm() + (gamma_a - gamma_n).abs();
        let den = 1.0 + ga.frobenius_norm() + gamma_a.abs();
        let relative_error = num / den;
        if relative_error > GRADIENT_TOL {
            return Err(Error::GradientMismatch { relative_error });
        }
        Ok(())
    }
}

/// Lie-Poisson bracket {f, g}_d(μ, γ) = ⟨μ, [D_μf, D_μg]⟩ + γ·s(D_μf, D_μg).
///
/// Gradients come from [`SmoothFunctional::gradient`]; the γ-partials never
/// enter (the central coordinate is a Casimir direction).
///
/// # Panics
/// As [`schwinger`], plus space mismatches between the point and the
/// functionals' gradients.
pub fn poisson_bracket(
    f: &SmoothFunctional,
    g: &SmoothFunctional,
    at: &ExtendedElement,
    p: f64,
) -> f64 {
    let (df, _) = f.gradient(at);
    let (dg, _) = g.gradient(at);
    let bracket = skew_commutator(&df, &dg);
    pairing(at.operator(), &bracket) + at.scalar() * schwinger(&df, &dg, p)
}
