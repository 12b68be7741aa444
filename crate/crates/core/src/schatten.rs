//! Schatten norms, the restricted norm, the predual norm, the restricted
//! trace, and the duality pairing.
//!
//! For an operator A on the truncation, the Schatten p-norm is the ℓ^p norm
//! of the singular values; p = ∞ gives the operator norm. The restricted
//! norm couples the operator norm of A with the p-norm of its commutator
//! with the sign operator d:
//!
//! ```text
//!     ‖A‖_{res,p} = ‖A‖_∞ + ‖[d, A]‖_p .
//! ```
//!
//! Since [d, A] only sees the off-diagonal blocks (both get multiplied by
//! ±2i), this norm measures how far A is from commuting with the
//! polarization. Dually, a predual element ρ carries diagonal blocks in
//! trace class and off-diagonal blocks in Schatten q, q the conjugate
//! exponent, with norm [`l1q_norm`]. The pairing between the two sides is
//! the restricted trace of the product, [`pairing`].
//!
//! All singular values are computed by full SVD; p-th powers are taken in
//! log space with the largest singular value factored out, so norms of
//! badly scaled matrices neither overflow nor lose the leading digits.

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::operator::{commutator, make_d, BlockOperator, PolarizedSpace, SkewHermitian};

/// Exponent for a Schatten class: a finite p ≥ 1 or ∞ (operator norm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchattenExponent {
    /// ℓ^p sum over singular values, p ≥ 1.
    Finite(f64),
    /// Largest singular value.
    Infinity,
}

impl SchattenExponent {
    /// Validated constructor for a finite exponent.
    ///
    /// # Errors
    /// [`Error::InvalidExponent`] if `p` is NaN or below 1.
    pub fn finite(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidExponent { value: p });
        }
        Ok(Self::Finite(p))
    }

    /// The conjugate exponent: 1/p + 1/q = 1, with conjugate(1) = ∞ and
    /// conjugate(∞) = 1.
    pub fn conjugate(self) -> Self {
        match self {
            Self::Infinity => Self::Finite(1.0),
            Self::Finite(p) => {
                if p == 1.0 {
                    Self::Infinity
                } else {
                    Self::Finite(p / (p - 1.0))
                }
            }
        }
    }

    /// The finite value, if any.
    pub fn as_finite(self) -> Option<f64> {
        match self {
            Self::Finite(p) => Some(p),
            Self::Infinity => None,
        }
    }
}

impl std::fmt::Display for SchattenExponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Finite(p) => write!(f, "{p}"),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

/// Schatten norm of a raw matrix (any shape).
///
/// For p = ∞ this is the largest singular value. For finite p the sum
/// Σ σᵢ^p is evaluated as σ_max^p · Σ (σᵢ/σ_max)^p with the ratios raised
/// via `exp(p · ln r)`, which is stable across the range of f64.
pub fn matrix_schatten_norm(m: &CMatrix, p: SchattenExponent) -> f64 {
    let sv = linalg::singular_values_desc(m);
    schatten_from_singular_values(&sv, p)
}

fn schatten_from_singular_values(sv: &[f64], p: SchattenExponent) -> f64 {
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    if sigma_max == 0.0 {
        return 0.0;
    }
    match p {
        SchattenExponent::Infinity => sigma_max,
        SchattenExponent::Finite(p) => {
            let sum: f64 = sv
                .iter()
                .map(|&s| {
                    let r = s / sigma_max;
                    if r > 0.0 {
                        (p * r.ln()).exp()
                    } else {
                        0.0
                    }
                })
                .sum();
            sigma_max * (sum.ln() / p).exp()
        }
    }
}

/// Schatten norm of a block operator.
pub fn schatten_norm(a: &BlockOperator, p: SchattenExponent) -> f64 {
    matrix_schatten_norm(a.matrix(), p)
}

/// The restricted norm ‖A‖_∞ + ‖[d, A]‖_p.
pub fn restricted_norm(a: &BlockOperator, p: SchattenExponent) -> f64 {
    let d = make_d(a.space());
    let k = commutator(d.as_operator(), a);
    a.operator_norm() + schatten_norm(&k, p)
}

/// The predual norm ‖ρ₊₊‖₁ + ‖ρ₋₋‖₁ + ‖ρ₊₋‖_q + ‖ρ₋₊‖_q.
///
/// Diagonal blocks are measured in trace norm, off-diagonal blocks in the
/// Schatten q-norm, where q is conjugate to the p of the operator side.
pub fn l1q_norm(rho: &BlockOperator, q: SchattenExponent) -> f64 {
    let one = SchattenExponent::Finite(1.0);
    matrix_schatten_norm(&rho.block_pp(), one)
        + matrix_schatten_norm(&rho.block_mm(), one)
        + matrix_schatten_norm(&rho.block_pm(), q)
        + matrix_schatten_norm(&rho.block_mp(), q)
}

/// The restricted trace Tr_res(ρ) = Tr(ρ₊₊) + Tr(ρ₋₋): the sum of the two
/// diagonal-block traces, which at finite truncation agrees with the full
/// trace but is the form that survives the infinite-dimensional limit.
pub fn restricted_trace(rho: &BlockOperator) -> Complex<f64> {
    rho.block_pp().trace() + rho.block_mm().trace()
}

/// Relative tolerance on the imaginary residue accepted by [`pairing`].
pub const PAIRING_IMAGINARY_TOL: f64 = 1e-10;

/// The duality pairing ⟨ρ, A⟩ = Tr_res(ρ·A), as a real number.
///
/// For ρ in the predual of the restricted Lie algebra and A skew-Hermitian
/// restricted, the pairing is real. The full product is formed and its
/// restricted trace taken; the imaginary part must vanish within
/// `PAIRING_IMAGINARY_TOL · (1 + ‖ρ‖_F·‖A‖_F)` and is then discarded.
///
/// # Panics
/// If the operands live on different polarized spaces, or if the imaginary
/// residue exceeds the tolerance (which signals a non-dual pair of
/// arguments, a caller bug).
pub fn pairing(rho: &SkewHermitian, a: &SkewHermitian) -> f64 {
    let t = restricted_trace(&(rho.as_operator() * a.as_operator()));
    let scale = 1.0 + rho.frobenius_norm() * a.frobenius_norm();
    assert!(
        t.im.abs() <= PAIRING_IMAGINARY_TOL * scale,
        "pairing of skew-Hermitian operators must be real; imaginary residue {} exceeds {}",
        t.im.abs(),
        PAIRING_IMAGINARY_TOL * scale
    );
    t.re
}

/// Real basis of the skew-Hermitian operators u(n) on `space`, n = dim.
///
/// The basis consists of, in order: the n diagonal generators i·E_jj, then
/// for each pair j < k the real rotation E_jk − E_kj and the imaginary
/// symmetric generator i·(E_jk + E_kj). Altogether n² elements.
pub fn canonical_skew_basis(space: PolarizedSpace) -> Vec<SkewHermitian> {
    let n = space.dim();
    let mut basis = Vec::with_capacity(n * n);
    for j in 0..n {
        let mut m = CMatrix::zeros(n, n);
        m[(j, j)] = Complex::new(0.0, 1.0);
        basis.push(SkewHermitian::new_unchecked(
            BlockOperator::new(space, m).expect("square"),
        ));
    }
    for j in 0..n {
        for k in (j + 1)..n {
            let mut re = CMatrix::zeros(n, n);
            re[(j, k)] = Complex::new(1.0, 0.0);
            re[(k, j)] = Complex::new(-1.0, 0.0);
            basis.push(SkewHermitian::new_unchecked(
                BlockOperator::new(space, re).expect("square"),
            ));
            let mut im = CMatrix::zeros(n, n);
            im[(j, k)] = Complex::new(0.0, 1.0);
            im[(k, j)] = Complex::new(0.0, 1.0);
            basis.push(SkewHermitian::new_unchecked(
                BlockOperator::new(space, im).expect("square"),
            ));
        }
    }
    basis
}

/// Real basis of the off-diagonal part m_p of u(n): the subset of the
/// canonical basis supported on the (+−)/(−+) blocks. Has 2·n₊·n₋ elements.
pub fn offdiagonal_skew_basis(space: PolarizedSpace) -> Vec<SkewHermitian> {
    let np = space.n_plus();
    canonical_skew_basis(space)
        .into_iter()
        .filter(|b| {
            let m = b.matrix();
            let (n, _) = m.shape();
            (0..n).any(|j| {
                (0..n).any(|k| {
                    let cross = (j < np) != (k < np);
                    cross && m[(j, k)] != Complex::new(0.0, 0.0)
                })
            })
        })
        .collect()
}

/// Gram matrix of the duality pairing over a pair of bases; entry (i, j) is
/// ⟨rows[i], cols[j]⟩.
pub fn pairing_gram(rows: &[SkewHermitian], cols: &[SkewHermitian]) -> nalgebra::DMatrix<f64> {
    nalgebra::DMatrix::from_fn(rows.len(), cols.len(), |i, j| pairing(&rows[i], &cols[j]))
}

/// Rank of a real matrix by counting singular values above
/// `rel_tol · σ_max`.
pub fn numerical_rank(m: &nalgebra::DMatrix<f64>, rel_tol: f64) -> usize {
    linalg::numerical_rank_real(m, rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn space(np: usize, nm: usize) -> PolarizedSpace {
        PolarizedSpace::new(np, nm).unwrap()
    }

    #[test]
    fn conjugate_exponents_pair_up() {
        let two = SchattenExponent::finite(2.0).unwrap();
        assert_eq!(two.conjugate(), SchattenExponent::Finite(2.0));
        let one = SchattenExponent::finite(1.0).unwrap();
        assert_eq!(one.conjugate(), SchattenExponent::Infinity);
        assert_eq!(
            SchattenExponent::Infinity.conjugate(),
            SchattenExponent::Finite(1.0)
        );
        let p = SchattenExponent::finite(1.5).unwrap();
        match p.conjugate() {
            SchattenExponent::Finite(q) => assert_relative_eq!(q, 3.0),
            _ => panic!("expected finite conjugate"),
        }
    }

    #[test]
    fn exponent_rejects_below_one_and_nan() {
        assert!(SchattenExponent::finite(0.5).is_err());
        assert!(SchattenExponent::finite(f64::NAN).is_err());
        assert!(SchattenExponent::finite(f64::INFINITY).is_err());
        assert!(SchattenExponent::finite(1.0).is_ok());
    }

    /// Oracle: diag(3, 4) has singular values {4, 3}; p-norms are explicit.
    #[test]
    fn schatten_norm_on_known_diagonal() {
        let m =
            CMatrix::from_row_slice(2, 2, &[c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(4.0, 0.0)]);
        assert_relative_eq!(
            matrix_schatten_norm(&m, SchattenExponent::Finite(1.0)),
            7.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            matrix_schatten_norm(&m, SchattenExponent::Finite(2.0)),
            5.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            matrix_schatten_norm(&m, SchattenExponent::Infinity),
            4.0,
            epsilon = 1e-12
        );
        let p = 1.7;
        assert_relative_eq!(
            matrix_schatten_norm(&m, SchattenExponent::Finite(p)),
            (3f64.powf(p) + 4f64.powf(p)).powf(1.0 / p),
            epsilon = 1e-12
        );
    }

    #[test]
    fn schatten_norm_is_unitarily_invariant_under_permutation() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 1.5), c(2.0, -1.0)],
        );
        let perm =
            CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let p = SchattenExponent::Finite(1.3);
        assert_relative_eq!(
            matrix_schatten_norm(&(&perm * &m), p),
            matrix_schatten_norm(&m, p),
            epsilon = 1e-12
        );
    }

    #[test]
    fn schatten_norm_survives_extreme_scales() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(1e200, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1e200, 0.0)],
        );
        let v = matrix_schatten_norm(&m, SchattenExponent::Finite(2.0));
        assert!(v.is_finite());
        assert_relative_eq!(v, 1e200 * 2f64.sqrt(), max_relative = 1e-12);

        let tiny = CMatrix::from_row_slice(
            2,
            2,
            &[c(1e-200, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1e-200, 0.0)],
        );
        let w = matrix_schatten_norm(&tiny, SchattenExponent::Finite(2.0));
        assert!(w > 0.0);
        assert_relative_eq!(w, 1e-200 * 2f64.sqrt(), max_relative = 1e-12);
    }

    /// Oracle: d is block diagonal, so [d, d] = 0 and ‖d‖_res = ‖d‖_∞ = 1.
    #[test]
    fn restricted_norm_of_d_is_one() {
        for (np, nm) in [(1, 1), (2, 3)] {
            let d = make_d(space(np, nm));
            assert_relative_eq!(
                restricted_norm(d.as_operator(), SchattenExponent::Finite(2.0)),
                1.0,
                epsilon = 1e-12
            );
        }
    }

    /// Oracle at (1, 1): A with unit off-diagonal block has ‖A‖_∞ = 1 and
    /// [d, A] has two singular values equal to 2, so at p = 2 the
    /// restricted norm is 1 + 2√2.
    #[test]
    fn restricted_norm_offdiagonal_oracle() {
        let sp = space(1, 1);
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 0)] = c(-1.0, 0.0);
        let a = BlockOperator::new(sp, m).unwrap();
        assert_relative_eq!(
            restricted_norm(&a, SchattenExponent::Finite(2.0)),
            1.0 + 2.0 * 2f64.sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn l1q_norm_splits_blocks() {
        let sp = space(1, 1);
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(0.0, 2.0);
        m[(1, 1)] = c(0.0, -3.0);
        m[(0, 1)] = c(4.0, 0.0);
        m[(1, 0)] = c(-4.0, 0.0);
        let rho = BlockOperator::new(sp, m).unwrap();
        assert_relative_eq!(
            l1q_norm(&rho, SchattenExponent::Finite(2.0)),
            2.0 + 3.0 + 4.0 + 4.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn restricted_trace_agrees_with_full_trace_at_finite_truncation() {
        let sp = space(2, 2);
        let mut m = CMatrix::zeros(4, 4);
        m[(0, 0)] = c(1.0, 2.0);
        m[(1, 1)] = c(-0.5, 1.0);
        m[(2, 2)] = c(3.0, -4.0);
        m[(3, 3)] = c(0.25, 0.0);
        m[(0, 3)] = c(9.0, 9.0);
        let a = BlockOperator::new(sp, m.clone()).unwrap();
        let t = restricted_trace(&a);
        let full = m.trace();
        assert_relative_eq!(t.re, full.re, epsilon = 1e-14);
        assert_relative_eq!(t.im, full.im, epsilon = 1e-14);
    }

    /// Oracle: the pairing equals the three-term block formula
    /// Tr(a₊₊ρ₊₊) + 2·Re Tr(a₊₋ρ₋₊) + Tr(a₋₋ρ₋₋) for skew pairs.
    #[test]
    fn pairing_matches_block_formula() {
        let sp = space(2, 3);
        let n = sp.dim();
        let mut am = CMatrix::zeros(n, n);
        am[(0, 1)] = c(0.3, 0.7);
        am[(1, 0)] = -am[(0, 1)].conj();
        am[(0, 3)] = c(-1.1, 0.2);
        am[(3, 0)] = -am[(0, 3)].conj();
        am[(2, 4)] = c(0.0, 0.9);
        am[(4, 2)] = -am[(2, 4)].conj();
        am[(1, 1)] = c(0.0, -2.0);
        let a = SkewHermitian::new(BlockOperator::new(sp, am).unwrap()).unwrap();

        let mut rm = CMatrix::zeros(n, n);
        rm[(1, 4)] = c(0.5, -0.25);
        rm[(4, 1)] = -rm[(1, 4)].conj();
        rm[(0, 0)] = c(0.0, 1.5);
        rm[(3, 2)] = c(0.0, 0.6);
        rm[(2, 3)] = c(0.0, 0.6);
        let rho = SkewHermitian::new(BlockOperator::new(sp, rm).unwrap()).unwrap();

        let lhs = pairing(&rho, &a);
        let block = (a.block_pp() * rho.block_pp()).trace()
            + (a.block_mm() * rho.block_mm()).trace()
            + (a.block_pm() * rho.block_mp()).trace() * c(2.0, 0.0);
        assert!(block.im.abs() < 1e-12);
        assert_relative_eq!(lhs, block.re, epsilon = 1e-12);
    }

    #[test]
    #[should_panic(expected = "must be real")]
    fn pairing_rejects_non_dual_arguments() {
        let sp = space(1, 1);
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(1.0, 0.0);
        let not_skew = SkewHermitian::new_unchecked(BlockOperator::new(sp, m).unwrap());
        let d = make_d(sp);
        let _ = pairing(&not_skew, &d);
    }

    #[test]
    fn canonical_basis_has_n_squared_elements_and_spans() {
        let sp = space(2, 1);
        let basis = canonical_skew_basis(sp);
        assert_eq!(basis.len(), 9);
        for b in &basis {
            let defect = (b.matrix() + b.matrix().adjoint()).norm();
            assert_eq!(defect, 0.0);
        }
        // Pairwise Frobenius inner products are diagonal: the basis is orthogonal.
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                let ip = (bi.matrix().adjoint() * bj.matrix()).trace().re;
                if i == j {
                    assert!(ip > 0.0);
                } else {
                    assert_eq!(ip, 0.0);
                }
            }
        }
    }

    #[test]
    fn offdiagonal_basis_counts_cross_block_pairs() {
        let sp = space(2, 3);
        let basis = offdiagonal_skew_basis(sp);
        assert_eq!(basis.len(), 2 * 2 * 3);
        for b in &basis {
            assert_eq!(b.diagonal_part().frobenius_norm(), 0.0);
        }
    }

    /// Hölder-type bound: |⟨ρ, A⟩| ≤ ‖ρ‖_{1,q} · ‖A‖_{res,p} on a few
    /// hand-built pairs.
    #[test]
    fn pairing_respects_duality_bound() {
        let sp = space(2, 2);
        let n = sp.dim();
        let p = SchattenExponent::Finite(2.0);
        let q = p.conjugate();
        let mut am = CMatrix::zeros(n, n);
        am[(0, 2)] = c(0.4, -0.6);
        am[(2, 0)] = -am[(0, 2)].conj();
        am[(1, 1)] = c(0.0, 0.8);
        am[(3, 3)] = c(0.0, -0.3);
        let a = SkewHermitian::new(BlockOperator::new(sp, am).unwrap()).unwrap();
        let mut rm = CMatrix::zeros(n, n);
        rm[(1, 3)] = c(-0.2, 0.9);
        rm[(3, 1)] = -rm[(1, 3)].conj();
        rm[(0, 0)] = c(0.0, 0.5);
        let rho = SkewHermitian::new(BlockOperator::new(sp, rm).unwrap()).unwrap();
        let lhs = pairing(&rho, &a).abs();
        let rhs = l1q_norm(rho.as_operator(), q) * restricted_norm(a.as_operator(), p);
        assert!(lhs <= rhs + 1e-12, "pairing {lhs} exceeds bound {rhs}");
    }
}
