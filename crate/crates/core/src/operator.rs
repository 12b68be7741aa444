//! Polarized-space bookkeeping and block operator arithmetic.
//!
//! A polarized Hilbert space H = H₊ ⊕ H₋ is represented at finite truncation
//! by a [`PolarizedSpace`] holding the two block dimensions (n₊, n₋). Every
//! operator on the truncation is a dense complex n×n matrix carried by a
//! [`BlockOperator`], whose four blocks
//!
//! ```text
//!         A = ( A₊₊  A₊₋ )
//!             ( A₋₊  A₋₋ )
//! ```
//!
//! are split at row/column n₊. The sign operator d = i(pr₊ − pr₋) built by
//! [`make_d`] drives everything downstream: commutators with d isolate the
//! off-diagonal blocks, and the restricted norms and the Schwinger cocycle are
//! defined through it.
//!
//! Two validated refinements narrow `BlockOperator`: [`SkewHermitian`]
//! (elements of the unitary Lie algebra, A* = −A) and [`RestrictedUnitary`]
//! (group elements, u*u = uu* = I). Their constructors enforce the defining
//! identity within `1e−10·(1 + ‖·‖)`, so downstream code can rely on it.

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Relative tolerance for the skew-Hermitian and unitary invariants.
pub const STRUCTURE_TOL: f64 = 1e-10;

/// Finite truncation of a polarized Hilbert space H = H₊ ⊕ H₋.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolarizedSpace {
    n_plus: usize,
    n_minus: usize,
}

impl PolarizedSpace {
    /// Create a truncation with `n_plus` dimensions kept on H₊ and `n_minus` on H₋.
    ///
    /// # Errors
    /// [`Error::InvalidSpace`] if either side is empty.
    pub fn new(n_plus: usize, n_minus: usize) -> Result<Self> {
        if n_plus == 0 || n_minus == 0 {
            return Err(Error::InvalidSpace { n_plus, n_minus });
        }
        Ok(Self { n_plus, n_minus })
    }

    /// Dimension kept on H₊.
    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    /// Dimension kept on H₋.
    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    /// Total dimension n = n₊ + n₋.
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// Orthogonal projection onto H₊ as a raw matrix.
    pub(crate) fn pr_plus_matrix(&self) -> CMatrix {
        let n = self.dim();
        CMatrix::from_fn(n, n, |i, j| {
            if i == j && i < self.n_plus {
                Complex::new(1.0, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        })
    }
}

impl std::fmt::Display for PolarizedSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.n_plus, self.n_minus)
    }
}

/// Dense operator on a polarized truncation, addressed by blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOperator {
    space: PolarizedSpace,
    matrix: CMatrix,
}

impl BlockOperator {
    /// Wrap an n×n matrix as an operator on `space`.
    ///
    /// # Errors
    /// [`Error::ShapeMismatch`] if the matrix is not n×n for n = `space.dim()`.
    pub fn new(space: PolarizedSpace, matrix: CMatrix) -> Result<Self> {
        let n = space.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::ShapeMismatch {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                expected_rows: n,
                expected_cols: n,
            });
        }
        Ok(Self { space, matrix })
    }

    /// The zero operator.
    pub fn zeros(space: PolarizedSpace) -> Self {
        let n = space.dim();
        Self {
            space,
            matrix: CMatrix::zeros(n, n),
        }
    }

    /// The identity operator.
    pub fn identity(space: PolarizedSpace) -> Self {
        let n = space.dim();
        Self {
            space,
            matrix: CMatrix::identity(n, n),
        }
    }

    /// Assemble an operator from its four blocks.
    ///
    /// # Errors
    /// [`Error::ShapeMismatch`] if any block has the wrong shape for `space`.
    pub fn from_blocks(
        space: PolarizedSpace,
        pp: CMatrix,
        pm: CMatrix,
        mp: CMatrix,
        mm: CMatrix,
    ) -> Result<Self> {
        let (np, nm) = (space.n_plus(), space.n_minus());
        let check = |m: &CMatrix, rows: usize, cols: usize| -> Result<()> {
            if m.nrows() != rows || m.ncols() != cols {
                Err(Error::ShapeMismatch {
                    rows: m.nrows(),
                    cols: m.ncols(),
                    expected_rows: rows,
                    expected_cols: cols,
                })
            } else {
                Ok(())
            }
        };
        check(&pp, np, np)?;
        check(&pm, np, nm)?;
        check(&mp, nm, np)?;
        check(&mm, nm, nm)?;
        let mut matrix = CMatrix::zeros(space.dim(), space.dim());
        matrix.view_mut((0, 0), (np, np)).copy_from(&pp);
        matrix.view_mut((0, np), (np, nm)).copy_from(&pm);
        matrix.view_mut((np, 0), (nm, np)).copy_from(&mp);
        matrix.view_mut((np, np), (nm, nm)).copy_from(&mm);
        Ok(Self { space, matrix })
    }

    /// The space this operator acts on.
    pub fn space(&self) -> PolarizedSpace {
        self.space
    }

    /// Borrow the underlying matrix.
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Consume the operator, returning its matrix.
    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// The ++ block (n₊×n₊).
    pub fn block_pp(&self) -> CMatrix {
        let np = self.space.n_plus();
        self.matrix.view((0, 0), (np, np)).into_owned()
    }

    /// The +− block (n₊×n₋).
    pub fn block_pm(&self) -> CMatrix {
        let (np, nm) = (self.space.n_plus(), self.space.n_minus());
        self.matrix.view((0, np), (np, nm)).into_owned()
    }

    /// The −+ block (n₋×n₊).
    pub fn block_mp(&self) -> CMatrix {
        let (np, nm) = (self.space.n_plus(), self.space.n_minus());
        self.matrix.view((np, 0), (nm, np)).into_owned()
    }

    /// The −− block (n₋×n₋).
    pub fn block_mm(&self) -> CMatrix {
        let (np, nm) = (self.space.n_plus(), self.space.n_minus());
        self.matrix.view((np, np), (nm, nm)).into_owned()
    }

    /// Adjoint A*: conjugate transpose; blocks satisfy (A*)₊₋ = (A₋₊)*.
    pub fn adjoint(&self) -> Self {
        Self {
            space: self.space,
            matrix: self.matrix.adjoint(),
        }
    }

    /// Multiply by a complex scalar.
    pub fn scale(&self, c: Complex<f64>) -> Self {
        Self {
            space: self.space,
            matrix: self.matrix.map(|z| z * c),
        }
    }

    /// Multiply by a real scalar.
    pub fn scale_re(&self, r: f64) -> Self {
        Self {
            space: self.space,
            matrix: self.matrix.map(|z| z * r),
        }
    }

    /// Keep the two diagonal blocks, zero the off-diagonal ones.
    pub fn diagonal_part(&self) -> Self {
        let mut matrix = self.matrix.clone();
        let (np, nm) = (self.space.n_plus(), self.space.n_minus());
        matrix
            .view_mut((0, np), (np, nm))
            .fill(Complex::new(0.0, 0.0));
        matrix
            .view_mut((np, 0), (nm, np))
            .fill(Complex::new(0.0, 0.0));
        Self {
            space: self.space,
            matrix,
        }
    }

    /// Keep the two off-diagonal blocks, zero the diagonal ones.
    pub fn offdiagonal_part(&self) -> Self {
        let mut matrix = self.matrix.clone();
        let (np, nm) = (self.space.n_plus(), self.space.n_minus());
        matrix
            .view_mut((0, 0), (np, np))
            .fill(Complex::new(0.0, 0.0));
        matrix
            .view_mut((np, np), (nm, nm))
            .fill(Complex::new(0.0, 0.0));
        Self {
            space: self.space,
            matrix,
        }
    }

    /// Operator (spectral) norm.
    pub fn operator_norm(&self) -> f64 {
        linalg::operator_norm(&self.matrix)
    }

    /// Frobenius (Hilbert-Schmidt) norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.norm()
    }

    fn assert_same_space(&self, other: &Self, what: &str) {
        assert_eq!(
            self.space, other.space,
            "{what} requires operators on the same polarized space, got {} and {}",
            self.space, other.space
        );
    }
}

impl std::ops::Add for &BlockOperator {
    type Output = BlockOperator;
    /// # Panics
    /// If the operands live on different polarized spaces.
    fn add(self, rhs: &BlockOperator) -> BlockOperator {
        self.assert_same_space(rhs, "operator addition");
        BlockOperator {
            space: self.space,
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl std::ops::Sub for &BlockOperator {
    type Output = BlockOperator;
    /// # Panics
    /// If the operands live on different polarized spaces.
    fn sub(self, rhs: &BlockOperator) -> BlockOperator {
        self.assert_same_space(rhs, "operator subtraction");
        BlockOperator {
            space: self.space,
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

impl std::ops::Neg for &BlockOperator {
    type Output = BlockOperator;
    fn neg(self) -> BlockOperator {
        BlockOperator {
            space: self.space,
            matrix: -&self.matrix,
        }
    }
}

impl std::ops::Mul for &BlockOperator {
    type Output = BlockOperator;
    /// Operator composition.
    ///
    /// # Panics
    /// If the operands live on different polarized spaces.
    fn mul(self, rhs: &BlockOperator) -> BlockOperator {
        self.assert_same_space(rhs, "operator composition");
        BlockOperator {
            space: self.space,
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

/// Skew-Hermitian operator: A* = −A, an element of the unitary Lie algebra.
///
/// Equivalently the blocks satisfy A₋₊ = −(A₊₋)* and the diagonal blocks are
/// themselves skew-Hermitian. Dereferences to [`BlockOperator`] for read access.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewHermitian(BlockOperator);

impl SkewHermitian {
    /// Validate and wrap: requires ‖A + A*‖ ≤ `STRUCTURE_TOL`·(1 + ‖A‖) in
    /// operator norm.
    ///
    /// # Errors
    /// [`Error::NotSkewHermitian`] when the defect exceeds the tolerance.
    pub fn new(op: BlockOperator) -> Result<Self> {
        let defect = linalg::operator_norm(&(&op.matrix + op.matrix.adjoint()));
        let tolerance = STRUCTURE_TOL * (1.0 + linalg::operator_norm(&op.matrix));
        if defect > tolerance {
            return Err(Error::NotSkewHermitian { defect, tolerance });
        }
        Ok(Self(op))
    }

    /// Project onto the skew-Hermitian part, (A − A*)/2. Total: never fails.
    pub fn skew_part(op: &BlockOperator) -> Self {
        let matrix = (&op.matrix - op.matrix.adjoint()).map(|z| z * 0.5);
        Self(BlockOperator {
            space: op.space,
            matrix,
        })
    }

    /// Wrap without validating; for constructions that are skew by algebra.
    pub(crate) fn new_unchecked(op: BlockOperator) -> Self {
        Self(op)
    }

    /// The zero element.
    pub fn zeros(space: PolarizedSpace) -> Self {
        Self(BlockOperator::zeros(space))
    }

    /// Borrow as a general block operator.
    pub fn as_operator(&self) -> &BlockOperator {
        &self.0
    }

    /// Consume into a general block operator.
    pub fn into_operator(self) -> BlockOperator {
        self.0
    }

    /// Project onto the off-diagonal complement m_p (diagonal blocks zeroed).
    /// Closed on skew-Hermitian operators.
    pub fn offdiagonal(&self) -> Self {
        Self(self.0.offdiagonal_part())
    }

    /// Keep only the diagonal blocks (the isotropy directions).
    pub fn diagonal(&self) -> Self {
        Self(self.0.diagonal_part())
    }

    /// Scale by a real factor (skew-Hermitian is a real vector space).
    pub fn scale_re(&self, r: f64) -> Self {
        Self(self.0.scale_re(r))
    }
}

impl std::ops::Deref for SkewHermitian {
    type Target = BlockOperator;
    fn deref(&self) -> &BlockOperator {
        &self.0
    }
}

impl std::ops::Add for &SkewHermitian {
    type Output = SkewHermitian;
    /// # Panics
    /// If the operands live on different polarized spaces.
    fn add(self, rhs: &SkewHermitian) -> SkewHermitian {
        SkewHermitian(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &SkewHermitian {
    type Output = SkewHermitian;
    /// # Panics
    /// If the operands live on different polarized spaces.
    fn sub(self, rhs: &SkewHermitian) -> SkewHermitian {
        SkewHermitian(&self.0 - &rhs.0)
    }
}

impl std::ops::Neg for &SkewHermitian {
    type Output = SkewHermitian;
    fn neg(self) -> SkewHermitian {
        SkewHermitian(-&self.0)
    }
}

/// Unitary operator on the truncation: u*u = uu* = I.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedUnitary(BlockOperator);

impl RestrictedUnitary {
    /// Validate and wrap: requires both ‖u*u − I‖ and ‖uu* − I‖ at most
    /// `STRUCTURE_TOL`·(1 + ‖u‖) in operator norm.
    ///
    /// # Errors
    /// [`Error::NotUnitary`] when either defect exceeds the tolerance.
    pub fn new(op: BlockOperator) -> Result<Self> {
        let n = op.space.dim();
        let id = CMatrix::identity(n, n);
        let left = linalg::operator_norm(&(op.matrix.adjoint() * &op.matrix - &id));
        let right = linalg::operator_norm(&(&op.matrix * op.matrix.adjoint() - &id));
        let defect = left.max(right);
        let tolerance = STRUCTURE_TOL * (1.0 + linalg::operator_norm(&op.matrix));
        if defect > tolerance {
            return Err(Error::NotUnitary { defect, tolerance });
        }
        Ok(Self(op))
    }

    /// The identity element.
    pub fn identity(space: PolarizedSpace) -> Self {
        Self(BlockOperator::identity(space))
    }

    /// Borrow as a general block operator.
    pub fn as_operator(&self) -> &BlockOperator {
        &self.0
    }

    /// The inverse, which for a unitary is the adjoint.
    pub fn inverse(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Conjugate an operator: g X g*.
    ///
    /// # Panics
    /// If `x` lives on a different polarized space.
    pub fn conjugate(&self, x: &BlockOperator) -> BlockOperator {
        &(&self.0 * x) * &self.0.adjoint()
    }

    /// Conjugate a skew-Hermitian operator; the result is skew-Hermitian
    /// (projected to scrub roundoff).
    ///
    /// # Panics
    /// If `x` lives on a different polarized space.
    pub fn conjugate_skew(&self, x: &SkewHermitian) -> SkewHermitian {
        SkewHermitian::skew_part(&self.conjugate(x.as_operator()))
    }
}

impl std::ops::Deref for RestrictedUnitary {
    type Target = BlockOperator;
    fn deref(&self) -> &BlockOperator {
        &self.0
    }
}

impl std::ops::Mul for &RestrictedUnitary {
    type Output = RestrictedUnitary;
    /// Group multiplication.
    ///
    /// # Panics
    /// If the operands live on different polarized spaces.
    fn mul(self, rhs: &RestrictedUnitary) -> RestrictedUnitary {
        RestrictedUnitary(&self.0 * &rhs.0)
    }
}

/// The sign operator d = i(pr₊ − pr₋): block-diagonal with i·I on the ++ block
/// and −i·I on the −− block. Satisfies d* = −d and d² = −I exactly.
pub fn make_d(space: PolarizedSpace) -> SkewHermitian {
    let n = space.dim();
    let matrix = CMatrix::from_fn(n, n, |i, j| {
        if i != j {
            Complex::new(0.0, 0.0)
        } else if i < space.n_plus() {
            Complex::new(0.0, 1.0)
        } else {
            Complex::new(0.0, -1.0)
        }
    });
    SkewHermitian::new_unchecked(BlockOperator { space, matrix })
}

/// Commutator [A, B] = AB − BA.
///
/// # Panics
/// If the operands live on different polarized spaces.
pub fn commutator(a: &BlockOperator, b: &BlockOperator) -> BlockOperator {
    &(a * b) - &(b * a)
}

/// Commutator of skew-Hermitian operators, projected back onto the
/// skew-Hermitian part to scrub roundoff (the bracket is closed algebraically).
///
/// # Panics
/// If the operands live on different polarized spaces.
pub fn skew_commutator(a: &SkewHermitian, b: &SkewHermitian) -> SkewHermitian {
    SkewHermitian::skew_part(&commutator(a.as_operator(), b.as_operator()))
}

/// Matrix exponential of a skew-Hermitian operator.
///
/// Computed by eigendecomposition of the Hermitian matrix −iA: with
/// −iA = QΛQ*, exp(A) = Q·exp(iΛ)·Q*, which is unitary by construction.
///
/// # Panics
/// If the result fails the unitary invariant, which indicates a defective
/// eigendecomposition and is a bug, not a caller error.
pub fn exp_skew(a: &SkewHermitian) -> RestrictedUnitary {
    let h = linalg::hermitian_part(&a.matrix().map(|z| z * Complex::new(0.0, -1.0)));
    let eig = h.symmetric_eigen();
    let n = a.space().dim();
    let mut phases = CMatrix::zeros(n, n);
    for (idx, lambda) in eig.eigenvalues.iter().enumerate() {
        phases[(idx, idx)] = Complex::new(0.0, *lambda).exp();
    }
    let matrix = &eig.eigenvectors * phases * eig.eigenvectors.adjoint();
    let op = BlockOperator {
        space: a.space(),
        matrix,
    };
    RestrictedUnitary::new(op).expect("exponential of a skew-Hermitian operator is unitary")
}
