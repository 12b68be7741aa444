//! The restricted Grassmannian at finite truncation: points, charts,
//! transitions, index, and the constructive Fredholm regularizer.
//!
//! A point is a subspace W of the truncation, held as an orthonormal frame
//! together with its cached orthogonal projection P_W = frame·frame*. The
//! projection, not the frame, is the identity of the point; frames are gauge
//! (any unitary recombination of the columns names the same subspace).
//!
//! Membership in the restricted Grassmannian is quantified, not assumed:
//! [`membership_defect`] returns ‖P_W − pr₊‖_p, which is finite at every
//! truncation and either stabilizes or diverges along a truncation family.
//! Subspaces comparable to H₊ carry an integer [`relative_index`]
//! (the Fredholm index of the projection W → H₊ at truncation), which
//! labels connected components.
//!
//! Around every point V the atlas provides the graph chart
//!
//! ```text
//!     φ_V(W) = pr_{V⊥} pr_W pr_V (pr_V pr_W pr_V)⁻¹ : V → V⊥,
//! ```
//!
//! computed in frame/coframe coordinates; [`chart_inverse`] rebuilds the
//! subspace as the graph {x + Ax : x ∈ V}, and [`transition`] is the Möbius
//! map (c + dA)(a + bA)⁻¹ between overlapping charts.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{entries_from_matrix, matrix_from_entries};
use crate::linalg::{self, CMatrix};
use crate::operator::{BlockOperator, PolarizedSpace, RestrictedUnitary, STRUCTURE_TOL};
use crate::schatten::{matrix_schatten_norm, SchattenExponent};

/// Chart domain guard: W lies in the chart of V only when the smallest
/// singular value of pr_V pr_W pr_V (restricted to V) exceeds this.
pub const CHART_TOL: f64 = 1e-8;

/// Guard band around integers for the relative index.
pub const INDEX_GUARD: f64 = 0.1;

/// Relative singular-value threshold for frame rank checks.
const FRAME_RANK_TOL: f64 = 1e-8;

/// A point of the truncated Grassmannian: a k-dimensional subspace.
#[derive(Debug, Clone)]
pub struct GrassmannPoint {
    space: PolarizedSpace,
    frame: CMatrix,
    projection: CMatrix,
}

impl GrassmannPoint {
    /// The canonical point H₊ (frame = first n₊ standard basis vectors).
    pub fn h_plus(space: PolarizedSpace) -> Self {
        let n = space.dim();
        let np = space.n_plus();
        let frame = CMatrix::identity(n, n).columns(0, np).into_owned();
        let projection = space.pr_plus_matrix();
        Self {
            space,
            frame,
            projection,
        }
    }

    /// The canonical point H₋ (frame = last n₋ standard basis vectors).
    pub fn h_minus(space: PolarizedSpace) -> Self {
        let n = space.dim();
        let np = space.n_plus();
        let frame = CMatrix::identity(n, n).columns(np, n - np).into_owned();
        let projection = &CMatrix::identity(n, n) - space.pr_plus_matrix();
        Self {
            space,
            frame,
            projection,
        }
    }

    pub(crate) fn from_parts(space: PolarizedSpace, frame: CMatrix, projection: CMatrix) -> Self {
        Self {
            space,
            frame,
            projection,
        }
    }

    /// The ambient polarized space.
    pub fn space(&self) -> PolarizedSpace {
        self.space
    }

    /// Subspace dimension k at this truncation.
    pub fn k(&self) -> usize {
        self.frame.ncols()
    }

    /// The orthonormal frame (n×k).
    pub fn frame(&self) -> &CMatrix {
        &self.frame
    }

    /// The cached orthogonal projection P_W (n×n).
    pub fn projection(&self) -> &CMatrix {
        &self.projection
    }

    /// The projection wrapped as a block operator.
    pub fn projection_operator(&self) -> BlockOperator {
        BlockOperator::new(self.space, self.projection.clone()).expect("projection is n×n")
    }

    /// Distance between two points as subspaces: ‖P_W − P_V‖ (operator norm).
    ///
    /// # Panics
    /// If the points live on different polarized spaces.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(
            self.space, other.space,
            "distance requires points on the same polarized space"
        );
        linalg::operator_norm(&(&self.projection - &other.projection))
    }

    /// Deterministic orthonormal frame of the orthogonal complement W⊥
    /// (n×(n−k)).
    ///
    /// Columns are the eigenvectors of I − P_W with eigenvalue above 1/2,
    /// phase-normalized so the entry of largest modulus in each column is
    /// positive real. Determinism matters: chart operations recompute the
    /// coframe and must land in the same gauge.
    pub fn coframe(&self) -> CMatrix {
        let n = self.space.dim();
        let q = CMatrix::identity(n, n) - &self.projection;
        range_frame(&q)
    }
}

/// Orthonormal basis of the range of a (near-)projection matrix: the
/// eigenvectors of its Hermitian part with eigenvalue above 1/2, each
/// phase-normalized so its entry of largest modulus is positive real.
/// Deterministic in the input bits.
pub(crate) fn range_frame(q: &CMatrix) -> CMatrix {
    let n = q.nrows();
    let eig = linalg::hermitian_part(q).symmetric_eigen();
    let cols: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
    let mut out = CMatrix::zeros(n, cols.len());
    for (out_idx, &idx) in cols.iter().enumerate() {
        let mut col = eig.eigenvectors.column(idx).into_owned();
        let mut best = 0usize;
        let mut best_mod = 0.0f64;
        for (i, z) in col.iter().enumerate() {
            if z.norm() > best_mod {
                best_mod = z.norm();
                best = i;
            }
        }
        if best_mod > 0.0 {
            let phase = col[best] / Complex::new(best_mod, 0.0);
            col = col.map(|z| z * phase.conj());
        }
        out.column_mut(out_idx).copy_from(&col);
    }
    out
}

/// Serialized Grassmannian point: the frame in the shared matrix exchange
/// format plus the subspace dimension k.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrassmannPointJson {
    /// Dimension kept on H₊.
    pub n_plus: usize,
    /// Dimension kept on H₋.
    pub n_minus: usize,
    /// Subspace dimension (column count of the frame).
    pub k: usize,
    /// Row-major frame entries, each as `[re, im]`.
    pub entries: Vec<Vec<[f64; 2]>>,
}

/// Serialize a point as its frame plus k.
pub fn point_to_json(point: &GrassmannPoint) -> GrassmannPointJson {
    GrassmannPointJson {
        n_plus: point.space().n_plus(),
        n_minus: point.space().n_minus(),
        k: point.k(),
        entries: entries_from_matrix(point.frame()),
    }
}

/// Deserialize a point; the frame is re-orthonormalized through
/// [`point_from_frame`], so mild roundtrip noise is absorbed.
///
/// # Errors
/// Malformed entries, inconsistent shape against (n, k), or a
/// rank-deficient frame.
pub fn point_from_json(json: &GrassmannPointJson) -> Result<GrassmannPoint> {
    let space = PolarizedSpace::new(json.n_plus, json.n_minus)?;
    let frame = matrix_from_entries(&json.entries)?;
    if frame.nrows() != space.dim() || frame.ncols() != json.k {
        return Err(Error::ShapeMismatch {
            rows: frame.nrows(),
            cols: frame.ncols(),
            expected_rows: space.dim(),
            expected_cols: json.k,
        });
    }
    point_from_frame(space, frame)
}

/// Build a point from a spanning frame. Columns are orthonormalized by QR
/// unless they already are orthonormal, in which case the frame is kept
/// bitwise (so re-application is exactly idempotent).
///
/// # Errors
/// [`Error::RankDeficientFrame`] if the columns are numerically dependent
/// (rank below the column count at relative threshold 1e−8).
///
/// # Panics
/// If the frame has no columns or more columns than the ambient dimension.
pub fn point_from_frame(space: PolarizedSpace, frame: CMatrix) -> Result<GrassmannPoint> {
    let n = space.dim();
    let k = frame.ncols();
    assert!(k >= 1, "a frame needs at least one column");
    assert!(
        frame.nrows() == n && k <= n,
        "frame must be n×k with k ≤ n = {n}, got {}×{k}",
        frame.nrows()
    );
    let rank = linalg::numerical_rank_complex(&frame, FRAME_RANK_TOL);
    if rank < k {
        return Err(Error::RankDeficientFrame { rank, cols: k });
    }
    let gram_defect = linalg::operator_norm(&(frame.adjoint() * &frame - CMatrix::identity(k, k)));
    let ortho = if gram_defect <= STRUCTURE_TOL * (1.0 + linalg::operator_norm(&frame)) {
        frame
    } else {
        frame.qr().q()
    };
    let projection = &ortho * ortho.adjoint();
    Ok(GrassmannPoint::from_parts(space, ortho, projection))
}

/// ‖P_W − pr₊‖_p: how far W is from the base point in the Schatten metric.
///
/// Finite at every truncation; along a truncation family, stabilization
/// certifies restricted-Grassmannian membership and divergence refutes it.
pub fn membership_defect(w: &GrassmannPoint, p: SchattenExponent) -> f64 {
    let diff = &w.projection - w.space().pr_plus_matrix();
    matrix_schatten_norm(&diff, p)
}

/// The relative index k − n₊ = Tr(P_W − pr₊), the truncated Fredholm index
/// of pr₊ restricted to W. Labels connected components.
///
/// # Errors
/// [`Error::NonIntegerIndex`] when the trace strays more than 0.1 from an
/// integer, which signals that the input projection is broken.
pub fn relative_index(w: &GrassmannPoint) -> Result<i64> {
    let diff = &w.projection - w.space().pr_plus_matrix();
    let trace = diff.trace().re;
    let rounded = trace.round();
    if (trace - rounded).abs() > INDEX_GUARD {
        return Err(Error::NonIntegerIndex {
            trace,
            guard: INDEX_GUARD,
        });
    }
    Ok(rounded as i64)
}

/// The orthogonal complement W⊥.
///
/// The stored projection is literally I − P_W (no recomputation from the
/// frame), so the dual-Grassmannian symmetry
/// pr_{W⊥} − pr₋ = −(pr_W − pr₊) holds with no algorithmic tolerance:
/// off-diagonal and ++ entries agree bitwise, and −− diagonal entries agree
/// to one floating-point rounding (the subtraction from 1 cannot preserve
/// the low mantissa bits of entries below 1/2).
pub fn orthocomplement(w: &GrassmannPoint) -> GrassmannPoint {
    let n = w.space().dim();
    let projection = CMatrix::identity(n, n) - &w.projection;
    let frame = w.coframe();
    GrassmannPoint::from_parts(w.space(), frame, projection)
}

/// A subspace in the coordinates of a chart: the graph operator A : V → V⊥
/// expressed in the base's frame and coframe, as an (n−k)×k matrix.
#[derive(Debug, Clone)]
pub struct ChartValue {
    base: GrassmannPoint,
    graph_op: CMatrix,
}

impl ChartValue {
    /// Wrap a graph operator over a chart base.
    ///
    /// # Errors
    /// [`Error::ShapeMismatch`] unless `graph_op` is (n−k)×k for the base.
    pub fn new(base: GrassmannPoint, graph_op: CMatrix) -> Result<Self> {
        let (n, k) = (base.space().dim(), base.k());
        if graph_op.nrows() != n - k || graph_op.ncols() != k {
            return Err(Error::ShapeMismatch {
                rows: graph_op.nrows(),
                cols: graph_op.ncols(),
                expected_rows: n - k,
                expected_cols: k,
            });
        }
        Ok(Self { base, graph_op })
    }

    /// The chart center V.
    pub fn base(&self) -> &GrassmannPoint {
        &self.base
    }

    /// The graph operator in frame/coframe coordinates.
    pub fn graph_op(&self) -> &CMatrix {
        &self.graph_op
    }
}

/// Chart map φ_V at the point W: the graph operator A with W = graph(A)
/// over V.
///
/// In coordinates: A = (u* P_W v)·(v* P_W v)⁻¹ with v the frame and u the
/// coframe of V.
///
/// # Errors
/// [`Error::OutsideChartDomain`] when the smallest singular value of
/// v* P_W v is at most [`CHART_TOL`] (W not transverse to V⊥).
///
/// # Panics
/// If the points live on different polarized spaces.
pub fn chart_forward(v: &GrassmannPoint, w: &GrassmannPoint) -> Result<ChartValue> {
    assert_eq!(
        v.space(),
        w.space(),
        "chart_forward requires points on the same polarized space"
    );
    let frame = v.frame();
    let coframe = v.coframe();
    let m = frame.adjoint() * &w.projection * frame;
    let smallest = linalg::singular_values_desc(&m)
        .last()
        .copied()
        .unwrap_or(0.0);
    if smallest <= CHART_TOL {
        return Err(Error::OutsideChartDomain {
            smallest_singular_value: smallest,
            chart_tol: CHART_TOL,
        });
    }
    let n_block = coframe.adjoint() * &w.projection * frame;
    let m_inv = m.try_inverse().expect("guarded by singular-value check");
    ChartValue::new(v.clone(), n_block * m_inv)
}

/// Chart inverse: the subspace {x + Ax : x ∈ V}, with frame v + u·A
/// re-orthonormalized.
pub fn chart_inverse(value: &ChartValue) -> GrassmannPoint {
    let base = value.base();
    let graph_frame = base.frame() + base.coframe() * value.graph_op();
    point_from_frame(base.space(), graph_frame)
        .expect("graph frame has Gram I + A*A, always full rank")
}

/// Transition ψ_{V,E} between charts: rewrite the chart value `value` (over
/// its base E) in the chart of V, via the Möbius form
/// ψ(A) = (c + dA)(a + bA)⁻¹ where (a, b; c, d) express the identity in the
/// two frame/coframe bases.
///
/// When V and E are handed over with bitwise-identical frames the value is
/// returned unchanged, so the identity transition is exact.
///
/// # Errors
/// [`Error::OutsideChartDomain`] when a + bA is singular at [`CHART_TOL`]
/// (the subspace is not a graph over V).
///
/// # Panics
/// If the charts live on different polarized spaces or have different
/// subspace dimensions (transitions connect charts within one component).
pub fn transition(v: &GrassmannPoint, value: &ChartValue) -> Result<ChartValue> {
    let e = value.base();
    assert_eq!(
        v.space(),
        e.space(),
        "transition requires charts on the same polarized space"
    );
    assert_eq!(
        v.k(),
        e.k(),
        "transition requires charts of equal subspace dimension"
    );
    if v.frame() == e.frame() {
        return Ok(value.clone());
    }
    let a = v.frame().adjoint() * e.frame();
    let b = v.frame().adjoint() * e.coframe();
    let c = v.coframe().adjoint() * e.frame();
    let d = v.coframe().adjoint() * e.coframe();
    let denom = a + b * value.graph_op();
    let smallest = linalg::singular_values_desc(&denom)
        .last()
        .copied()
        .unwrap_or(0.0);
    if smallest <= CHART_TOL {
        return Err(Error::OutsideChartDomain {
            smallest_singular_value: smallest,
            chart_tol: CHART_TOL,
        });
    }
    let numer = c + d * value.graph_op();
    let denom_inv = denom
        .try_inverse()
        .expect("guarded by singular-value check");
    ChartValue::new(v.clone(), numer * denom_inv)
}

/// Move a point by a unitary: frame ↦ g·frame (re-orthonormalized),
/// projection ↦ g·P_W·g*.
///
/// # Panics
/// If the operands live on different polarized spaces.
pub fn act(g: &RestrictedUnitary, w: &GrassmannPoint) -> GrassmannPoint {
    assert_eq!(
        g.space(),
        w.space(),
        "act requires a unitary and a point on the same polarized space"
    );
    let frame = g.matrix() * w.frame();
    point_from_frame(w.space(), frame).expect("unitary image of a frame keeps full rank")
}

/// The transitivity witness of a point: the unitary g = (w | w⊥) assembled
/// from a frame of W and one of W⊥. Always unitary; when W has relative
/// index 0 it moves the base point onto W, i.e. act(g, H₊) = W.
pub fn transitivity_witness(w: &GrassmannPoint) -> RestrictedUnitary {
    let n = w.space().dim();
    let k = w.k();
    let mut m = CMatrix::zeros(n, n);
    m.view_mut((0, 0), (n, k)).copy_from(w.frame());
    m.view_mut((0, k), (n, n - k)).copy_from(&w.coframe());
    let op = BlockOperator::new(w.space(), m).expect("square by construction");
    RestrictedUnitary::new(op).expect("orthonormal frame plus coframe forms a unitary")
}

/// Numerical rank of an operator: singular values above `rel_tol·σ_max`.
pub fn operator_rank(a: &BlockOperator, rel_tol: f64) -> usize {
    linalg::numerical_rank_complex(a.matrix(), rel_tol)
}

/// Constructive Fredholm parametrix: the thresholded pseudo-inverse.
///
/// Singular values above `rank_tol·σ_max` are inverted, the rest discarded.
/// If r values are discarded, both A·T − I and T·A − I have rank at most r
/// (exactly r at exact arithmetic): an inverse up to finite-rank defect.
pub fn fredholm_regularizer(a: &BlockOperator, rank_tol: f64) -> BlockOperator {
    let svd = linalg::jacobi_svd(a.matrix());
    let sigma_max = svd.sigma.first().copied().unwrap_or(0.0);
    let n = a.space().dim();
    let mut inv = CMatrix::zeros(n, n);
    if sigma_max > 0.0 {
        for (idx, &sigma) in svd.sigma.iter().enumerate() {
            if sigma > rank_tol * sigma_max {
                inv[(idx, idx)] = Complex::new(1.0 / sigma, 0.0);
            }
        }
    }
    let t = &svd.v * inv * svd.u.adjoint();
    BlockOperator::new(a.space(), t).expect("square by construction")
}
