//! Error type shared by every module of the crate.

/// Errors reported by constructors and operations.
///
/// Structural misuse that cannot be expressed in the type system (mixing two
/// different polarized spaces in one arithmetic expression) panics instead;
/// see the individual operations for their panic conditions.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A polarized space needs at least one dimension on each side.
    #[error("polarized space needs n_plus >= 1 and n_minus >= 1, got ({n_plus}, {n_minus})")]
    InvalidSpace { n_plus: usize, n_minus: usize },

    /// A matrix does not have the shape demanded by the truncation.
    #[error("matrix is {rows}x{cols} but the truncation demands {expected_rows}x{expected_cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    /// Candidate for `SkewHermitian` fails `A* = -A` beyond tolerance.
    #[error(
        "operator is not skew-Hermitian: defect {defect:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    NotSkewHermitian { defect: f64, tolerance: f64 },

    /// Candidate for `RestrictedUnitary` fails `u*u = uu* = I` beyond tolerance.
    #[error("operator is not unitary: defect {defect:.3e} exceeds tolerance {tolerance:.3e}")]
    NotUnitary { defect: f64, tolerance: f64 },

    /// A Schatten exponent below 1 (or non-finite) was requested.
    #[error("Schatten exponent must be a finite real >= 1, got {value}")]
    InvalidExponent { value: f64 },

    /// An ensemble generator was asked for an exponent outside its contract.
    #[error("ensemble exponent out of range: {message}")]
    EnsembleExponent { message: String },

    /// A frame whose columns are numerically dependent cannot define a point.
    #[error("frame has numerical rank {rank} but {cols} columns")]
    RankDeficientFrame { rank: usize, cols: usize },

    /// The subspace is not a graph over the chart base.
    #[error(
        "subspace lies outside the chart domain: smallest singular value \
         {smallest_singular_value:.3e} is at or below the guard {chart_tol:.3e}"
    )]
    OutsideChartDomain {
        smallest_singular_value: f64,
        chart_tol: f64,
    },

    /// Trace of `pr_W - pr_plus` strayed too far from an integer.
    #[error("relative index trace {trace} is not within {guard} of an integer")]
    NonIntegerIndex { trace: f64, guard: f64 },

    /// An orbit point whose mu slot does not reconstruct to a projection.
    #[error(
        "orbit point fails projection reconstruction: defect {defect:.3e} exceeds {tolerance:.3e}"
    )]
    OffOrbit { defect: f64, tolerance: f64 },

    /// Orbit constructions require a nonzero central parameter.
    #[error("gamma must be nonzero")]
    ZeroGamma,

    /// An analytic gradient that contradicts finite differences.
    #[error(
        "analytic gradient disagrees with finite differences: relative error {relative_error:.3e}"
    )]
    GradientMismatch { relative_error: f64 },

    /// Malformed matrix JSON (shape or field mismatch).
    #[error("matrix JSON: {0}")]
    MalformedJson(String),

    /// JSON (de)serialization failure.
    #[error(transparent)]
    Json(#[from] serde_json::Error),

    /// Filesystem failure while reading or writing an exchange file.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
