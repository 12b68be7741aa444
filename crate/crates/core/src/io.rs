//! JSON exchange format for matrices on a polarized space.
//!
//! A matrix is exchanged as
//!
//! ```json
//! {"n_plus": 2, "n_minus": 1, "entries": [[[re, im], ...], ...]}
//! ```
//!
//! with `entries` row-major; each entry is a two-element `[re, im]` array.
//! Operators are square (n×n with n = n_plus + n_minus); frames reuse the
//! same shape with fewer columns. The CLI uses this format for golden files.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::operator::{BlockOperator, PolarizedSpace};

/// Serialized matrix over a polarized space; see the module docs for layout.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    /// Dimension kept on H₊.
    pub n_plus: usize,
    /// Dimension kept on H₋.
    pub n_minus: usize,
    /// Row-major entries, each as `[re, im]`.
    pub entries: Vec<Vec<[f64; 2]>>,
}

pub(crate) fn entries_from_matrix(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

pub(crate) fn matrix_from_entries(entries: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    let rows = entries.len();
    if rows == 0 {
        return Err(Error::MalformedJson("matrix has no rows".into()));
    }
    let cols = entries[0].len();
    if cols == 0 {
        return Err(Error::MalformedJson("matrix has no columns".into()));
    }
    if let Some(bad) = entries.iter().find(|row| row.len() != cols) {
        return Err(Error::MalformedJson(format!(
            "ragged rows: expected {cols} columns, found a row with {}",
            bad.len()
        )));
    }
    Ok(CMatrix::from_fn(rows, cols, |i, j| {
        Complex::new(entries[i][j][0], entries[i][j][1])
    }))
}

/// Serialize a block operator.
pub fn operator_to_json(a: &BlockOperator) -> MatrixJson {
    MatrixJson {
        n_plus: a.space().n_plus(),
        n_minus: a.space().n_minus(),
        entries: entries_from_matrix(a.matrix()),
    }
}

/// Deserialize a block operator: the entries must form a square matrix of
/// side `n_plus + n_minus`.
///
/// # Errors
/// [`Error::MalformedJson`] on ragged or empty entries,
/// [`Error::InvalidSpace`] on a zero block dimension, and
/// [`Error::ShapeMismatch`] when the matrix is not n×n.
pub fn operator_from_json(json: &MatrixJson) -> Result<BlockOperator> {
    let space = PolarizedSpace::new(json.n_plus, json.n_minus)?;
    let m = matrix_from_entries(&json.entries)?;
    BlockOperator::new(space, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn operator_roundtrips_bitwise_through_json_text() {
        let space = PolarizedSpace::new(2, 1).unwrap();
        let m = CMatrix::from_row_slice(
            3,
            3,
            &[
                c(1.0, -2.0),
                c(0.25, 0.0),
                c(0.0, 3.5),
                c(-0.125, 1.0),
                c(0.0, 0.0),
                c(7.0, -0.5),
                c(1e-20, 1e20),
                c(2.0, 2.0),
                c(-9.0, 0.75),
            ],
        );
        let a = BlockOperator::new(space, m).unwrap();
        let text = serde_json::to_string(&operator_to_json(&a)).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        let b = operator_from_json(&back).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        assert_eq!(a.space(), b.space());
    }

    #[test]
    fn rejects_ragged_entries() {
        let json = MatrixJson {
            n_plus: 1,
            n_minus: 1,
            entries: vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[0.0, 0.0]]],
        };
        assert!(matches!(
            operator_from_json(&json),
            Err(Error::MalformedJson(_))
        ));
    }

    #[test]
    fn rejects_non_square_operator() {
        let json = MatrixJson {
            n_plus: 1,
            n_minus: 1,
            entries: vec![vec![[1.0, 0.0]], vec![[0.0, 0.0]]],
        };
        assert!(matches!(
            operator_from_json(&json),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn rejects_zero_dimension_space() {
        let json = MatrixJson {
            n_plus: 0,
            n_minus: 2,
            entries: vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[0.0, 0.0], [1.0, 0.0]]],
        };
        assert!(matches!(
            operator_from_json(&json),
            Err(Error::InvalidSpace { .. })
        ));
    }

    #[test]
    fn field_names_match_exchange_format() {
        let space = PolarizedSpace::new(1, 1).unwrap();
        let a = BlockOperator::identity(space);
        let value = serde_json::to_value(operator_to_json(&a)).unwrap();
        assert_eq!(value["n_plus"], 1);
        assert_eq!(value["n_minus"], 1);
        assert_eq!(value["entries"][0][0][0], 1.0);
        assert_eq!(value["entries"][0][1][1], 0.0);
    }
}
