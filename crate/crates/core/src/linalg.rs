//! Small dense-linear-algebra helpers shared across modules.
//!
//! Complex singular value decompositions are computed by one-sided Jacobi
//! iteration rather than the backend's bidiagonal SVD, which returns invalid
//! factorizations for some complex inputs (see the regression test in the
//! Grassmannian module for a 2×2 Hermitian projection that it decomposes
//! with an 18% reconstruction error). Jacobi rotations are deterministic,
//! work at any aspect ratio, and compute singular values with high relative
//! accuracy at the dense sizes used here.

use nalgebra::{Complex, DMatrix};

pub(crate) type CMatrix = DMatrix<Complex<f64>>;

const MAX_JACOBI_SWEEPS: usize = 64;

/// Thin singular value decomposition A = U·diag(σ)·V* with σ sorted in
/// decreasing order. U is m×r and V is n×r for r = min(m, n); columns of U
/// belonging to zero singular values are zero vectors.
pub(crate) struct ThinSvd {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

/// Orthogonalize the columns of `w` by cyclic complex Jacobi rotations,
/// accumulating the right factor into `v` when present.
fn jacobi_orthogonalize(w: &mut CMatrix, mut v: Option<&mut CMatrix>) {
    let (m, n) = (w.nrows(), w.ncols());
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let mut aa = 0.0f64;
                let mut bb = 0.0f64;
                let mut cc = Complex::new(0.0, 0.0);
                for r in 0..m {
                    aa += w[(r, i)].norm_sqr();
                    bb += w[(r, j)].norm_sqr();
                    cc += w[(r, i)].conj() * w[(r, j)];
                }
                let mag = cc.norm();
                // Multiply square roots rather than taking the root of the
                // product: aa·bb underflows to zero for a pair of collapsed
                // columns and would keep the sweep rotating on noise. The
                // absolute floor stops denormal-range couplings outright.
                if mag <= f64::EPSILON * aa.sqrt() * bb.sqrt() || mag < f64::MIN_POSITIVE {
                    continue;
                }
                rotated = true;
                // Divide components by the real magnitude; complex division
                // would square `mag` in its denominator and overflow to
                // infinity once `mag` is denormal.
                let phase = Complex::new(cc.re / mag, cc.im / mag);
                let tau = (bb - aa) / (2.0 * mag);
                let t = -tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cos = 1.0 / (1.0 + t * t).sqrt();
                let sin = t * cos;
                for r in 0..m {
                    let zi = w[(r, i)];
                    let zj = w[(r, j)] * phase.conj();
                    w[(r, i)] = zi * cos + zj * sin;
                    w[(r, j)] = zj * cos - zi * sin;
                }
                if let Some(vm) = v.as_deref_mut() {
                    for r in 0..vm.nrows() {
                        let zi = vm[(r, i)];
                        let zj = vm[(r, j)] * phase.conj();
                        vm[(r, i)] = zi * cos + zj * sin;
                        vm[(r, j)] = zj * cos - zi * sin;
                    }
                }
            }
        }
        if !rotated {
            return;
        }
    }
}

/// Largest entry magnitude, computed overflow-free via `hypot`. Gram
/// entries square column norms, so inputs are divided by this before the
/// sweeps and the singular values multiplied back afterwards; otherwise
/// matrices with entries near 1e200 would overflow to infinity.
fn entry_scale(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// One-sided Jacobi SVD of a complex matrix.
pub(crate) fn jacobi_svd(a: &CMatrix) -> ThinSvd {
    let (m, n) = (a.nrows(), a.ncols());
    if m < n {
        let t = jacobi_svd(&a.adjoint());
        return ThinSvd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        };
    }
    let amax = entry_scale(a);
    if amax == 0.0 {
        return ThinSvd {
            u: CMatrix::zeros(m, n),
            sigma: vec![0.0; n],
            v: CMatrix::identity(n, n),
        };
    }
    let mut w = a.map(|z| z / amax);
    let mut v = CMatrix::identity(n, n);
    jacobi_orthogonalize(&mut w, Some(&mut v));

    let norms: Vec<f64> = (0..n)
        .map(|k| w.column(k).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).expect("finite norms"));

    let mut u = CMatrix::zeros(m, n);
    let mut v_sorted = CMatrix::zeros(n, n);
    let mut sigma = Vec::with_capacity(n);
    for (out_idx, &k) in order.iter().enumerate() {
        let s = norms[k];
        sigma.push(s * amax);
        if s > 0.0 {
            let col = w.column(k).map(|z| z / Complex::new(s, 0.0));
            u.column_mut(out_idx).copy_from(&col);
        }
        v_sorted.column_mut(out_idx).copy_from(&v.column(k));
    }
    ThinSvd {
        u,
        sigma,
        v: v_sorted,
    }
}

/// Singular values of `m`, sorted in decreasing order.
pub(crate) fn singular_values_desc(m: &CMatrix) -> Vec<f64> {
    let (rows, cols) = (m.nrows(), m.ncols());
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    if rows < cols {
        return singular_values_desc(&m.adjoint());
    }
    let amax = entry_scale(m);
    if amax == 0.0 {
        return vec![0.0; cols];
    }
    let mut w = m.map(|z| z / amax);
    jacobi_orthogonalize(&mut w, None);
    let mut sv: Vec<f64> = (0..cols)
        .map(|k| amax * w.column(k).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    sv
}

/// Operator (spectral) norm: the largest singular value.
pub(crate) fn operator_norm(m: &CMatrix) -> f64 {
    singular_values_desc(m).first().copied().unwrap_or(0.0)
}

/// Number of singular values exceeding `rel_tol` times the largest one.
pub(crate) fn numerical_rank_complex(m: &CMatrix, rel_tol: f64) -> usize {
    rank_from_sorted(&singular_values_desc(m), rel_tol)
}

fn rank_from_sorted(sv: &[f64], rel_tol: f64) -> usize {
    match sv.first() {
        None => 0,
        Some(&smax) => {
            if smax == 0.0 {
                0
            } else {
                sv.iter().filter(|&&s| s > rel_tol * smax).count()
            }
        }
    }
}

/// Number of singular values of a real matrix exceeding `rel_tol` times the largest.
pub(crate) fn numerical_rank_real(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    rank_from_sorted(&sv, rel_tol)
}

/// Hermitian part `(M + M*)/2`, used to scrub roundoff before symmetric eigensolves.
pub(crate) fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).map(|z| z * 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CMatrix::from_fn(rows, cols, |_, _| {
            Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    fn assert_valid_svd(a: &CMatrix) {
        let svd = jacobi_svd(a);
        let r = a.nrows().min(a.ncols());
        assert_eq!(svd.sigma.len(), r);
        for pair in svd.sigma.windows(2) {
            assert!(pair[0] >= pair[1], "singular values must be sorted");
        }
        let diag = CMatrix::from_fn(r, r, |i, j| {
            if i == j {
                Complex::new(svd.sigma[i], 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        let recon = &svd.u * diag * svd.v.adjoint();
        let scale = 1.0 + a.norm();
        assert!((recon - a).norm() <= 1e-13 * scale, "reconstruction failed");
        let vtv = svd.v.adjoint() * &svd.v;
        assert!(
            (vtv - CMatrix::identity(r, r)).norm() <= 1e-13,
            "right factor must be orthonormal"
        );
        for k in 0..r {
            if svd.sigma[k] > 0.0 {
                let col_norm: f64 = svd.u.column(k).iter().map(|z| z.norm_sqr()).sum();
                assert!((col_norm.sqrt() - 1.0).abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn jacobi_svd_reconstructs_random_matrices() {
        for (rows, cols, seed) in [(5, 3, 1u64), (3, 5, 2), (4, 4, 3), (1, 1, 4), (6, 2, 5)] {
            assert_valid_svd(&random_matrix(rows, cols, seed));
        }
    }

    #[test]
    fn jacobi_svd_matches_known_diagonal() {
        let mut m = CMatrix::zeros(3, 3);
        m[(0, 0)] = Complex::new(0.0, 3.0);
        m[(1, 1)] = Complex::new(-4.0, 0.0);
        let sv = singular_values_desc(&m);
        assert!((sv[0] - 4.0).abs() < 1e-14);
        assert!((sv[1] - 3.0).abs() < 1e-14);
        assert!(sv[2].abs() < 1e-14);
    }

    #[test]
    fn jacobi_svd_survives_extreme_entry_scales() {
        for exp in [-180.0f64, 0.0, 180.0] {
            let s = 10.0f64.powf(exp);
            let m = random_matrix(4, 4, 7).map(|z| z * s);
            let sv = singular_values_desc(&m);
            assert!(sv.iter().all(|v| v.is_finite()));
            let unscaled = singular_values_desc(&random_matrix(4, 4, 7));
            for (a, b) in sv.iter().zip(unscaled.iter()) {
                assert!(
                    (a / s - b).abs() <= 1e-12 * b.max(1.0),
                    "sigma not homogeneous"
                );
            }
        }
        assert_eq!(singular_values_desc(&CMatrix::zeros(3, 2)), vec![0.0, 0.0]);
    }

    #[test]
    fn jacobi_svd_handles_rank_deficiency() {
        let mut m = CMatrix::zeros(4, 3);
        m[(0, 0)] = Complex::new(1.0, 0.0);
        m[(1, 1)] = Complex::new(0.0, 1.0);
        m.set_column(2, &m.column(0).into_owned());
        assert_eq!(numerical_rank_complex(&m, 1e-10), 2);
        assert_valid_svd(&m);
    }

    #[test]
    fn operator_norm_of_unitary_column_is_one() {
        let m = CMatrix::from_row_slice(2, 1, &[Complex::new(0.6, 0.0), Complex::new(0.0, 0.8)]);
        assert!((operator_norm(&m) - 1.0).abs() < 1e-15);
    }
}
