//! Dense complex linear algebra: the matrix type, Hermitian
//! eigendecomposition, determinants and numerical ranks.

mod eigen;
mod matrix;
mod svd;

pub use eigen::{hermitian_eigs, HermitianEigen, HERMITIAN_REL_TOL, JACOBI_MAX_SWEEPS, JACOBI_REL_TOL};
pub use matrix::{det, imag_part, real_part, ComplexMatrix};
pub use svd::{krylov_rank, matrix_singular_values, numerical_rank, singular_values, RANK_REL_TOL};

use num_complex::Complex64;

/// `Re(e^{-i theta} A)`, the Hermitian matrix whose top eigenvalue is the
/// support value of `W(A)` in direction `theta`.
pub fn rotated_real_part(a: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    real_part(&a.scale(Complex64::from_polar(1.0, -theta)))
}

/// `Im(e^{-i theta} A)`.
pub fn rotated_imag_part(a: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    imag_part(&a.scale(Complex64::from_polar(1.0, -theta)))
}

pub(crate) fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Least-squares solution of a small dense real system `M c = b` by
/// Householder QR. Returns the coefficients and the residual 2-norm.
pub(crate) fn real_least_squares(m: &[Vec<f64>], b: &[f64]) -> (Vec<f64>, f64) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    assert!(rows >= cols, "least squares needs at least as many rows as unknowns");
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut rhs = b.to_vec();
    for k in 0..cols {
        let norm = (k..rows).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..rows).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for j in k..cols {
            let dot: f64 = (k..rows).map(|i| v[i - k] * a[i][j]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in k..rows {
                a[i][j] -= f * v[i - k];
            }
        }
        let dot: f64 = (k..rows).map(|i| v[i - k] * rhs[i]).sum();
        let f = 2.0 * dot / vnorm2;
        for i in k..rows {
            rhs[i] -= f * v[i - k];
        }
    }
    let mut x = vec![0.0; cols];
    for k in (0..cols).rev() {
        let s: f64 = (k + 1..cols).map(|j| a[k][j] * x[j]).sum();
        x[k] = if a[k][k] != 0.0 { (rhs[k] - s) / a[k][k] } else { 0.0 };
    }
    let residual = (0..rows)
        .map(|i| {
            let r = m[i].iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() - b[i];
            r * r
        })
        .sum::<f64>()
        .sqrt();
    (x, residual)
}
