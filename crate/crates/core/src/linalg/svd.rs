use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Relative threshold on singular values used for every numerical rank.
pub const RANK_REL_TOL: f64 = 1e-8;

const MAX_SWEEPS: usize = 80;

/// Singular values (descending) of the matrix whose columns are `columns`.
///
/// One-sided (Hestenes) Jacobi: pairs of columns are rotated until mutually
/// orthogonal, after which the column norms are the singular values. When
/// there are more columns than rows the conjugate transpose is used instead.
pub fn singular_values(columns: &[Vec<Complex64>]) -> Vec<f64> {
    if columns.is_empty() {
        return Vec::new();
    }
    let rows = columns[0].len();
    let mut cols: Vec<Vec<Complex64>> = if columns.len() > rows {
        (0..rows).map(|i| columns.iter().map(|c| c[i].conj()).collect()).collect()
    } else {
        columns.to_vec()
    };

    let k = cols.len();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(a, b)| a.conj() * b).sum();
                let g_abs = gamma.norm();
                if g_abs == 0.0 || g_abs <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g_abs;
                let theta = (beta - alpha) / (2.0 * g_abs);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let s_conj_phase = phase.conj() * s;
                let c_conj_phase = phase.conj() * c;
                let (left, right) = cols.split_at_mut(q);
                for (xp, xq) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let a = *xp;
                    let b = *xq;
                    *xp = a * c - b * s_conj_phase;
                    *xq = a * s + b * c_conj_phase;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Number of singular values above `rel_tol * sigma_max`.
pub fn numerical_rank(columns: &[Vec<Complex64>], rel_tol: f64) -> usize {
    let sv = singular_values(columns);
    match sv.first() {
        Some(&top) if top > 0.0 => sv.iter().filter(|&&s| s > rel_tol * top).count(),
        _ => 0,
    }
}

/// Singular values of a square matrix, descending.
pub fn matrix_singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let cols: Vec<Vec<Complex64>> = (0..a.dim()).map(|j| a.column(j)).collect();
    singular_values(&cols)
}

/// Numerical rank of the Krylov matrix `[x | Ax | ... | A^{n-1} x]`.
///
/// Every column is normalised before the rank is taken, which leaves the
/// rank unchanged but keeps fast-growing powers from swamping the small
/// ones; a power that falls below `RANK_REL_TOL ||A||_F` is treated as zero.
/// Only the zero vector is rejected.
pub fn krylov_rank(a: &ComplexMatrix, x: &[Complex64]) -> Result<usize> {
    let n = a.dim();
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    let norm = super::vec_norm(x);
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut cols = Vec::with_capacity(n);
    let mut v: Vec<Complex64> = x.iter().map(|z| z / norm).collect();
    let floor = RANK_REL_TOL * a.frobenius_norm();
    for _ in 0..n {
        let mut next = a.mul_vec(&v);
        let len = super::vec_norm(&next);
        if len > floor {
            next.iter_mut().for_each(|z| *z /= len);
        } else {
            next.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        }
        cols.push(v);
        v = next;
    }
    Ok(numerical_rank(&cols, RANK_REL_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, k: usize) -> Vec<Complex64> {
        (0..n).map(|i| Complex64::new(if i == k { 1.0 } else { 0.0 }, 0.0)).collect()
    }

    fn ones_upper(n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, |i, j| Complex64::new(if j > i { 1.0 } else { 0.0 }, 0.0))
    }

    #[test]
    fn diagonal_singular_values() {
        let a =
            ComplexMatrix::diagonal(&[Complex64::new(3.0, 0.0), Complex64::new(0.0, -5.0), Complex64::new(1.0, 0.0)]);
        let sv = matrix_singular_values(&a);
        assert!((sv[0] - 5.0).abs() < 1e-14 && (sv[1] - 3.0).abs() < 1e-14 && (sv[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn wide_input_uses_transpose() {
        let cols = vec![e(2, 0), e(2, 1), e(2, 0), e(2, 1)];
        let sv = singular_values(&cols);
        assert_eq!(sv.len(), 2);
        assert!((sv[0] - 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(numerical_rank(&cols, RANK_REL_TOL), 2);
    }

    #[test]
    fn krylov_of_shift_like_kms() {
        let a = ones_upper(3);
        assert_eq!(krylov_rank(&a, &e(3, 2)).unwrap(), 3);
        assert_eq!(krylov_rank(&a, &e(3, 0)).unwrap(), 1);
    }

    #[test]
    fn krylov_rejects_zero() {
        let a = ones_upper(3);
        assert_eq!(krylov_rank(&a, &[Complex64::new(0.0, 0.0); 3]), Err(Error::ZeroVector));
    }
}
