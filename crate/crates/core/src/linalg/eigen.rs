use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Off-diagonal Frobenius mass at which a sweep sequence stops, relative to `||H||_F`.
pub const JACOBI_REL_TOL: f64 = 1e-13;
/// Hard cap on cyclic sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 60;
/// Admissible asymmetry `max |H - H*|` relative to `||H||_F`.
pub const HERMITIAN_REL_TOL: f64 = 1e-12;

/// Eigenvalues in ascending order together with orthonormal eigenvectors
/// stored as the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_value(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    /// Number of eigenvalues within `tol` of the largest one.
    pub fn top_multiplicity(&self, tol: f64) -> usize {
        let top = self.max_value();
        self.values.iter().rev().take_while(|&&v| top - v <= tol).count()
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// The input is accepted when `max |H - H*| <= 1e-12 ||H||_F`; its Hermitian
/// part is what gets diagonalised.
pub fn hermitian_eigs(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = h.dim();
    let norm = h.frobenius_norm();
    let asymmetry = h.hermitian_defect();
    let tolerance = HERMITIAN_REL_TOL * norm;
    if asymmetry > tolerance {
        return Err(Error::NotHermitian { asymmetry, tolerance });
    }

    // symmetrise so rounding in the input cannot leak into the rotations
    let mut a: Vec<Complex64> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j { Complex64::new(h[(i, i)].re, 0.0) } else { (h[(i, j)] + h[(j, i)].conj()) * 0.5 };
            a.push(v);
        }
    }
    let mut z = ComplexMatrix::identity(n).as_slice().to_vec();

    let threshold = JACOBI_REL_TOL * norm;
    let mut converged = false;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut z, n, p, q);
            }
        }
    }
    if !converged {
        let off_norm = off_diagonal_norm(&a, n);
        if off_norm > threshold {
            return Err(Error::NoConvergence { sweeps: JACOBI_MAX_SWEEPS, off_norm });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |row, col| z[row * n + order[col]]);
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with the unitary `V = diag(1, e^{-i phi}) R(c, s)`
/// acting on coordinates `p, q`, where `a[p][q] = |g| e^{i phi}`.
fn rotate(a: &mut [Complex64], z: &mut [Complex64], n: usize, p: usize, q: usize) {
    let g = a[p * n + q];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let phase = g / g_abs;
    let alpha = a[p * n + p].re;
    let beta = a[q * n + q].re;
    let theta = (beta - alpha) / (2.0 * g_abs);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let s_conj_phase = phase.conj() * s;
    let c_conj_phase = phase.conj() * c;
    for k in 0..n {
        let hp = a[k * n + p];
        let hq = a[k * n + q];
        a[k * n + p] = hp * c - hq * s_conj_phase;
        a[k * n + q] = hp * s + hq * c_conj_phase;
    }
    let s_phase = phase * s;
    let c_phase = phase * c;
    for k in 0..n {
        let hp = a[p * n + k];
        let hq = a[q * n + k];
        a[p * n + k] = hp * c - hq * s_phase;
        a[q * n + k] = hp * s + hq * c_phase;
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p].im = 0.0;
    a[q * n + q].im = 0.0;

    for k in 0..n {
        let zp = z[k * n + p];
        let zq = z[k * n + q];
        z[k * n + p] = zp * c - zq * s_conj_phase;
        z[k * n + q] = zp * s + zq * c_conj_phase;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::real_part;

    fn residual(h: &ComplexMatrix, e: &HermitianEigen) -> f64 {
        (0..e.len())
            .map(|k| {
                let v = e.vector(k);
                let hv = h.mul_vec(&v);
                hv.iter().zip(&v).map(|(a, b)| (a - b * e.values[k]).norm_sqr()).sum::<f64>().sqrt()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let e = hermitian_eigs(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn real_part_of_kms_three_two() {
        // characteristic cubic λ³ - 6λ - 4 = (λ + 2)(λ² - 2λ - 2)
        let h =
            ComplexMatrix::from_real_rows(&[vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]]).unwrap();
        let e = hermitian_eigs(&h).unwrap();
        let s3 = 3f64.sqrt();
        let expected = [-2.0, 1.0 - s3, 1.0 + s3];
        for (got, want) in e.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
        let v = e.vector(0);
        // proportional to (1, 0, -1)
        assert!(v[1].norm() < 1e-13);
        assert!((v[0] + v[2]).norm() < 1e-13);
        assert!((v[0].norm() - 0.5f64.sqrt()).abs() < 1e-13);
        assert!(residual(&h, &e) < 1e-13);
    }

    #[test]
    fn double_eigenvalue_of_all_ones_kms() {
        let h =
            ComplexMatrix::from_real_rows(&[vec![0.0, 0.5, 0.5], vec![0.5, 0.0, 0.5], vec![0.5, 0.5, 0.0]]).unwrap();
        let e = hermitian_eigs(&h).unwrap();
        assert!((e.values[0] + 0.5).abs() < 1e-14);
        assert!((e.values[1] + 0.5).abs() < 1e-14);
        assert!((e.values[2] - 1.0).abs() < 1e-14);
        assert_eq!(e.top_multiplicity(1e-8), 1);
    }

    #[test]
    fn complex_hermitian_residual() {
        let a = ComplexMatrix::from_fn(6, |i, j| {
            Complex64::new(((i * 7 + j * 3) % 5) as f64 - 2.0, ((i + 2 * j) % 3) as f64 - 1.0)
        });
        let h = real_part(&a);
        let e = hermitian_eigs(&h).unwrap();
        assert!(residual(&h, &e) < 1e-12 * h.frobenius_norm());
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eigs(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn zero_and_scalar_inputs() {
        let e = hermitian_eigs(&ComplexMatrix::zeros(2)).unwrap();
        assert_eq!(e.values, vec![0.0, 0.0]);
        let one = ComplexMatrix::from_real_rows(&[vec![-4.5]]).unwrap();
        assert_eq!(hermitian_eigs(&one).unwrap().values, vec![-4.5]);
    }
}
