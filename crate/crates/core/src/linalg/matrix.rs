use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix stored row-major.
///
/// Every constructor that accepts external data checks that the matrix is
/// square, non-empty and finite.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds an `n x n` matrix from row-major entries.
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(Error::Shape { n, rows: data.len() });
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: pos / n, col: pos % n });
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Shape { n, rows: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    /// Builds a real matrix from nested rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> =
            rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Builds a matrix entry by entry. Panics if `n == 0`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { ZERO })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n, "vector length must match matrix dimension");
        (0..self.n).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// `<A x, x>` for the standard inner product.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Complex64 {
        let ax = self.mul_vec(x);
        ax.iter().zip(x).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == ZERO))
    }

    /// Largest `|A - A*|` entry.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `U* A U` for a square `U` of the same size.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> ComplexMatrix {
        &(&u.adjoint() * self) * u
    }

    /// Maximum entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn pow(&self, k: u32) -> ComplexMatrix {
        let mut out = ComplexMatrix::identity(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n);
        ComplexMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n);
        ComplexMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        ComplexMatrix { n, data: out }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `(A + A*)/2`.
pub fn real_part(a: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.dim(), |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5)
}

/// `(A - A*)/(2i)`.
pub fn imag_part(a: &ComplexMatrix) -> ComplexMatrix {
    // (z - w̄)/(2i) = -i (z - w̄)/2
    let minus_half_i = Complex64::new(0.0, -0.5);
    ComplexMatrix::from_fn(a.dim(), |i, j| {
        let v = (a[(i, j)] - a[(j, i)].conj()) * minus_half_i;
        if i == j {
            Complex64::new(v.re, 0.0)
        } else {
            v
        }
    })
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(a: &ComplexMatrix) -> Complex64 {
    let n = a.dim();
    let mut m = a.as_slice().to_vec();
    let mut acc = ONE;
    for col in 0..n {
        let pivot = (col..n).max_by(|&r, &s| m[r * n + col].norm().total_cmp(&m[s * n + col].norm())).unwrap_or(col);
        if m[pivot * n + col] == ZERO {
            return ZERO;
        }
        if pivot != col {
            for k in 0..n {
                m.swap(col * n + k, pivot * n + k);
            }
            acc = -acc;
        }
        let p = m[col * n + col];
        acc *= p;
        for r in col + 1..n {
            let factor = m[r * n + col] / p;
            if factor == ZERO {
                continue;
            }
            for k in col..n {
                let v = m[col * n + k];
                m[r * n + k] -= factor * v;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constructor_rejects_bad_shapes_and_nan() {
        assert!(matches!(ComplexMatrix::new(0, vec![]), Err(Error::Shape { .. })));
        assert!(matches!(ComplexMatrix::new(2, vec![ONE; 3]), Err(Error::Shape { .. })));
        let mut data = vec![ONE; 4];
        data[3] = c(f64::NAN, 0.0);
        assert_eq!(ComplexMatrix::new(2, data), Err(Error::NonFinite { row: 1, col: 1 }));
    }

    #[test]
    fn real_part_of_two_by_two_shift() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[vec![0.0, 0.5], vec![0.5, 0.0]]).unwrap();
        assert_eq!(real_part(&a), expected);
    }

    #[test]
    fn real_part_fixes_hermitian() {
        let h = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, -1.0)], vec![c(2.0, 1.0), c(-3.0, 0.0)]]).unwrap();
        assert_eq!(real_part(&h), h);
    }

    #[test]
    fn imag_part_cases() {
        // real symmetric, i.e. self-adjoint
        let real = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(imag_part(&real).max_abs(), 0.0);

        let ii = ComplexMatrix::identity(3).scale(c(0.0, 1.0));
        assert!(imag_part(&ii).max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);

        // J_2(i) = [[0, i], [0, 0]]: (A - A*)/(2i) = [[0, 1/2], [1/2, 0]]
        let j2i = ComplexMatrix::from_rows(&[vec![ZERO, c(0.0, 1.0)], vec![ZERO, ZERO]]).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[vec![0.0, 0.5], vec![0.5, 0.0]]).unwrap();
        assert!(imag_part(&j2i).max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn a_equals_re_plus_i_im() {
        let a = ComplexMatrix::from_fn(4, |i, j| c((i * 3 + j) as f64 * 0.7 - 2.0, (i as f64 - j as f64).sin()));
        let rebuilt = &real_part(&a) + &imag_part(&a).scale(c(0.0, 1.0));
        assert!(rebuilt.max_abs_diff(&a) < 1e-14);
    }

    #[test]
    fn det_triangular_and_pivoting() {
        let t = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(5.0, 1.0), c(-1.0, 0.0)],
            vec![ZERO, c(0.0, 3.0), c(4.0, 0.0)],
            vec![ZERO, ZERO, c(-1.0, 0.0)],
        ])
        .unwrap();
        assert!((det(&t) - c(0.0, -6.0)).norm() < 1e-14);

        let perm = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(det(&perm), c(-1.0, 0.0));
        assert_eq!(det(&ComplexMatrix::zeros(3)), ZERO);
    }
}
