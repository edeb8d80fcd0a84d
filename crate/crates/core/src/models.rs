//! Constructors for KMS matrices and the related matrix families: Jordan
//! blocks, principal submatrices, the affine images in the classes `S_n` and
//! `S_n^{-1}`, the Poisson-kernel Toeplitz matrix and the roots of its
//! spectral equation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{matrix_singular_values, ComplexMatrix};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Size and parameter of a KMS matrix `J_n(a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KmsParams {
    pub n: usize,
    pub a: Complex64,
}

impl KmsParams {
    pub fn new(n: usize, a: Complex64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("KMS size must be at least 1".into()));
        }
        if !a.re.is_finite() || !a.im.is_finite() {
            return Err(Error::InvalidParameter(format!("KMS parameter {a} is not finite")));
        }
        Ok(Self { n, a })
    }

    pub fn real(n: usize, a: f64) -> Result<Self> {
        Self::new(n, Complex64::new(a, 0.0))
    }
}

fn powers(a: Complex64, count: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(count);
    let mut p = Complex64::new(1.0, 0.0);
    for _ in 0..count {
        out.push(p);
        p *= a;
    }
    out
}

/// The upper-triangular KMS matrix with `(i, j)` entry `a^{j-i}` for `j > i`.
pub fn kms(params: KmsParams) -> ComplexMatrix {
    let p = powers(params.a, params.n);
    ComplexMatrix::from_fn(params.n, |i, j| if j > i { p[j - i] } else { ZERO })
}

/// The nilpotent Jordan block: ones on the first superdiagonal only.
pub fn jordan(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |i, j| if j == i + 1 { Complex64::new(1.0, 0.0) } else { ZERO })
}

/// `A[j]`: delete row and column `j` (1-based).
pub fn principal_submatrix(a: &ComplexMatrix, j: usize) -> Result<ComplexMatrix> {
    let n = a.dim();
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    if n < 2 {
        return Err(Error::InvalidParameter("a 1x1 matrix has no principal submatrix".into()));
    }
    let keep: Vec<usize> = (0..n).filter(|&k| k != j - 1).collect();
    Ok(ComplexMatrix::from_fn(n - 1, |r, c| a[(keep[r], keep[c])]))
}

/// `((1 - |a|^2)/a) J_n(a) - conj(a) I_n`.
///
/// For `0 < |a| < 1` this lands in `S_n`, for `|a| > 1` in `S_n^{-1}`; the
/// spectrum is `{-conj(a)}` either way.
pub fn affine_class_map(params: KmsParams) -> Result<ComplexMatrix> {
    let a = params.a;
    let r2 = a.norm_sqr();
    if a == ZERO || (r2.sqrt() - 1.0).abs() <= 1e-12 {
        return Err(Error::InvalidParameter(format!("affine class map needs a != 0 and |a| != 1 (a = {a})")));
    }
    let scale = Complex64::new(1.0 - r2, 0.0) / a;
    let shift = a.conj();
    let j = kms(params);
    Ok(ComplexMatrix::from_fn(params.n, |r, c| {
        let v = j[(r, c)] * scale;
        if r == c {
            v - shift
        } else {
            v
        }
    }))
}

/// Standard upper-triangular `S_n^{-1}` matrix with diagonal `lambda` and
/// `a_{ij} = conj(lambda)^{j-i-1} (|lambda|^2 - 1)` above it.
pub fn snm1_standard(n: usize, lambda: Complex64) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("size must be at least 1".into()));
    }
    let r2 = lambda.norm_sqr();
    if r2.sqrt() <= 1.0 || !r2.is_finite() {
        return Err(Error::InvalidParameter(format!("|lambda| must exceed 1 (lambda = {lambda})")));
    }
    let p = powers(lambda.conj(), n);
    let m = r2 - 1.0;
    Ok(ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            lambda
        } else if j > i {
            p[j - i - 1] * m
        } else {
            ZERO
        }
    }))
}

/// `[a^{|i-j|}]`, which equals `2 Re J_n(a) + I_n` for real `a`.
pub fn poisson_toeplitz(n: usize, a: f64) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("size must be at least 1".into()));
    }
    if !(0.0..1.0).contains(&a) {
        return Err(Error::InvalidParameter(format!("Poisson parameter must lie in [0, 1) (a = {a})")));
    }
    Ok(ComplexMatrix::from_fn(n, |i, j| Complex64::new(a.powi(i.abs_diff(j) as i32), 0.0)))
}

/// The Poisson kernel `P_a(e^{it}) = (1 - a^2) / |1 - a e^{it}|^2`.
pub fn poisson_kernel(a: f64, t: f64) -> f64 {
    (1.0 - a * a) / (1.0 - 2.0 * a * t.cos() + a * a)
}

/// Roots in `(0, pi)` of `sin((n+1)t) - 2a sin(nt) + a^2 sin((n-1)t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SineRootSet {
    pub n: usize,
    pub a: f64,
    pub roots: Vec<f64>,
}

impl SineRootSet {
    /// `(P_a(e^{i t_k}) - 1)/2` in ascending order; these are the
    /// eigenvalues of `Re J_n(a)`.
    pub fn kms_real_part_spectrum(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.roots.iter().map(|&t| (poisson_kernel(self.a, t) - 1.0) / 2.0).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn max_residual(&self) -> f64 {
        self.roots.iter().map(|&t| sine_equation(self.n, self.a, t).abs()).fold(0.0, f64::max)
    }
}

pub fn sine_equation(n: usize, a: f64, t: f64) -> f64 {
    let n = n as f64;
    ((n + 1.0) * t).sin() - 2.0 * a * (n * t).sin() + a * a * ((n - 1.0) * t).sin()
}

/// Samples per unit of `n` in the bracketing scan.
const SCAN_DENSITY: usize = 64;

/// Brackets the `n` sign changes of the sine equation on a uniform grid of
/// `64 n` interior points and bisects each to full precision.
pub fn sine_roots(n: usize, a: f64) -> Result<SineRootSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("size must be at least 1".into()));
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidParameter(format!("sine roots need 0 < a < 1 (a = {a})")));
    }
    let g = |t: f64| sine_equation(n, a, t);
    let samples = SCAN_DENSITY * n;
    let grid: Vec<f64> = (1..=samples).map(|k| PI * k as f64 / (samples + 1) as f64).collect();
    let mut roots = Vec::with_capacity(n);
    for w in grid.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (glo, ghi) = (g(lo), g(hi));
        if glo == 0.0 {
            roots.push(lo);
        } else if glo.signum() != ghi.signum() && ghi != 0.0 {
            roots.push(bisect(&g, lo, hi));
        }
    }
    if let Some(&last) = grid.last() {
        if g(last) == 0.0 {
            roots.push(last);
        }
    }
    if roots.len() != n {
        return Err(Error::RootCountMismatch { found: roots.len(), expected: n });
    }
    Ok(SineRootSet { n, a, roots })
}

fn bisect(g: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut glo = g(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if gm.signum() == glo.signum() {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    if g(lo).abs() <= g(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Membership data for the classes `S_n` / `S_n^{-1}` of an upper-triangular
/// matrix: singular values of `I - A*A`, the spectral norm and the moduli
/// of the diagonal (the spectrum).
#[derive(Debug, Clone)]
pub struct ClassMembership {
    pub defect_singular_values: Vec<f64>,
    pub spectral_norm: f64,
    pub eigenvalue_moduli: Vec<f64>,
}

impl ClassMembership {
    /// `rank(I - A*A) = 1` at relative scale `tol`.
    pub fn defect_rank_one(&self, tol: f64) -> bool {
        let sv = &self.defect_singular_values;
        let top = sv[0];
        top > 0.0 && sv.iter().skip(1).all(|&s| s <= tol * top.max(1.0))
    }

    pub fn is_class_s(&self, tol: f64) -> bool {
        self.defect_rank_one(tol) && self.spectral_norm <= 1.0 + tol && self.eigenvalue_moduli.iter().all(|&m| m < 1.0)
    }

    pub fn is_class_s_inverse(&self, tol: f64) -> bool {
        self.defect_rank_one(tol) && self.eigenvalue_moduli.iter().all(|&m| m > 1.0)
    }
}

pub fn class_membership(a: &ComplexMatrix) -> Result<ClassMembership> {
    if !a.is_upper_triangular() {
        return Err(Error::InvalidParameter("class membership expects an upper-triangular matrix".into()));
    }
    let n = a.dim();
    let defect = &ComplexMatrix::identity(n) - &(&a.adjoint() * a);
    Ok(ClassMembership {
        defect_singular_values: matrix_singular_values(&defect),
        spectral_norm: matrix_singular_values(a)[0],
        eigenvalue_moduli: (0..n).map(|i| a[(i, i)].norm()).collect(),
    })
}
