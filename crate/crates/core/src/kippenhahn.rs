//! The Kippenhahn polynomial `p_A(x, y, z) = det(x Re A + y Im A + z I)`.
//!
//! The coefficient of `z^{n-d}` is the elementary symmetric polynomial
//! `e_d` of the eigenvalues of `x Re A + y Im A`, a real binary form of
//! degree `d`. Each form is recovered from its values on the unit circle.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigs, imag_part, real_least_squares, real_part, ComplexMatrix};
use crate::numrange::{BoundarySample, POINT_TOL};

/// Largest dimension accepted by [`kipp_coeffs`].
pub const MAX_KIPP_DIM: usize = 16;
/// Relative refit residual above which [`kipp_coeffs`] fails.
pub const REFIT_REL_TOL: f64 = 1e-8;
/// Relative remainder bound for accepting a factor.
pub const FACTOR_REL_TOL: f64 = 1e-6;

/// Real homogeneous polynomial `sum c_{jk} x^j y^k z^{n-j-k}` over `j + k <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousPoly3 {
    degree: usize,
    coeffs: Vec<f64>,
}

fn slot(j: usize, k: usize) -> usize {
    let d = j + k;
    d * (d + 1) / 2 + k
}

impl HomogeneousPoly3 {
    pub fn zero(degree: usize) -> Self {
        Self { degree, coeffs: vec![0.0; (degree + 1) * (degree + 2) / 2] }
    }

    /// Builds a polynomial from `(j, k, c_{jk})` triples; unspecified
    /// coefficients are zero.
    pub fn from_terms(degree: usize, terms: &[(usize, usize, f64)]) -> Result<Self> {
        let mut p = Self::zero(degree);
        for &(j, k, c) in terms {
            if j + k > degree {
                return Err(Error::InvalidParameter(format!("monomial x^{j} y^{k} exceeds degree {degree}")));
            }
            p.coeffs[slot(j, k)] += c;
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `c_{jk}`, the coefficient of `x^j y^k z^{n-j-k}`.
    pub fn coeff(&self, j: usize, k: usize) -> f64 {
        if j + k > self.degree {
            0.0
        } else {
            self.coeffs[slot(j, k)]
        }
    }

    pub fn set_coeff(&mut self, j: usize, k: usize, c: f64) {
        self.coeffs[slot(j, k)] = c;
    }

    /// Coefficients of the binary form multiplying `z^{n-d}`, indexed by the
    /// power of `y`.
    pub fn form(&self, d: usize) -> &[f64] {
        &self.coeffs[d * (d + 1) / 2..=d * (d + 1) / 2 + d]
    }

    fn form_mut(&mut self, d: usize) -> &mut [f64] {
        &mut self.coeffs[d * (d + 1) / 2..=d * (d + 1) / 2 + d]
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.degree.max(other.degree);
        let mut worst: f64 = 0.0;
        for d in 0..=n {
            for k in 0..=d {
                worst = worst.max((self.coeff(d - k, k) - other.coeff(d - k, k)).abs());
            }
        }
        worst
    }

    /// `P(x, y, z)` by direct monomial summation.
    pub fn eval(&self, x: Complex64, y: Complex64, z: Complex64) -> Complex64 {
        let n = self.degree;
        let xp = powers(x, n);
        let yp = powers(y, n);
        let zp = powers(z, n);
        let mut acc = Complex64::new(0.0, 0.0);
        for d in 0..=n {
            for k in 0..=d {
                acc += self.coeff(d - k, k) * xp[d - k] * yp[k] * zp[n - d];
            }
        }
        acc
    }

    /// Coefficients of `z -> P(x, y, z)`; entry `d` multiplies `z^{n-d}`.
    pub fn restrict(&self, x: Complex64, y: Complex64) -> Vec<Complex64> {
        let n = self.degree;
        let xp = powers(x, n);
        let yp = powers(y, n);
        (0..=n).map(|d| (0..=d).map(|k| self.coeff(d - k, k) * xp[d - k] * yp[k]).sum()).collect()
    }

    /// Product of two homogeneous polynomials.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for d in 0..=self.degree {
            for e in 0..=other.degree {
                let prod = mul_forms(self.form(d), other.form(e));
                for (acc, v) in out.form_mut(d + e).iter_mut().zip(prod) {
                    *acc += v;
                }
            }
        }
        out
    }
}

fn powers(x: Complex64, n: usize) -> Vec<Complex64> {
    let mut p = Vec::with_capacity(n + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=n {
        p.push(acc);
        acc *= x;
    }
    p
}

fn mul_forms(f: &[f64], g: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Elementary symmetric polynomials `e_0..=e_n` of `values`.
fn elementary_symmetric(values: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; values.len() + 1];
    e[0] = 1.0;
    for (i, &v) in values.iter().enumerate() {
        for d in (1..=i + 1).rev() {
            e[d] += v * e[d - 1];
        }
    }
    e
}

/// Coefficients of `p_A`.
///
/// For `S = 2n + 2` directions `phi_s = pi (s + 1/2) / S` the pencil
/// `cos(phi_s) Re A + sin(phi_s) Im A` is diagonalised and `e_d` of its
/// eigenvalues is fitted by least squares in the monomials
/// `cos^{d-k} sin^k`. Fails with `IllConditioned` if any refit residual
/// exceeds `REFIT_REL_TOL` times the size of the sampled values.
pub fn kipp_coeffs(a: &ComplexMatrix) -> Result<HomogeneousPoly3> {
    let n = a.dim();
    if n > MAX_KIPP_DIM {
        return Err(Error::InvalidParameter(format!("dimension {n} exceeds {MAX_KIPP_DIM}")));
    }
    let re = real_part(a);
    let im = imag_part(a);
    let nodes = 2 * n + 2;
    let phis: Vec<f64> = (0..nodes).map(|s| PI * (s as f64 + 0.5) / nodes as f64).collect();
    let sym: Vec<Vec<f64>> = phis
        .par_iter()
        .map(|&phi| {
            let pencil = &re.scale(Complex64::new(phi.cos(), 0.0)) + &im.scale(Complex64::new(phi.sin(), 0.0));
            hermitian_eigs(&pencil).map(|eig| elementary_symmetric(&eig.values))
        })
        .collect::<Result<_>>()?;

    let mut p = HomogeneousPoly3::zero(n);
    p.set_coeff(0, 0, 1.0);
    for d in 1..=n {
        let design: Vec<Vec<f64>> = phis
            .iter()
            .map(|&phi| (0..=d).map(|k| phi.cos().powi((d - k) as i32) * phi.sin().powi(k as i32)).collect())
            .collect();
        let rhs: Vec<f64> = sym.iter().map(|e| e[d]).collect();
        let (c, residual) = real_least_squares(&design, &rhs);
        let scale = rhs.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let bound = REFIT_REL_TOL * scale;
        if residual > bound {
            return Err(Error::IllConditioned { residual, bound });
        }
        p.form_mut(d).copy_from_slice(&c);
    }
    Ok(p)
}

/// `P(x, y, z)`.
pub fn kipp_eval(p: &HomogeneousPoly3, x: Complex64, y: Complex64, z: Complex64) -> Complex64 {
    p.eval(x, y, z)
}

/// Divides `p` by `q` (monic in `z`) in decreasing powers of `z`, treating
/// `x` and `y` as symbols. Returns the quotient and the largest absolute
/// coefficient of the remainder, which has `z`-degree below `deg q`.
pub fn divide_remainder(p: &HomogeneousPoly3, q: &HomogeneousPoly3) -> Result<(HomogeneousPoly3, f64)> {
    let (np, nq) = (p.degree(), q.degree());
    if nq > np {
        return Err(Error::InvalidParameter(format!("divisor degree {nq} exceeds dividend degree {np}")));
    }
    if (q.coeff(0, 0) - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter("divisor must be monic in z".into()));
    }
    let nt = np - nq;
    let mut t = HomogeneousPoly3::zero(nt);
    let mut remainder: f64 = 0.0;
    for d in 0..=np {
        let mut form = p.form(d).to_vec();
        for e in 1..=nq.min(d) {
            if d - e > nt {
                continue;
            }
            for (acc, v) in form.iter_mut().zip(mul_forms(q.form(e), t.form(d - e))) {
                *acc -= v;
            }
        }
        if d <= nt {
            t.form_mut(d).copy_from_slice(&form);
        } else {
            remainder = form.iter().fold(remainder, |m, v| m.max(v.abs()));
        }
    }
    Ok((t, remainder))
}

/// What a factor candidate was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FactorKind {
    /// `Re(l) x + Im(l) y + z` for a candidate normal eigenvalue `l`.
    Linear { eigenvalue: Complex64 },
    /// Dual of a conic fitted through boundary points.
    Quadratic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorCandidate {
    pub kind: FactorKind,
    pub polynomial: HomogeneousPoly3,
    pub remainder_norm: f64,
}

/// Outcome of [`factor_probe`]. A missing factor means only that none was
/// detected at `factor_tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorReport {
    pub factor_tol: f64,
    pub linear: Vec<FactorCandidate>,
    /// Quadratic candidate with the smallest remainder, if any conic fit
    /// was usable.
    pub quadratic: Option<FactorCandidate>,
}

impl FactorReport {
    pub fn linear_factors(&self) -> Vec<&FactorCandidate> {
        self.linear.iter().filter(|c| c.remainder_norm <= self.factor_tol).collect()
    }

    pub fn quadratic_factor(&self) -> Option<&FactorCandidate> {
        self.quadratic.as_ref().filter(|c| c.remainder_norm <= self.factor_tol)
    }

    pub fn has_factor(&self) -> bool {
        !self.linear_factors().is_empty() || self.quadratic_factor().is_some()
    }
}

/// Searches `p` for real linear and quadratic factors.
///
/// Linear candidates come from the roots of `z -> p(1, i, z) = det(A + z I)`,
/// i.e. `-l` for the eigenvalues `l` of `A`. Quadratic candidates are duals of
/// conics fitted through six boundary points taken at several spacings.
pub fn factor_probe(p: &HomogeneousPoly3, boundary: &[BoundarySample]) -> Result<FactorReport> {
    if boundary.len() < 6 {
        return Err(Error::InvalidParameter(format!("need at least 6 boundary samples, got {}", boundary.len())));
    }
    let factor_tol = FACTOR_REL_TOL * p.max_abs_coeff();
    let n = p.degree();

    let mut linear = Vec::new();
    if n >= 1 {
        let roots = cluster_roots(&poly_roots(&p.restrict(Complex64::new(1.0, 0.0), Complex64::i())));
        for z in roots {
            let l = -z;
            let q = HomogeneousPoly3::from_terms(1, &[(0, 0, 1.0), (1, 0, l.re), (0, 1, l.im)])?;
            let (_, r) = divide_remainder(p, &q)?;
            linear.push(FactorCandidate {
                kind: FactorKind::Linear { eigenvalue: l },
                polynomial: q,
                remainder_norm: r,
            });
        }
    }

    let mut quadratic: Option<FactorCandidate> = None;
    if n >= 2 {
        let pts = distinct_points(boundary);
        if pts.len() >= 6 {
            for stride in [1, 4, 16, (pts.len() / 12).max(1)] {
                for start in (0..pts.len()).step_by((pts.len() / 8).max(1)) {
                    let window: Vec<Complex64> = (0..6).map(|i| pts[(start + i * stride) % pts.len()]).collect();
                    let Some(q) = dual_conic(&window) else { continue };
                    let (_, r) = divide_remainder(p, &q)?;
                    if quadratic.as_ref().is_none_or(|best| r < best.remainder_norm) {
                        quadratic =
                            Some(FactorCandidate { kind: FactorKind::Quadratic, polynomial: q, remainder_norm: r });
                    }
                }
            }
        }
    }
    Ok(FactorReport { factor_tol, linear, quadratic })
}

fn distinct_points(boundary: &[BoundarySample]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = Vec::new();
    for s in boundary {
        if pts.last().is_none_or(|q| (q - s.point).norm() > POINT_TOL) {
            pts.push(s.point);
        }
    }
    while pts.len() > 1 && (pts[0] - pts[pts.len() - 1]).norm() <= POINT_TOL {
        pts.pop();
    }
    pts
}

/// Fits a conic through six points and returns its dual quadratic form as
/// a polynomial monic in `z`, or `None` when the fit is degenerate.
fn dual_conic(points: &[Complex64]) -> Option<HomogeneousPoly3> {
    let m = points.len() as f64;
    let centre: Complex64 = points.iter().sum::<Complex64>() / m;
    let spread = points.iter().map(|p| (p - centre).norm()).fold(0.0, f64::max);
    if spread <= POINT_TOL {
        return None;
    }
    // conic a X^2 + b XY + c Y^2 + d X + e Y + f = 0 in normalised coordinates
    let rows: Vec<[f64; 6]> = points
        .iter()
        .map(|p| {
            let w = (p - centre) / spread;
            [w.re * w.re, w.re * w.im, w.im * w.im, w.re, w.im, 1.0]
        })
        .collect();
    let gram = ComplexMatrix::from_fn(6, |i, j| Complex64::new(rows.iter().map(|r| r[i] * r[j]).sum(), 0.0));
    let eig = hermitian_eigs(&gram).ok()?;
    let v: Vec<f64> = eig.vector(0).iter().map(|z| z.re).collect();
    let c_norm = [[v[0], v[1] / 2.0, v[3] / 2.0], [v[1] / 2.0, v[2], v[4] / 2.0], [v[3] / 2.0, v[4] / 2.0, v[5]]];
    // (X, Y, 1) = T (x, y, 1)
    let s = 1.0 / spread;
    let t = [[s, 0.0, -centre.re * s], [0.0, s, -centre.im * s], [0.0, 0.0, 1.0]];
    let c = congruence(&t, &c_norm);
    let dual = adjugate(&c);
    let lead = dual[2][2];
    let scale = dual.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 || lead.abs() <= 1e-12 * scale {
        return None;
    }
    let g = |i: usize, j: usize| dual[i][j] / lead;
    HomogeneousPoly3::from_terms(
        2,
        &[
            (0, 0, 1.0),
            (1, 0, 2.0 * g(0, 2)),
            (0, 1, 2.0 * g(1, 2)),
            (2, 0, g(0, 0)),
            (1, 1, 2.0 * g(0, 1)),
            (0, 2, g(1, 1)),
        ],
    )
    .ok()
}

/// `T^T C T` for 3×3 matrices.
fn congruence(t: &[[f64; 3]; 3], c: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    out[i][j] += t[k][i] * c[k][l] * t[l][j];
                }
            }
        }
    }
    out
}

fn adjugate(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut adj = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    }
    adj
}

/// Roots of `sum_d c_d z^{n-d}` with `c_0 != 0` by Durand–Kerner iteration.
fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / coeffs[0]).collect();
    let eval = |z: Complex64| monic.iter().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let bound = 1.0 + monic[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::from_polar(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| bound * seed.powu(k as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut moved: f64 = 0.0;
        for i in 0..n {
            let zi = roots[i];
            let denom: Complex64 = (0..n).filter(|&j| j != i).map(|j| zi - roots[j]).product();
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            moved = moved.max(step.norm());
        }
        if moved <= 1e-15 * bound {
            break;
        }
    }
    roots
}

/// Merges roots that agree to `1e-4` relative, as multiple roots only
/// converge to about `eps^{1/k}`.
fn cluster_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let scale = 1.0 + roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &z in roots {
        match groups.iter_mut().find(|g| (g[0] - z).norm() <= 1e-4 * scale) {
            Some(g) => g.push(z),
            None => groups.push(vec![z]),
        }
    }
    groups.iter().map(|g| g.iter().sum::<Complex64>() / g.len() as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{kms, KmsParams};
    use crate::numrange::{boundary_sample, support};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn km(n: usize, a: f64) -> ComplexMatrix {
        kms(KmsParams::real(n, a).unwrap())
    }

    #[test]
    fn two_by_two_nilpotent() {
        let b = 1.7;
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 2.0 * b], vec![0.0, 0.0]]).unwrap();
        let p = kipp_coeffs(&a).unwrap();
        let want = HomogeneousPoly3::from_terms(2, &[(0, 0, 1.0), (2, 0, -b * b), (0, 2, -b * b)]).unwrap();
        assert!(p.max_abs_diff(&want) < 1e-10);
    }

    #[test]
    fn diagonal_hermitian_factors() {
        let d = [1.0, -2.0, 0.5];
        let a = ComplexMatrix::diagonal(&d.map(c));
        let p = kipp_coeffs(&a).unwrap();
        for &(x, y, z) in &[(0.3, 1.1, -0.7), (2.0, 0.0, 1.0), (-1.0, 0.4, 0.2)] {
            let want: f64 = d.iter().map(|dk| dk * x + z).product();
            assert!((p.eval(c(x), c(y), c(z)) - c(want)).norm() < 1e-10);
        }
    }

    #[test]
    fn nilpotent_restriction_is_pure_power() {
        for n in 2..=6 {
            let p = kipp_coeffs(&km(n, 0.8)).unwrap();
            let r = p.restrict(c(1.0), Complex64::i());
            assert!((r[0] - c(1.0)).norm() < 1e-12);
            for coeff in &r[1..] {
                assert!(coeff.norm() < 1e-9, "n = {n}: {coeff}");
            }
        }
    }

    #[test]
    fn four_by_four_constant_term() {
        // p(1, y, 0) = a^4 (1 + y^2)(1 - 4a^2 + y^2) / 16
        let a = 1.0;
        let p = kipp_coeffs(&km(4, a)).unwrap();
        assert!((p.eval(c(1.0), c(0.0), c(0.0)) - c(-3.0 / 16.0)).norm() < 1e-12);
        let a4 = a.powi(4) / 16.0;
        assert!((p.coeff(4, 0) - a4 * (1.0 - 4.0 * a * a)).abs() < 1e-10);
        assert!((p.coeff(2, 2) - a4 * (2.0 - 4.0 * a * a)).abs() < 1e-10);
        assert!((p.coeff(0, 4) - a4).abs() < 1e-10);
        assert!(p.coeff(3, 1).abs() < 1e-10 && p.coeff(1, 3).abs() < 1e-10);
    }

    #[test]
    fn support_value_is_a_root() {
        let a = km(5, 1.3);
        let p = kipp_coeffs(&a).unwrap();
        for k in 0..12 {
            let t = 0.5 * k as f64;
            let h = support(&a, t).unwrap();
            assert!(p.eval(c(t.cos()), c(t.sin()), c(-h)).norm() < 1e-7);
        }
    }

    #[test]
    fn monic_and_homogeneous() {
        let p = kipp_coeffs(&km(4, 2.0)).unwrap();
        assert_eq!(p.eval(c(0.0), c(0.0), c(1.0)), c(1.0));
        let (x, y, z) = (Complex64::new(0.3, 0.1), c(-0.8), Complex64::new(0.2, 0.5));
        let lhs = p.eval(x * 2.0, y * 2.0, z * 2.0);
        let rhs = p.eval(x, y, z) * 16.0;
        assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm());
    }

    #[test]
    fn rejects_large_dimension() {
        assert!(matches!(kipp_coeffs(&ComplexMatrix::zeros(17)), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn division_examples() {
        let b = 0.9;
        let p = HomogeneousPoly3::from_terms(2, &[(0, 0, 1.0), (2, 0, -b * b), (0, 2, -b * b)]).unwrap();
        let (q, r) = divide_remainder(&p, &p).unwrap();
        assert_eq!(q.degree(), 0);
        assert_eq!(q.coeff(0, 0), 1.0);
        assert_eq!(r, 0.0);

        let diff = HomogeneousPoly3::from_terms(2, &[(0, 0, 1.0), (2, 0, -1.0)]).unwrap();
        let lin = HomogeneousPoly3::from_terms(1, &[(0, 0, 1.0), (1, 0, 1.0)]).unwrap();
        let (q, r) = divide_remainder(&diff, &lin).unwrap();
        let want = HomogeneousPoly3::from_terms(1, &[(0, 0, 1.0), (1, 0, -1.0)]).unwrap();
        assert_eq!(q, want);
        assert_eq!(r, 0.0);

        let p = kipp_coeffs(&km(2, 1.0)).unwrap();
        let probe = HomogeneousPoly3::from_terms(1, &[(0, 0, 1.0), (1, 0, 0.5)]).unwrap();
        assert!(divide_remainder(&p, &probe).unwrap().1 > 0.1);
    }

    #[test]
    fn division_reconstructs() {
        let p = kipp_coeffs(&km(5, 0.7)).unwrap();
        let q = kipp_coeffs(&km(2, 0.4)).unwrap();
        let (t, r) = divide_remainder(&p, &q).unwrap();
        let prod = q.mul(&t);
        let mut worst_rem: f64 = 0.0;
        for d in 0..=5 {
            for k in 0..=d {
                let gap = (p.coeff(d - k, k) - prod.coeff(d - k, k)).abs();
                if d <= 3 {
                    assert!(gap < 1e-12);
                } else {
                    worst_rem = worst_rem.max(gap);
                }
            }
        }
        assert!((worst_rem - r).abs() < 1e-12);
    }

    #[test]
    fn division_rejects_bad_divisor() {
        let p = HomogeneousPoly3::from_terms(1, &[(0, 0, 1.0)]).unwrap();
        let q = HomogeneousPoly3::from_terms(2, &[(0, 0, 1.0)]).unwrap();
        assert!(divide_remainder(&p, &q).is_err());
        let q = HomogeneousPoly3::from_terms(1, &[(0, 0, 2.0)]).unwrap();
        assert!(divide_remainder(&p, &q).is_err());
    }

    #[test]
    fn probe_finds_circle_factor() {
        let a = km(2, 0.6);
        let p = kipp_coeffs(&a).unwrap();
        let report = factor_probe(&p, &boundary_sample(&a, 180).unwrap()).unwrap();
        let quad = report.quadratic_factor().expect("quadratic factor");
        assert!(quad.polynomial.max_abs_diff(&p) < 1e-6);
        assert!(report.linear_factors().is_empty());
    }

    #[test]
    fn probe_finds_nothing_for_four_by_four() {
        let a = km(4, 0.5);
        let p = kipp_coeffs(&a).unwrap();
        let report = factor_probe(&p, &boundary_sample(&a, 360).unwrap()).unwrap();
        assert!(!report.has_factor(), "{report:?}");
    }

    #[test]
    fn probe_splits_normal_matrix() {
        let a = ComplexMatrix::diagonal(&[c(1.0), Complex64::i()]);
        let p = kipp_coeffs(&a).unwrap();
        let report = factor_probe(&p, &boundary_sample(&a, 64).unwrap()).unwrap();
        let found = report.linear_factors();
        assert_eq!(found.len(), 2);
        for f in found {
            let l = match f.kind {
                FactorKind::Linear { eigenvalue } => eigenvalue,
                FactorKind::Quadratic => unreachable!(),
            };
            assert!((l - c(1.0)).norm() < 1e-8 || (l - Complex64::i()).norm() < 1e-8);
        }
    }

    #[test]
    fn elementary_symmetric_values() {
        assert_eq!(elementary_symmetric(&[1.0, 2.0, 3.0]), vec![1.0, 6.0, 11.0, 6.0]);
    }
}
