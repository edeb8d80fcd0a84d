//! Independent reference computations shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use kmsrange::linalg::ComplexMatrix;
use kmsrange::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Householder reduction of a Hermitian matrix to real tridiagonal form.
/// Returns the diagonal and the squared moduli of the off-diagonal.
pub fn tridiagonalize(h: &ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = h.dim();
    let zero = Complex64::new(0.0, 0.0);
    let mut m: Vec<Vec<Complex64>> = (0..n).map(|i| (0..n).map(|j| h[(i, j)]).collect()).collect();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| m[i][k]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { Complex64::new(1.0, 0.0) };
        let mut v = x.clone();
        v[0] += phase * norm;
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let mut full = vec![zero; n];
        for (i, z) in v.iter().enumerate() {
            full[k + 1 + i] = z / vn;
        }
        // m <- (I - 2 v v*) m (I - 2 v v*)
        for col in 0..n {
            let dot: Complex64 = (0..n).map(|i| full[i].conj() * m[i][col]).sum();
            for i in 0..n {
                m[i][col] -= full[i] * dot * 2.0;
            }
        }
        for row in m.iter_mut() {
            let dot: Complex64 = (0..n).map(|j| row[j] * full[j]).sum();
            for j in 0..n {
                row[j] -= dot * full[j].conj() * 2.0;
            }
        }
    }
    let d = (0..n).map(|i| m[i][i].re).collect();
    let e2 = (1..n).map(|i| m[i][i - 1].norm_sqr()).collect();
    (d, e2)
}

/// Sturm count: number of eigenvalues of the tridiagonal `(d, e2)` below `sigma`.
pub fn sturm_count(d: &[f64], e2: &[f64], sigma: f64, pivmin: f64) -> usize {
    let mut negatives = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        q = d[i] - sigma - if i > 0 { e2[i - 1] / q } else { 0.0 };
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            negatives += 1;
        }
    }
    negatives
}

fn gershgorin(h: &ComplexMatrix) -> f64 {
    let n = h.dim();
    (0..n).map(|i| (0..n).map(|j| h[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// `k`-th smallest eigenvalue (0-based) of a Hermitian matrix by bisection
/// on the Sturm count of its tridiagonal form.
pub fn eig_by_bisection(h: &ComplexMatrix, k: usize) -> f64 {
    let r = gershgorin(h) + 1.0;
    let (d, e2) = tridiagonalize(h);
    let pivmin = f64::MIN_POSITIVE * e2.iter().copied().fold(1.0, f64::max);
    let (mut lo, mut hi) = (-r, r);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(&d, &e2, mid, pivmin) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn hermitian_part(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    ComplexMatrix::from_fn(n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5)
}

/// `Re(e^{-i theta} A)` built directly from the entries.
pub fn rotated_hermitian_part(a: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    let r = Complex64::from_polar(1.0, -theta);
    let n = a.dim();
    ComplexMatrix::from_fn(n, |i, j| (r * a[(i, j)] + (r * a[(j, i)]).conj()) * 0.5)
}

pub fn random_unit_vector<R: Rng>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let v: Vec<Complex64> =
        (0..n).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    let len = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / len).collect()
}

pub fn rayleigh(a: &ComplexMatrix, x: &[Complex64]) -> Complex64 {
    let n = a.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += x[i].conj() * a[(i, j)] * x[j];
        }
    }
    acc
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull in counter-clockwise order (monotone chain).
pub fn convex_hull(points: &[Complex64]) -> Vec<(f64, f64)> {
    let mut p: Vec<(f64, f64)> = points.iter().map(|z| (z.re, z.im)).collect();
    p.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0.0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0.0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    let (cx, cy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt()
}

/// Euclidean distance from `z` to the convex polygon `hull` (zero inside).
pub fn distance_to_hull(z: Complex64, hull: &[(f64, f64)]) -> f64 {
    let p = (z.re, z.im);
    let k = hull.len();
    if k == 0 {
        return f64::INFINITY;
    }
    if k == 1 {
        return ((p.0 - hull[0].0).powi(2) + (p.1 - hull[0].1).powi(2)).sqrt();
    }
    let inside = k >= 3 && (0..k).all(|i| cross(hull[i], hull[(i + 1) % k], p) >= 0.0);
    if inside {
        return 0.0;
    }
    (0..k).map(|i| segment_distance(p, hull[i], hull[(i + 1) % k])).fold(f64::INFINITY, f64::min)
}
