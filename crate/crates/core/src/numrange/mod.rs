//! Numerical range `W(A)` through its support function.
//!
//! Direction convention: `theta` is the angle of the outward normal. The
//! support value is `h(theta) = max sigma(Re(e^{-i theta} A))` and the
//! boundary point `q(theta) = <A x, x>` for a unit top eigenvector `x`, so
//! `Re(e^{-i theta} q(theta)) = h(theta)`.

mod features;

pub use features::{
    boundary_touch, circle_touch_points, circle_touch_points_on, detect_segment, detect_segment_on, disc_check,
    disc_check_on, DiscReport, SegmentReport, TouchCluster,
};

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::linalg::{hermitian_eigs, numerical_rank, rotated_real_part, ComplexMatrix, HermitianEigen};

/// Relative eigenvalue clustering tolerance: `cluster_tol = 1e-8 (1 + ||A||_F)`.
pub const CLUSTER_REL_TOL: f64 = 1e-8;
/// Support values closer than this count as touching.
pub const TOUCH_TOL: f64 = 1e-7;
/// Boundary points closer than this are the same point.
pub const POINT_TOL: f64 = 1e-6;
/// Disc detection tolerance on support and radial deviations.
pub const DISC_TOL: f64 = 1e-7;
/// Shortest flat piece reported as a boundary segment.
pub const SEG_MIN_LENGTH: f64 = 1e-5;
/// Default number of directions for grid scans.
pub const DEFAULT_GRID: usize = 720;
/// Allowed negative containment gap before `NotContained` is raised.
pub const CONTAINMENT_SLACK: f64 = 1e-9;

/// Tolerance for counting eigenvalues tied with the largest one.
pub fn cluster_tol(a: &ComplexMatrix) -> f64 {
    CLUSTER_REL_TOL * (1.0 + a.frobenius_norm())
}

/// One supporting-line probe of `W(A)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample {
    pub theta: f64,
    pub support: f64,
    pub point: Complex64,
    pub multiplicity: usize,
}

/// `k`-th direction of a uniform grid of `m` directions on `[0, 2 pi)`.
pub fn grid_theta(k: usize, m: usize) -> f64 {
    (k as f64 / m as f64) * TAU
}

pub(crate) fn probe_eigs(a: &ComplexMatrix, theta: f64) -> Result<HermitianEigen> {
    hermitian_eigs(&rotated_real_part(a, theta))
}

fn sample_from(a: &ComplexMatrix, theta: f64, eig: &HermitianEigen) -> BoundarySample {
    let top = eig.len() - 1;
    let x = eig.vector(top);
    BoundarySample {
        theta,
        support: eig.max_value(),
        point: a.quadratic_form(&x),
        multiplicity: eig.top_multiplicity(cluster_tol(a)),
    }
}

/// Support function `h_A(theta)`.
pub fn support(a: &ComplexMatrix, theta: f64) -> Result<f64> {
    Ok(probe_eigs(a, theta)?.max_value())
}

/// Boundary point with outward normal `e^{i theta}`.
pub fn boundary_point(a: &ComplexMatrix, theta: f64) -> Result<BoundarySample> {
    let eig = probe_eigs(a, theta)?;
    Ok(sample_from(a, theta, &eig))
}

/// Unit top eigenvector of `Re(e^{-i theta} A)`; its Rayleigh quotient is
/// the boundary point at `theta`.
pub fn boundary_vector(a: &ComplexMatrix, theta: f64) -> Result<Vec<Complex64>> {
    let eig = probe_eigs(a, theta)?;
    Ok(eig.vector(eig.len() - 1))
}

/// Probes at `theta_k = 2 pi k / m`, `k = 0..m`, in order.
pub fn boundary_sample(a: &ComplexMatrix, m: usize) -> Result<Vec<BoundarySample>> {
    (0..m).into_par_iter().map(|k| boundary_point(a, grid_theta(k, m))).collect()
}

/// Support values on the uniform grid of `m` directions.
pub fn support_grid(a: &ComplexMatrix, m: usize) -> Result<Vec<f64>> {
    (0..m).into_par_iter().map(|k| support(a, grid_theta(k, m))).collect()
}

/// Numerical radius `w(A) = max_theta h_A(theta)`.
pub fn numerical_radius(a: &ComplexMatrix) -> Result<f64> {
    Ok(numerical_radius_with_direction(a)?.0)
}

/// Numerical radius and a direction attaining it. The argmax of the default
/// grid is refined by golden-section search to `1e-10` in `theta`.
pub fn numerical_radius_with_direction(a: &ComplexMatrix) -> Result<(f64, f64)> {
    let m = DEFAULT_GRID;
    let h = support_grid(a, m)?;
    let (k, &best) = h.iter().enumerate().max_by(|x, y| x.1.total_cmp(y.1)).expect("non-empty grid");
    let step = TAU / m as f64;
    let theta0 = grid_theta(k, m);
    let (theta, value) = golden_section_max(|t| support(a, t), theta0 - step, theta0 + step, 1e-10)?;
    if value >= best {
        Ok((value, theta.rem_euclid(TAU)))
    } else {
        Ok((best, theta0))
    }
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
pub(crate) fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

/// `min_k (h_outer(theta_k) - h_inner(theta_k))` over `m` directions.
///
/// Positive certifies `W(inner)` inside the interior of `W(outer)` on the
/// grid; non-negative certifies containment.
pub fn interior_gap(inner: &ComplexMatrix, outer: &ComplexMatrix, m: usize) -> Result<f64> {
    let gaps = support_gap_grid(inner, outer, m)?;
    Ok(gaps.into_iter().fold(f64::INFINITY, f64::min))
}

pub(crate) fn support_gap_grid(inner: &ComplexMatrix, outer: &ComplexMatrix, m: usize) -> Result<Vec<f64>> {
    (0..m)
        .into_par_iter()
        .map(|k| {
            let t = grid_theta(k, m);
            Ok(support(outer, t)? - support(inner, t)?)
        })
        .collect()
}

/// Numerical rank of the span of the top eigenvectors over `m` directions.
///
/// The eigenvector curve of a strongly graded matrix hugs a low-dimensional
/// subspace (for `J_8(2)` the last singular value is about `6e-10` of the
/// first), so the rank is taken at the machine-precision threshold
/// `max(n, m) eps sigma_max` rather than at `RANK_REL_TOL`.
pub fn boundary_span_rank(a: &ComplexMatrix, m: usize) -> Result<usize> {
    let cols: Vec<Vec<Complex64>> =
        (0..m).into_par_iter().map(|k| boundary_vector(a, grid_theta(k, m))).collect::<Result<_>>()?;
    let tol = a.dim().max(m) as f64 * f64::EPSILON;
    Ok(numerical_rank(&cols, tol))
}
