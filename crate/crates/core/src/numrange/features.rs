use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{
    cluster_tol, golden_section_max, grid_theta, numerical_radius, probe_eigs, sample_from, support_gap_grid,
    BoundarySample, CONTAINMENT_SLACK, DEFAULT_GRID, DISC_TOL, POINT_TOL, SEG_MIN_LENGTH, TOUCH_TOL,
};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigs, rotated_imag_part, ComplexMatrix, HermitianEigen};

/// Flat piece of `∂W(A)` found by [`detect_segment`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentReport {
    pub present: bool,
    /// Real part of the segment midpoint; for a vertical segment this is the
    /// line `Re z = abscissa`.
    pub abscissa: f64,
    pub endpoints: (Complex64, Complex64),
    pub direction_theta: f64,
    pub length: f64,
}

impl SegmentReport {
    fn absent() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self { present: false, abscissa: f64::NAN, endpoints: (z, z), direction_theta: f64::NAN, length: 0.0 }
    }
}

/// The part of `∂W(A)` on the supporting line with normal `e^{i theta}`:
/// the extreme eigenvalues of `Im(e^{-i theta} A)` compressed to the top
/// eigenspace of `Re(e^{-i theta} A)`, mapped back to the plane.
fn support_line_interval(a: &ComplexMatrix, theta: f64, eig: &HermitianEigen) -> Result<(f64, f64, f64)> {
    let n = eig.len();
    let tol = cluster_tol(a);
    let k = eig.top_multiplicity(tol);
    let h = eig.max_value();
    let basis: Vec<Vec<Complex64>> = (n - k..n).map(|c| eig.vector(c)).collect();
    let im = rotated_imag_part(a, theta);
    let compressed = ComplexMatrix::from_fn(k, |r, c| {
        let v = im.mul_vec(&basis[c]);
        basis[r].iter().zip(&v).map(|(x, y)| x.conj() * y).sum()
    });
    let mu = hermitian_eigs(&compressed)?;
    Ok((h, mu.min_value(), mu.max_value()))
}

fn line_point(theta: f64, h: f64, mu: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta) * Complex64::new(h, mu)
}

/// Scans the default grid for directions whose top eigenvalue is multiple.
pub fn detect_segment(a: &ComplexMatrix) -> Result<SegmentReport> {
    detect_segment_on(a, DEFAULT_GRID)
}

/// Segment detection on an `m`-direction grid.
///
/// Candidate directions are grid points with a tied top eigenvalue plus
/// local minima of the top spectral gap, refined by golden-section search.
/// The longest flat piece of length at least `SEG_MIN_LENGTH` is reported.
pub fn detect_segment_on(a: &ComplexMatrix, m: usize) -> Result<SegmentReport> {
    if a.dim() < 2 {
        return Ok(SegmentReport::absent());
    }
    let tol = cluster_tol(a);
    let top_gap = |eig: &HermitianEigen| {
        let n = eig.len();
        eig.values[n - 1] - eig.values[n - 2]
    };
    let eigs: Vec<HermitianEigen> =
        (0..m).into_par_iter().map(|k| probe_eigs(a, grid_theta(k, m))).collect::<Result<_>>()?;
    let gaps: Vec<f64> = eigs.iter().map(top_gap).collect();

    let step = TAU / m as f64;
    // a crossing between grid points leaves a gap of at most |slope| * step
    let coarse = 2.0 * a.frobenius_norm() * step;
    let mut candidates: Vec<f64> = Vec::new();
    for k in 0..m {
        let g = gaps[k];
        if g <= tol {
            candidates.push(grid_theta(k, m));
            continue;
        }
        let prev = gaps[(k + m - 1) % m];
        let next = gaps[(k + 1) % m];
        if g < prev && g <= next && g <= coarse {
            let t0 = grid_theta(k, m);
            let (t, neg_gap) = golden_section_max(|t| Ok(-top_gap(&probe_eigs(a, t)?)), t0 - step, t0 + step, 1e-13)?;
            if -neg_gap <= tol {
                candidates.push(t);
            }
        }
    }

    let mut best = SegmentReport::absent();
    for theta in candidates {
        let eig = probe_eigs(a, theta)?;
        let (h, lo, hi) = support_line_interval(a, theta, &eig)?;
        let length = hi - lo;
        if length >= SEG_MIN_LENGTH && length > best.length {
            let p = line_point(theta, h, lo);
            let q = line_point(theta, h, hi);
            best = SegmentReport {
                present: true,
                abscissa: 0.5 * (p.re + q.re),
                endpoints: (p, q),
                direction_theta: theta.rem_euclid(TAU),
                length,
            };
        }
    }
    Ok(best)
}

/// Outcome of [`disc_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscReport {
    pub is_disc: bool,
    pub center: Complex64,
    pub radius: f64,
    /// `max |h(theta) - r - Re(e^{-i theta} c)|` over the grid.
    pub support_deviation: f64,
    /// `max ||q(theta) - c| - r|` over the grid.
    pub radial_deviation: f64,
}

pub fn disc_check(a: &ComplexMatrix) -> Result<DiscReport> {
    disc_check_on(a, DEFAULT_GRID)
}

/// A disc with center `c` and radius `r` has `h(theta) = r + Re(e^{-i theta} c)`.
/// The center and radius are read off the first Fourier modes of `h`; the
/// range is a disc when both the support residual and the radial spread of
/// the boundary points stay within `DISC_TOL` and `r > DISC_TOL`.
pub fn disc_check_on(a: &ComplexMatrix, m: usize) -> Result<DiscReport> {
    let samples = super::boundary_sample(a, m)?;
    let mf = m as f64;
    let radius = samples.iter().map(|s| s.support).sum::<f64>() / mf;
    let cx = 2.0 / mf * samples.iter().map(|s| s.support * s.theta.cos()).sum::<f64>();
    let cy = 2.0 / mf * samples.iter().map(|s| s.support * s.theta.sin()).sum::<f64>();
    let center = Complex64::new(cx, cy);
    let support_deviation = samples
        .iter()
        .map(|s| (s.support - radius - (cx * s.theta.cos() + cy * s.theta.sin())).abs())
        .fold(0.0, f64::max);
    let radial_deviation = samples.iter().map(|s| ((s.point - center).norm() - radius).abs()).fold(0.0, f64::max);
    Ok(DiscReport {
        is_disc: radius > DISC_TOL && support_deviation <= DISC_TOL && radial_deviation <= DISC_TOL,
        center,
        radius,
        support_deviation,
        radial_deviation,
    })
}

/// Connected run of boundary samples lying on the circle `|z| = w(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TouchCluster {
    /// Member of largest modulus.
    pub representative: Complex64,
    pub theta: f64,
    pub members: Vec<BoundarySample>,
}

pub fn circle_touch_points(a: &ComplexMatrix) -> Result<Vec<TouchCluster>> {
    circle_touch_points_on(a, DEFAULT_GRID)
}

/// Boundary samples with `|q| >= w(A) - TOUCH_TOL`, grouped into clusters of
/// grid-consecutive samples whose points stay within one arc step of each
/// other.
pub fn circle_touch_points_on(a: &ComplexMatrix, m: usize) -> Result<Vec<TouchCluster>> {
    let w = numerical_radius(a)?;
    let samples = super::boundary_sample(a, m)?;
    let touching: Vec<bool> = samples.iter().map(|s| s.point.norm() >= w - TOUCH_TOL).collect();
    let link = 2.0 * w * TAU / m as f64 + POINT_TOL;
    let linked = |k: usize| {
        let next = (k + 1) % m;
        touching[k] && touching[next] && (samples[k].point - samples[next].point).norm() <= link
    };

    if touching.iter().all(|&t| t) && (0..m).all(linked) {
        return Ok(vec![make_cluster(samples)]);
    }
    // start the cyclic walk right after a break in the chain
    let start = (0..m).find(|&k| !linked(k)).map_or(0, |k| (k + 1) % m);
    let mut clusters = Vec::new();
    let mut current: Vec<BoundarySample> = Vec::new();
    for step in 0..m {
        let k = (start + step) % m;
        if touching[k] {
            current.push(samples[k]);
        }
        if !linked(k) && !current.is_empty() {
            clusters.push(make_cluster(std::mem::take(&mut current)));
        }
    }
    if !current.is_empty() {
        clusters.push(make_cluster(current));
    }
    Ok(clusters)
}

fn make_cluster(members: Vec<BoundarySample>) -> TouchCluster {
    let best = members.iter().max_by(|x, y| x.point.norm().total_cmp(&y.point.norm())).expect("cluster is non-empty");
    TouchCluster { representative: best.point, theta: best.theta, members }
}

/// Largest number of local gap minima refined per call.
const MAX_REFINED_MINIMA: usize = 16;

/// Points of `∂W(A) ∩ ∂W(B)` for `W(B) ⊆ W(A)`.
///
/// Touch directions are localised on an `m`-direction grid, refined by
/// bisection on the derivative of the support gap, and accepted when the
/// gap is within `TOUCH_TOL` and the two boundary pieces on the common
/// supporting line meet within `POINT_TOL`.
pub fn boundary_touch(a: &ComplexMatrix, b: &ComplexMatrix, m: usize) -> Result<Vec<Complex64>> {
    let gaps = support_gap_grid(b, a, m)?;
    let min_gap = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    if min_gap < -CONTAINMENT_SLACK {
        return Err(Error::NotContained { gap: min_gap });
    }
    let step = TAU / m as f64;

    let mut directions: Vec<f64> = (0..m).filter(|&k| gaps[k] <= TOUCH_TOL).map(|k| grid_theta(k, m)).collect();
    let mut minima: Vec<usize> = (0..m)
        .filter(|&k| {
            let g = gaps[k];
            g > TOUCH_TOL && g < gaps[(k + m - 1) % m] && g <= gaps[(k + 1) % m]
        })
        .collect();
    minima.sort_by(|&i, &j| gaps[i].total_cmp(&gaps[j]));
    minima.truncate(MAX_REFINED_MINIMA);
    for k in minima {
        let t0 = grid_theta(k, m);
        directions.push(refine_touch_direction(a, b, t0 - step, t0 + step)?);
    }

    let mut points: Vec<Complex64> = Vec::new();
    for theta in directions {
        for p in touch_at(a, b, theta)? {
            if points.iter().all(|q| (q - p).norm() > POINT_TOL) {
                points.push(p);
            }
        }
    }
    Ok(points)
}

/// Derivative of the support gap: `h'(theta) = Im(e^{-i theta} q(theta))`.
fn gap_slope(a: &ComplexMatrix, b: &ComplexMatrix, theta: f64) -> Result<f64> {
    let rot = Complex64::from_polar(1.0, -theta);
    let qa = super::boundary_point(a, theta)?.point;
    let qb = super::boundary_point(b, theta)?.point;
    Ok((rot * (qa - qb)).im)
}

fn refine_touch_direction(a: &ComplexMatrix, b: &ComplexMatrix, lo: f64, hi: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let s_lo = gap_slope(a, b, lo)?;
    let s_hi = gap_slope(a, b, hi)?;
    if s_lo < 0.0 && s_hi > 0.0 {
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if gap_slope(a, b, mid)? < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return Ok(0.5 * (lo + hi));
    }
    let gap = |t: f64| -> Result<f64> { Ok(-(probe_eigs(a, t)?.max_value() - probe_eigs(b, t)?.max_value())) };
    Ok(golden_section_max(gap, lo, hi, 1e-12)?.0)
}

/// Intersection of the boundary pieces of `W(A)` and `W(B)` on the
/// supporting line with normal `e^{i theta}`, or nothing if the support
/// values differ by more than `TOUCH_TOL`.
fn touch_at(a: &ComplexMatrix, b: &ComplexMatrix, theta: f64) -> Result<Vec<Complex64>> {
    let ea = probe_eigs(a, theta)?;
    let eb = probe_eigs(b, theta)?;
    if ea.max_value() - eb.max_value() > TOUCH_TOL {
        return Ok(Vec::new());
    }
    let (ha, alo, ahi) = interval_or_point(a, theta, &ea)?;
    let (_, blo, bhi) = interval_or_point(b, theta, &eb)?;
    let lo = alo.max(blo);
    let hi = ahi.min(bhi);
    if lo > hi + POINT_TOL {
        return Ok(Vec::new());
    }
    if hi - lo <= POINT_TOL {
        return Ok(vec![line_point(theta, ha, 0.5 * (lo + hi))]);
    }
    Ok(vec![line_point(theta, ha, lo), line_point(theta, ha, hi)])
}

fn interval_or_point(a: &ComplexMatrix, theta: f64, eig: &HermitianEigen) -> Result<(f64, f64, f64)> {
    if eig.top_multiplicity(cluster_tol(a)) >= 2 {
        return support_line_interval(a, theta, eig);
    }
    let s = sample_from(a, theta, eig);
    let mu = (Complex64::from_polar(1.0, -theta) * s.point).im;
    Ok((s.support, mu, mu))
}
