use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{modulus_class, CheckResult, ModulusClass, Params, Tally};
use crate::error::Result;
use crate::kippenhahn::kipp_coeffs;
use crate::linalg::{det, hermitian_eigs, krylov_rank, matrix_singular_values, real_part, ComplexMatrix};
use crate::models::{
    affine_class_map, class_membership, jordan, kms, principal_submatrix, sine_roots, snm1_standard, KmsParams,
};
use crate::numrange::{
    boundary_point, boundary_sample, boundary_span_rank, boundary_touch, boundary_vector, circle_touch_points_on,
    detect_segment_on, disc_check_on, interior_gap, numerical_radius, support_grid,
};

/// Every check id known to the suite.
pub const CHECK_IDS: &[&str] = &[
    "circle_touch",
    "class_map",
    "compression_strict",
    "conjugate_symmetry",
    "cyclic_boundary_vectors",
    "det_identity",
    "disjoint_submatrix_boundaries",
    "invariant_block_interior",
    "jordan_disc",
    "kipp_pure_power",
    "middle_deletion_minimum",
    "middle_deletion_touch",
    "monotone_containment",
    "nilpotent",
    "poisson_spectrum",
    "quartic_constant_term",
    "segment_and_disc",
    "similarity",
    "span_rank",
    "standard_inverse_touch",
    "top_multiplicity",
    "unitary_phase",
];

const CLASS_TOL: f64 = 1e-8;

fn km(n: usize, a: Complex64) -> ComplexMatrix {
    kms(KmsParams { n, a })
}

/// Runs `body`, turning a numerical error into a failed result.
fn guarded(tally: Tally, body: impl FnOnce(&mut Tally) -> Result<()>) -> CheckResult {
    let mut tally = tally;
    match body(&mut tally) {
        Ok(()) => tally.finish(),
        Err(e) => tally.fail_with(&e),
    }
}

/// Skips the near-unit regime, where `det(2 Re J_n(a) + I)` is close to zero
/// and eigenvalue clusters blur.
#[allow(clippy::result_large_err)]
fn near_unit(t: Tally, a: Complex64) -> std::result::Result<Tally, CheckResult> {
    if modulus_class(a) == ModulusClass::NearUnit {
        Err(t.skip("ill_conditioned"))
    } else {
        Ok(t)
    }
}

macro_rules! prelude {
    ($t:ident, $a:expr) => {
        let $t = match near_unit($t, $a) {
            Ok(t) => t,
            Err(r) => return r,
        };
    };
}

/// `J_n(a)` is the diagonal unitary conjugate of `J_n(|a|)`.
pub fn check_unitary_phase(n: usize, a: Complex64) -> CheckResult {
    let t = Tally::new("unitary_phase", Params::na(n, a), 1e-12);
    guarded(t, |t| {
        let phase = a.arg();
        let d =
            ComplexMatrix::diagonal(&(0..n).map(|k| Complex64::from_polar(1.0, k as f64 * phase)).collect::<Vec<_>>());
        let target = km(n, a);
        let moved = km(n, Complex64::new(a.norm(), 0.0)).conjugate_by(&d);
        t.error("conjugation_error", moved.max_abs_diff(&target) / (1.0 + target.max_abs()), 1e-12);
        Ok(())
    })
}

/// `D^{-1} J_n(1) D = J_n(a)` with `D = diag(a^k)` for `a != 0`.
pub fn check_similarity(n: usize, a: Complex64) -> CheckResult {
    let t = Tally::new("similarity", Params::na(n, a), 1e-10);
    if a.norm() == 0.0 {
        return t.skip("zero_parameter");
    }
    guarded(t, |t| {
        let one = km(n, Complex64::new(1.0, 0.0));
        let d: Vec<Complex64> = (0..n).map(|k| a.powu(k as u32)).collect();
        let moved = ComplexMatrix::from_fn(n, |i, j| one[(i, j)] * d[j] / d[i]);
        let target = km(n, a);
        t.error("similarity_error", moved.max_abs_diff(&target) / (1.0 + target.max_abs()), 1e-10);
        Ok(())
    })
}

/// `h(theta) = h(-theta)`: the range is symmetric about the real axis.
pub fn check_conjugate_symmetry(n: usize, a: Complex64, m: usize) -> CheckResult {
    let t = Tally::new("conjugate_symmetry", Params::na(n, a), 1e-9);
    guarded(t, |t| {
        let j = km(n, a);
        let h = support_grid(&j, m)?;
        let worst = (1..m).map(|k| (h[k] - h[m - k]).abs()).fold(0.0, f64::max);
        t.error("support_asymmetry", worst / (1.0 + j.frobenius_norm()), 1e-9);
        Ok(())
    })
}

/// `J_n(a)^n = 0`, `J_n(a)^{n-1} != 0` and `0` interior to `W(J_n(a))` for `a != 0`.
pub fn check_nilpotent(n: usize, a: Complex64, m: usize) -> CheckResult {
    let t = Tally::new("nilpotent", Params::na(n, a), 1e-12);
    guarded(t, |t| {
        let j = km(n, a);
        let scale = (1.0 + j.max_abs()).powi(n as i32);
        t.error("power_n_max", j.pow(n as u32).max_abs() / scale, 1e-12);
        if n >= 2 && a.norm() > 0.0 {
            let corner = j.pow(n as u32 - 1)[(0, n - 1)];
            let expected = a.powu(n as u32 - 1);
            t.error("power_n_minus_1_corner_error", (corner - expected).norm() / expected.norm(), 1e-12);
            let min_support = support_grid(&j, m)?.into_iter().fold(f64::INFINITY, f64::min);
            t.record("min_support", min_support);
            t.require("origin_interior", min_support > 0.0);
        }
        Ok(())
    })
}

/// `W(J_n(a))` grows with `|a|`: equal for equal moduli, strictly inside for
/// a larger modulus.
pub fn check_monotone_containment(n: usize, a: Complex64, m: usize) -> CheckResult {
    let t = Tally::new("monotone_containment", Params::na(n, a), 1e-9);
    if n < 2 {
        return t.skip("n_below_2");
    }
    guarded(t, |t| {
        let j = km(n, a);
        let bigger = if a.norm() == 0.0 { Complex64::new(0.5, 0.0) } else { a * Complex64::from_polar(1.5, 0.7) };
        let strict = interior_gap(&j, &km(n, bigger), m)?;
        t.record("strict_gap", strict);
        t.require("strictly_inside", strict > 0.0);
        let rotated = a * Complex64::from_polar(1.0, 1.1);
        let gap = interior_gap(&j, &km(n, rotated), m)?;
        let reverse = interior_gap(&km(n, rotated), &j, m)?;
        t.error("equal_modulus_gap", gap.abs().max(reverse.abs()), 1e-9);
        Ok(())
    })
}

/// `((1 - |a|^2)/a) J_n(a) - conj(a) I` lies in `S_n` or `S_n^{-1}` with
/// spectrum `{-conj(a)}`.
pub fn check_class_map(n: usize, a: Complex64) -> CheckResult {
    let t = Tally::new("class_map", Params::na(n, a), 1e-12);
    prelude!(t, a);
    let class = modulus_class(a);
    if matches!(class, ModulusClass::Zero | ModulusClass::Unit) {
        return t.skip("modulus_zero_or_one");
    }
    guarded(t, |t| {
        let mapped = affine_class_map(KmsParams { n, a })?;
        let diag_err = (0..n).map(|i| (mapped[(i, i)] + a.conj()).norm()).fold(0.0, f64::max);
        t.error("spectrum_error", diag_err / (1.0 + a.norm()), 1e-12);
        let member = class_membership(&mapped)?;
        t.record("defect_top_singular_value", member.defect_singular_values[0]);
        t.record("defect_second_singular_value", member.defect_singular_values.get(1).copied().unwrap_or(0.0));
        if class == ModulusClass::Inside {
            t.require("class_s", member.is_class_s(CLASS_TOL));
        } else {
            t.require("class_s_inverse", member.is_class_s_inverse(CLASS_TOL));
        }
        Ok(())
    })
}

/// `W(J_n) = {|z| <= cos(pi/(n+1))}`.
pub fn check_jordan_disc(n: usize, m: usize) -> CheckResult {
    let t = Tally::new("jordan_disc", Params { n: Some(n), ..Params::default() }, 1e-8);
    guarded(t, |t| {
        let j = jordan(n);
        let expected = (PI / (n + 1) as f64).cos();
        t.error("radius_error", (numerical_radius(&j)? - expected).abs(), 1e-8);
        if n >= 2 {
            let disc = disc_check_on(&j, m)?;
            t.require("is_disc", disc.is_disc);
            t.error("disc_radius_error", (disc.radius - expected).abs(), 1e-8);
        }
        Ok(())
    })
}

/// For `n >= 3`, `a != 0`, the top eigenvalue of `Re(e^{-i theta} J_n(a))`
/// is simple except in the segment direction `theta = pi` when `|a| = 1`.
pub fn check_top_multiplicity(n: usize, a: Complex64, m: usize) -> CheckResult {
    let t = Tally::new("top_multiplicity", Params::na(n, a), 1e-9);
    prelude!(t, a);
    if n < 3 {
        return t.skip("n_below_3");
    }
    if a.norm() == 0.0 {
        return t.skip("zero_parameter");
    }
    guarded(t, |t| {
        let j = km(n, a);
        let unit = modulus_class(a) == ModulusClass::Unit;
        let samples = boundary_sample(&j, m)?;
        let multiple = samples.iter().filter(|s| !(unit && (s.theta - PI).abs() < 1e-12) && s.multiplicity > 1).count();
        t.record("multiple_directions", multiple as f64);
        t.require("simple_off_segment", multiple == 0);
        if unit {
            let s = boundary_point(&j, PI)?;
            t.record("segment_multiplicity", s.multiplicity as f64);
            t.require("segment_multiple", s.multiplicity >= 2);
            t.error("segment_abscissa_error", (s.point.re + 0.5).abs(), 1e-9);
        }
        Ok(())
    })
}

/// For `n >= 3`, `∂W(J_n(a))` meets `|z| = w` only at `w`.
pub fn check_circle_touch(n: usize, a: Complex64, m: usize) -> CheckResult {
    let t = Tally::new("circle_touch", Params::na(n, a), 1e-6);
    prelude!(t, a);
    if n < 3 {
        return t.skip("n_below_3");
    }
    if a.norm() == 0.0 {
        return t.skip("zero_parameter");
    }
    guarded(t, |t| {
        let j = km(n, a);
        let w = numerical_radius(&j)?;
        let clusters = circle_touch_points_on(&j, m)?;
        t.record("clusters", clusters.len() as f64);
        t.require("single_cluster", clusters.len() == 1);
        if let Some(c) = clusters.first() {
            t.error("touch_point_error", (c.representative - Complex64::new(w, 0.0)).norm(), 1e-6);
        }
        Ok(())
    })
}

/// A boundary segment exists iff `n >= 3` and `|a| = 1`, on `Re z = -1/2`;
/// the range is a disc iff `n = 2` and `a != 0`, of radius `|a|/2`.
pub fn check_segment_and_disc(n: usize, a: Complex64, m: usize) -> CheckResult {
    let t = Tally::new("segment_and_disc", Params::na(n, a), 1e-7);
    prelude!(t, a);
    guarded(t, |t| {
        let j = km(n, a);
        let seg = detect_segment_on(&j, m)?;
        let disc = disc_check_on(&j, m)?;
        let want_seg = n >= 3 && modulus_class(a) == ModulusClass::Unit;
        let want_disc = n == 2 && a.norm() > 0.0;
        t.record("segment_present", if seg.present { 1.0 } else { 0.0 });
        t.record("disc", if disc.is_disc { 1.0 } else { 0.0 });
        t.require("segment_as_expected", seg.present == want_seg);
        t.require("disc_as_expected", disc.is_disc == want_disc);
        if want_seg && seg.present {
            t.error("abscissa_error", (seg.abscissa + 0.5).abs(), 1e-7);
        }
        if want_disc {
            t.error("radius_error", (disc.radius - a.norm() / 2.0).abs(), 1e-7);
        }
        Ok(())
    })
}

/// `p_{J_4(a)}(1, y, 0) = r^4 (1 + y^2)(1 - 4 r^2 + y^2) / 16` with `r = |a|`.
pub fn check_quartic_constant_term(n: usize, a: Complex64) -> CheckResult {
    let t = Tally::new("quartic_constant_term", Params::na(n, a), 1e-7);
    if n != 4 {
        return t.skip("n_not_4");
    }
    guarded(t, |t| {
        let p = kipp_coeffs(&km(4, a))?;
        let r2 = a.norm_sqr();
        let s = r2 * r2 / 16.0;
        let expected = [s * (1.0 - 4.0 * r2), 0.0, s * (2.0 - 4.0 * r2), 0.0, s];
        let worst = (0..=4).map(|k| (p.coeff(4 - k, k) - expected[k]).abs()).fold(0.0, f64::max);
        t.error("coefficient_error", worst, 1e-7);
        Ok(())
    })
}

/// `p_{J_n(a)}(1, i, z) = det(J_n(a) + z I) = z^n`.
pub fn check_kipp_pure_power(n: usize, a: Complex64) -> CheckResult {
    let t = Tally::new("kipp_pure_power", Params::na(n, a), 1e-8);
    guarded(t, |t| {
        let p = kipp_coeffs(&km(n, a))?;
        let r = p.restrict(Complex64::new(1.0, 0.0), Complex64::i());
        let worst = r[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
        t.record("max_coefficient", p.max_abs_coeff());
        t.error("mixed_coefficient_relative", worst / p.max_abs_coeff(), 1e-8);
        Ok(())
    })
}

/// `det(2 Re J_n(a) + I) = (1 - |a|^2)^{n-1}`, and `-1/2` is an eigenvalue
/// of `Re J_n(a)` iff `|a| = 1`.
pub fn check_det_identity(n: usize, a: Complex64) -> CheckResult {
    let t = Tally::new("det_identity", Params::na(n, a), 1e-8);
    prelude!(t, a);
    guarded(t, |t| {
        let re = real_part(&km(n, a));
        let shifted = &re.scale(Complex64::new(2.0, 0.0)) + &ComplexMatrix::identity(n);
        let d = det(&shifted);
        let expected = (1.0 - a.norm_sqr()).powi(n as i32 - 1);
        t.record("det", d.re);
        t.error("det_relative_error", (d - Complex64::new(expected, 0.0)).norm() / expected.abs().max(1.0), 1e-8);
        if n >= 2 {
            let eig = hermitian_eigs(&re)?;
            let dist = eig.values.iter().map(|l| (l + 0.5).abs()).fold(f64::INFINITY, f64::min);
            t.record("distance_to_minus_half", dist);
            let unit = modulus_class(a) == ModulusClass::Unit;
            t.require("minus_half_iff_unit", (dist <= 1e-9) == unit);
        }
        Ok(())
    })
}

/// Top eigenvectors over all directions span `C^n`.
pub fn check_span_rank(n: usize, a: Complex64, m: usize) -> CheckResult {
    let t = Tally::new("span_rank", Params::na(n, a), 1e-8);
    prelude!(t, a);
    if a.norm() == 0.0 {
        return t.skip("zero_parameter");
    }
    guarded(t, |t| {
        let rank = boundary_span_rank(&km(n, a), m)?;
        t.record("rank", rank as f64);
        t.require("full_rank", rank == n);
        Ok(())
    })
}

/// Directions probed for cyclic boundary vectors; none is the segment
/// direction `pi`.
fn cyclic_directions() -> impl Iterator<Item = f64> {
    (0..8).map(|k| TAU * k as f64 / 8.0 + 0.3)
}

/// Boundary vectors off the segment are cyclic for `J_n(a)`.
pub fn check_cyclic_boundary_vectors(n: usize, a: Complex64) -> CheckResult {
    let t = Tally::new("cyclic_boundary_vectors", Params::na(n, a), 1e-8);
    prelude!(t, a);
    if a.norm() == 0.0 {
        return t.skip("zero_parameter");
    }
    guarded(t, |t| {
        let j = km(n, a);
        let mut min_rank = n;
        for theta in cyclic_directions() {
            min_rank = min_rank.min(krylov_rank(&j, &boundary_vector(&j, theta)?)?);
        }
        t.record("min_krylov_rank", min_rank as f64);
        t.require("cyclic", min_rank == n);
        Ok(())
    })
}

/// Leading blocks `J_k(a)`, `k < n`, lie in the interior of `W(J_n(a))`
/// when `|a| != 0, 1`.
pub fn check_invariant_block_interior(n: usize, a: Complex64, m: usize) -> CheckResult {
    let t = Tally::new("invariant_block_interior", Params::na(n, a), 1e-9);
    prelude!(t, a);
    if n < 2 {
        return t.skip("n_below_2");
    }
    if matches!(modulus_class(a), ModulusClass::Zero | ModulusClass::Unit) {
        return t.skip("modulus_zero_or_one");
    }
    guarded(t, |t| {
        let outer = km(n, a);
        let mut worst = f64::INFINITY;
        for k in 1..n {
            worst = worst.min(interior_gap(&km(k, a), &outer, m)?);
        }
        t.record("min_gap", worst);
        t.require("interior", worst > 0.0);
        Ok(())
    })
}

/// Roots of the sine equation give `sigma(Re J_n(a))` through the Poisson
/// kernel, with `t_2 > pi/(n+1)`.
pub fn check_poisson_spectrum(n: usize, a: Complex64) -> CheckResult {
    let t = Tally::new("poisson_spectrum", Params::na(n, a), 1e-9);
    if a.im != 0.0 || !(a.re > 0.0 && a.re < 1.0) {
        return t.skip("parameter_outside_unit_interval");
    }
    guarded(t, |t| {
        let roots = sine_roots(n, a.re)?;
        let from_roots = roots.kms_real_part_spectrum();
        let eig = hermitian_eigs(&real_part(&km(n, a)))?;
        let worst = from_roots.iter().zip(&eig.values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        t.error("spectrum_error", worst, 1e-9);
        if n >= 2 {
            t.record("t2", roots.roots[1]);
            t.require("t2_bound", roots.roots[1] > PI / (n + 1) as f64);
        }
        Ok(())
    })
}

/// For `n = 2m - 1` and `|a| > 1`, deleting the middle row and column keeps
/// `min sigma(Re .)`, while deleting the last one raises it.
pub fn check_middle_deletion_minimum(n: usize, a: Complex64) -> CheckResult {
    let half = n.div_ceil(2);
    let params = Params { n: Some(n), a: Some(a), m: Some(half), j: None };
    let t = Tally::new("middle_deletion_minimum", params, 1e-9);
    prelude!(t, a);
    if n.is_multiple_of(2) || n < 3 {
        return t.skip("n_not_odd_at_least_3");
    }
    if modulus_class(a) != ModulusClass::Outside {
        return t.skip("modulus_not_above_1");
    }
    guarded(t, |t| {
        let j = km(n, a);
        let min_re = |x: &ComplexMatrix| hermitian_eigs(&real_part(x)).map(|e| e.min_value());
        let full = min_re(&j)?;
        let middle = min_re(&principal_submatrix(&j, half)?)?;
        let last = min_re(&principal_submatrix(&j, n)?)?;
        t.error("middle_minimum_error", (middle - full).abs(), 1e-9);
        t.record("last_margin", last - middle);
        t.require("last_strictly_larger", middle < last - 1e-12);
        Ok(())
    })
}

/// Applies the boundary-intersection law for `J_n(a)` and `J_n(a)[j]`:
/// the single point `b = min sigma(Re J_n(a))` when `n` is odd,
/// `j = (n+1)/2` and `|a| > 1`, nothing otherwise. Returns `b` when the
/// singleton case applies.
fn middle_singleton(n: usize, a: Complex64, j: usize) -> bool {
    n % 2 == 1 && j == n.div_ceil(2) && modulus_class(a) == ModulusClass::Outside
}

pub fn check_middle_deletion_touch(n: usize, a: Complex64, j: usize, m: usize) -> CheckResult {
    let params = Params { n: Some(n), a: Some(a), j: Some(j), m: None };
    let t = Tally::new("middle_deletion_touch", params, 1e-6);
    prelude!(t, a);
    if n < 2 {
        return t.skip("n_below_2");
    }
    if a.norm() == 0.0 {
        return t.skip("zero_parameter");
    }
    guarded(t, |t| {
        let full = km(n, a);
        let touch = boundary_touch(&full, &principal_submatrix(&full, j)?, m)?;
        t.record("touch_count", touch.len() as f64);
        if modulus_class(a) == ModulusClass::Unit {
            if n == 2 {
                t.require("empty", touch.is_empty());
            } else {
                t.require("nonempty", !touch.is_empty());
                let off = touch.iter().map(|z| (z.re + 0.5).abs()).fold(0.0, f64::max);
                t.error("off_minus_half_line", off, 1e-6);
            }
            return Ok(());
        }
        if !middle_singleton(n, a, j) {
            t.require("empty", touch.is_empty());
            return Ok(());
        }
        let eig = hermitian_eigs(&real_part(&full))?;
        let b = eig.min_value();
        t.record("b", b);
        t.require("singleton", touch.len() == 1);
        if let Some(p) = touch.first() {
            t.error("touch_point_error", (p - Complex64::new(b, 0.0)).norm(), 1e-6);
        }
        let x = eig.vector(0);
        t.error("rayleigh_error", (full.quadratic_form(&x) - Complex64::new(b, 0.0)).norm(), 1e-8);
        // undo the diagonal phase relating J_n(a) to J_n(|a|); the mirror
        // structure is stated for the latter
        let phase = a.arg();
        let y: Vec<Complex64> =
            x.iter().enumerate().map(|(k, z)| z * Complex64::from_polar(1.0, k as f64 * phase)).collect();
        let x = phase_normalized(&y);
        let centre = j - 1;
        t.error("middle_entry", x[centre].norm(), 1e-8);
        let anti = (1..=centre).map(|k| (x[centre - k] + x[centre + k]).norm()).fold(0.0, f64::max);
        t.error("antisymmetry_residual", anti, 1e-8);
        Ok(())
    })
}

fn phase_normalized(x: &[Complex64]) -> Vec<Complex64> {
    let big = x.iter().copied().max_by(|p, q| p.norm().total_cmp(&q.norm())).unwrap_or_default();
    if big.norm() == 0.0 {
        return x.to_vec();
    }
    let rot = big.conj() / big.norm();
    x.iter().map(|z| z * rot).collect()
}

/// The same intersection law for the standard upper-triangular
/// `S_n^{-1}`-matrix with eigenvalue `lambda = conj(a)`, mapped back to
/// `J_n(a)` by `(conj(lambda)/(|lambda|^2 - 1)) (A - lambda I)`.
pub fn check_standard_inverse_touch(n: usize, a: Complex64, j: usize, m: usize) -> CheckResult {
    let params = Params { n: Some(n), a: Some(a), j: Some(j), m: None };
    let t = Tally::new("standard_inverse_touch", params, 1e-6);
    prelude!(t, a);
    if n < 2 {
        return t.skip("n_below_2");
    }
    if modulus_class(a) != ModulusClass::Outside {
        return t.skip("modulus_not_above_1");
    }
    guarded(t, |t| {
        let lambda = a.conj();
        let s = snm1_standard(n, lambda)?;
        t.require("class_s_inverse", class_membership(&s)?.is_class_s_inverse(CLASS_TOL));
        let c = a / (a.norm_sqr() - 1.0);
        let back = (&s - &ComplexMatrix::identity(n).scale(lambda)).scale(c);
        let target = km(n, a);
        t.error("correspondence_error", back.max_abs_diff(&target) / (1.0 + target.max_abs()), 1e-10);
        let touch = boundary_touch(&s, &principal_submatrix(&s, j)?, m)?;
        t.record("touch_count", touch.len() as f64);
        if middle_singleton(n, a, j) {
            let b = hermitian_eigs(&real_part(&target))?.min_value();
            let expected = lambda + Complex64::new(b, 0.0) / c;
            t.require("singleton", touch.len() == 1);
            if let Some(p) = touch.first() {
                t.error("touch_point_error", (p - expected).norm(), 1e-6);
            }
        } else {
            t.require("empty", touch.is_empty());
        }
        Ok(())
    })
}

/// Random `n`-by-`k` isometry from orthonormalised Gaussian columns.
pub fn random_isometry(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Complex64>> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    while cols.len() < k {
        let mut v: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))).collect();
        for _ in 0..2 {
            for c in &cols {
                let dot: Complex64 = c.iter().zip(&v).map(|(p, q)| p.conj() * q).sum();
                v.iter_mut().zip(c).for_each(|(x, y)| *x -= dot * y);
            }
        }
        let len = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if len > 1e-8 {
            cols.push(v.into_iter().map(|z| z / len).collect());
        }
    }
    cols
}

/// `V^* A V` for an isometry given by its columns.
pub fn compress(a: &ComplexMatrix, v: &[Vec<Complex64>]) -> ComplexMatrix {
    let av: Vec<Vec<Complex64>> = v.iter().map(|c| a.mul_vec(c)).collect();
    ComplexMatrix::from_fn(v.len(), |p, q| v[p].iter().zip(&av[q]).map(|(x, y)| x.conj() * y).sum())
}

/// A random `k`-by-`k` compression of `J_n(a)`, `a != 0`, has a strictly
/// smaller numerical range.
pub fn check_compression_strict(n: usize, a: Complex64, k: usize, seed: u64, m: usize) -> CheckResult {
    let params = Params { n: Some(n), a: Some(a), m: Some(k), j: None };
    let t = Tally::new("compression_strict", params, 1e-9);
    if n < 2 || k >= n {
        return t.skip("n_below_2");
    }
    if a.norm() == 0.0 {
        return t.skip("zero_parameter");
    }
    guarded(t, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32 | k as u64));
        let j = km(n, a);
        let b = compress(&j, &random_isometry(n, k, &mut rng));
        let outer = support_grid(&j, m)?;
        let inner = support_grid(&b, m)?;
        let gaps: Vec<f64> = outer.iter().zip(&inner).map(|(o, i)| o - i).collect();
        let min = gaps.iter().copied().fold(f64::INFINITY, f64::min);
        let max = gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        t.error("containment_violation", (-min).max(0.0), 1e-9);
        t.record("max_gap", max);
        t.require("proper", max > 1e-9);
        Ok(())
    })
}

/// The explicit `S_3^{-1}` matrix whose boundary misses the boundaries of
/// all three principal submatrices.
pub fn disjoint_boundaries_matrix() -> ComplexMatrix {
    let s3 = 3f64.sqrt();
    let c = Complex64::new;
    ComplexMatrix::from_rows(&[
        vec![c(2.0, 0.0), c(2.0 * s3, 0.0), c(6.0, -12.0)],
        vec![c(0.0, 0.0), c(1.0, 2.0), c(4.0 * s3, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(2.0, -3.0)],
    ])
    .expect("fixed 3x3 matrix")
}

pub fn check_disjoint_submatrix_boundaries(m: usize) -> CheckResult {
    let t = Tally::new("disjoint_submatrix_boundaries", Params::default(), 1e-8);
    guarded(t, |t| {
        let a = disjoint_boundaries_matrix();
        for j in 1..=3 {
            let touch = boundary_touch(&a, &principal_submatrix(&a, j)?, m)?;
            t.require(&format!("empty_j{j}"), touch.is_empty());
        }
        let defect = &ComplexMatrix::identity(3) - &(&a.adjoint() * &a);
        let sv = matrix_singular_values(&defect);
        t.record("defect_top_singular_value", sv[0]);
        t.require("defect_nonzero", sv[0] > 1e-6);
        t.error("defect_second_relative", sv[1] / sv[0], 1e-8);
        let moduli: Vec<f64> = (0..3).map(|i| a[(i, i)].norm()).collect();
        t.require("eigenvalues_outside_unit_disc", moduli.iter().all(|&r| r > 1.0));
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Status;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn middle_deletion_examples() {
        let res = check_middle_deletion_touch(3, r(2.0), 2, 360);
        assert_eq!(res.status, Status::Pass, "{res:?}");
        assert!((res.measured["b"] + 2.0).abs() < 1e-12);
        assert_eq!(check_middle_deletion_touch(3, r(2.0), 1, 360).status, Status::Pass);
        assert_eq!(check_middle_deletion_touch(5, r(0.5), 3, 360).status, Status::Pass);
        assert_eq!(check_middle_deletion_touch(5, r(1.0 + 1e-9), 3, 360).status, Status::Skip);
    }

    #[test]
    fn middle_minimum_examples() {
        assert_eq!(check_middle_deletion_minimum(3, r(2.0)).status, Status::Pass);
        assert_eq!(check_middle_deletion_minimum(5, r(1.5)).status, Status::Pass);
        assert_eq!(check_middle_deletion_minimum(3, r(0.5)).status, Status::Skip);
    }

    #[test]
    fn segment_and_disc_examples() {
        let res = check_segment_and_disc(5, Complex64::from_polar(1.0, PI / 3.0), 360);
        assert_eq!(res.status, Status::Pass, "{res:?}");
        let res = check_segment_and_disc(2, r(0.7), 360);
        assert_eq!(res.status, Status::Pass, "{res:?}");
        assert_eq!(check_segment_and_disc(6, r(1.2), 360).status, Status::Pass);
    }

    #[test]
    fn disjoint_submatrix_boundaries_passes() {
        let res = check_disjoint_submatrix_boundaries(360);
        assert_eq!(res.status, Status::Pass, "{res:?}");
    }

    #[test]
    fn isometry_is_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let v = random_isometry(5, 3, &mut rng);
        for p in 0..3 {
            for q in 0..3 {
                let dot: Complex64 = v[p].iter().zip(&v[q]).map(|(x, y)| x.conj() * y).sum();
                let want = if p == q { 1.0 } else { 0.0 };
                assert!((dot - r(want)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn failing_condition_is_reported() {
        let mut t = Tally::new("x", Params::default(), 1e-8);
        t.require("never", false);
        let res = t.finish();
        assert_eq!(res.status, Status::Fail);
        assert_eq!(res.discrepancy, 1.0);
    }
}
