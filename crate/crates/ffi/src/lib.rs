//! C ABI over `kmsrange`.
//!
//! Matrices are opaque `KmsMatrix` handles created by the `kms_matrix_*`
//! constructors and released with [`kms_matrix_free`]. Every fallible call
//! returns a [`KmsStatus`]; on failure a message is available from
//! [`kms_last_error_message`] until the next failing call on the same thread.
//! Output arrays are caller-allocated.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kmsrange::kippenhahn::kipp_coeffs;
use kmsrange::linalg::ComplexMatrix;
use kmsrange::models::{jordan, kms, principal_submatrix, KmsParams};
use kmsrange::numrange::{
    boundary_sample, boundary_touch, detect_segment, disc_check, interior_gap, numerical_radius_with_direction, support,
};
use kmsrange::{Complex64, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KmsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    NotContained = 4,
    NumericalFailure = 5,
    Panic = 6,
}

/// Opaque square complex matrix.
pub struct KmsMatrix {
    inner: ComplexMatrix,
}

/// Flat boundary piece reported by [`kms_detect_segment`].
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct KmsSegment {
    /// Non-zero when a segment was found; the other fields are meaningful only then.
    pub present: i32,
    pub abscissa: f64,
    pub start_re: f64,
    pub start_im: f64,
    pub end_re: f64,
    pub end_im: f64,
    pub direction_theta: f64,
    pub length: f64,
}

/// Outcome of [`kms_disc_check`].
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct KmsDisc {
    pub is_disc: i32,
    pub center_re: f64,
    pub center_im: f64,
    pub radius: f64,
    pub support_deviation: f64,
    pub radial_deviation: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(err: &Error) -> KmsStatus {
    match err {
        Error::NotContained { .. } => KmsStatus::NotContained,
        Error::NoConvergence { .. } | Error::IllConditioned { .. } | Error::RootCountMismatch { .. } => {
            KmsStatus::NumericalFailure
        }
        _ => KmsStatus::InvalidArgument,
    }
}

fn fail(status: KmsStatus, msg: impl Into<String>) -> KmsStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> Result<(), KmsStatus>) -> KmsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KmsStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(KmsStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: kmsrange::Result<T>) -> Result<T, KmsStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), KmsStatus> {
    if p.is_null() {
        Err(fail(KmsStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

unsafe fn matrix<'a>(m: *const KmsMatrix, name: &str) -> Result<&'a ComplexMatrix, KmsStatus> {
    non_null(m, name)?;
    Ok(&(*m).inner)
}

unsafe fn emit(out: *mut *mut KmsMatrix, inner: ComplexMatrix) {
    *out = Box::into_raw(Box::new(KmsMatrix { inner }));
}

fn capacity(needed: usize, given: usize) -> Result<(), KmsStatus> {
    if given < needed {
        Err(fail(KmsStatus::BufferTooSmall, format!("buffer holds {given} values, {needed} required")))
    } else {
        Ok(())
    }
}

/// Message of the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn kms_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds the KMS matrix `J_n(a)` with `a = a_re + i a_im`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn kms_matrix_new_kms(n: usize, a_re: f64, a_im: f64, out: *mut *mut KmsMatrix) -> KmsStatus {
    guard(|| {
        non_null(out, "out")?;
        let params = lib(KmsParams::new(n, Complex64::new(a_re, a_im)))?;
        emit(out, kms(params));
        Ok(())
    })
}

/// Builds the `n x n` nilpotent Jordan block.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn kms_matrix_new_jordan(n: usize, out: *mut *mut KmsMatrix) -> KmsStatus {
    guard(|| {
        non_null(out, "out")?;
        if n == 0 {
            return Err(fail(KmsStatus::InvalidArgument, "size must be at least 1"));
        }
        emit(out, jordan(n));
        Ok(())
    })
}

/// Builds a matrix from row-major real and imaginary parts of length `n * n`.
///
/// # Safety
/// `re` and `im` must each point to `n * n` readable doubles and `out` to
/// writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn kms_matrix_from_entries(
    n: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut KmsMatrix,
) -> KmsStatus {
    guard(|| {
        non_null(re, "re")?;
        non_null(im, "im")?;
        non_null(out, "out")?;
        let len = n.checked_mul(n).ok_or_else(|| fail(KmsStatus::InvalidArgument, "size overflows"))?;
        let re = std::slice::from_raw_parts(re, len);
        let im = std::slice::from_raw_parts(im, len);
        let data = re.iter().zip(im).map(|(&x, &y)| Complex64::new(x, y)).collect();
        emit(out, lib(ComplexMatrix::new(n, data))?);
        Ok(())
    })
}

/// `A[j]`: the matrix with row and column `j` (1-based) removed.
///
/// # Safety
/// `m` must be a live handle and `out` writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn kms_matrix_principal_submatrix(
    m: *const KmsMatrix,
    j: usize,
    out: *mut *mut KmsMatrix,
) -> KmsStatus {
    guard(|| {
        let a = matrix(m, "m")?;
        non_null(out, "out")?;
        emit(out, lib(principal_submatrix(a, j))?);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kms_matrix_free(m: *mut KmsMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of the matrix, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kms_matrix_dim(m: *const KmsMatrix) -> usize {
    if m.is_null() {
        0
    } else {
        (*m).inner.dim()
    }
}

/// Support function `h(theta) = lambda_max(Re(e^{-i theta} A))`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kms_support(m: *const KmsMatrix, theta: f64, out: *mut f64) -> KmsStatus {
    guard(|| {
        let a = matrix(m, "m")?;
        non_null(out, "out")?;
        *out = lib(support(a, theta))?;
        Ok(())
    })
}

/// Numerical radius; `theta_out` may be null.
///
/// # Safety
/// `m` must be a live handle, `w_out` writable, `theta_out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn kms_numerical_radius(m: *const KmsMatrix, w_out: *mut f64, theta_out: *mut f64) -> KmsStatus {
    guard(|| {
        let a = matrix(m, "m")?;
        non_null(w_out, "w_out")?;
        let (w, theta) = lib(numerical_radius_with_direction(a))?;
        *w_out = w;
        if !theta_out.is_null() {
            *theta_out = theta;
        }
        Ok(())
    })
}

/// Samples `samples` boundary points on a uniform direction grid. Each of
/// the four arrays must hold `samples` doubles; `theta` and `support` may be null.
///
/// # Safety
/// `m` must be a live handle; non-null arrays must be writable for `samples` doubles.
#[no_mangle]
pub unsafe extern "C" fn kms_boundary_sample(
    m: *const KmsMatrix,
    samples: usize,
    theta: *mut f64,
    support_values: *mut f64,
    re: *mut f64,
    im: *mut f64,
) -> KmsStatus {
    guard(|| {
        let a = matrix(m, "m")?;
        non_null(re, "re")?;
        non_null(im, "im")?;
        if samples == 0 {
            return Err(fail(KmsStatus::InvalidArgument, "samples must be positive"));
        }
        for (k, s) in lib(boundary_sample(a, samples))?.iter().enumerate() {
            *re.add(k) = s.point.re;
            *im.add(k) = s.point.im;
            if !theta.is_null() {
                *theta.add(k) = s.theta;
            }
            if !support_values.is_null() {
                *support_values.add(k) = s.support;
            }
        }
        Ok(())
    })
}

/// Looks for a flat piece of the boundary.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kms_detect_segment(m: *const KmsMatrix, out: *mut KmsSegment) -> KmsStatus {
    guard(|| {
        let a = matrix(m, "m")?;
        non_null(out, "out")?;
        let s = lib(detect_segment(a))?;
        *out = KmsSegment {
            present: s.present as i32,
            abscissa: s.abscissa,
            start_re: s.endpoints.0.re,
            start_im: s.endpoints.0.im,
            end_re: s.endpoints.1.re,
            end_im: s.endpoints.1.im,
            direction_theta: s.direction_theta,
            length: s.length,
        };
        Ok(())
    })
}

/// Tests whether the numerical range is a disc.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kms_disc_check(m: *const KmsMatrix, out: *mut KmsDisc) -> KmsStatus {
    guard(|| {
        let a = matrix(m, "m")?;
        non_null(out, "out")?;
        let d = lib(disc_check(a))?;
        *out = KmsDisc {
            is_disc: d.is_disc as i32,
            center_re: d.center.re,
            center_im: d.center.im,
            radius: d.radius,
            support_deviation: d.support_deviation,
            radial_deviation: d.radial_deviation,
        };
        Ok(())
    })
}

/// `min_theta (h_outer - h_inner)` over `samples` directions.
///
/// # Safety
/// `inner` and `outer` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kms_interior_gap(
    inner: *const KmsMatrix,
    outer: *const KmsMatrix,
    samples: usize,
    out: *mut f64,
) -> KmsStatus {
    guard(|| {
        let b = matrix(inner, "inner")?;
        let a = matrix(outer, "outer")?;
        non_null(out, "out")?;
        if samples == 0 {
            return Err(fail(KmsStatus::InvalidArgument, "samples must be positive"));
        }
        *out = lib(interior_gap(b, a, samples))?;
        Ok(())
    })
}

/// Common boundary points of `W(outer)` and `W(inner)`. The count is always
/// written to `count`; points are written when `capacity` suffices.
///
/// # Safety
/// `outer` and `inner` must be live handles, `count` writable, and `re`,
/// `im` writable for `capacity` doubles (they may be null when `capacity` is 0).
#[no_mangle]
pub unsafe extern "C" fn kms_boundary_touch(
    outer: *const KmsMatrix,
    inner: *const KmsMatrix,
    samples: usize,
    re: *mut f64,
    im: *mut f64,
    capacity_points: usize,
    count: *mut usize,
) -> KmsStatus {
    guard(|| {
        let a = matrix(outer, "outer")?;
        let b = matrix(inner, "inner")?;
        non_null(count, "count")?;
        if samples < 3 {
            return Err(fail(KmsStatus::InvalidArgument, "samples must be at least 3"));
        }
        let points = lib(boundary_touch(a, b, samples))?;
        *count = points.len();
        capacity(points.len(), capacity_points)?;
        if !points.is_empty() {
            non_null(re, "re")?;
            non_null(im, "im")?;
        }
        for (k, z) in points.iter().enumerate() {
            *re.add(k) = z.re;
            *im.add(k) = z.im;
        }
        Ok(())
    })
}

/// Number of coefficients of a degree-`n` Kippenhahn polynomial.
#[no_mangle]
pub extern "C" fn kms_kipp_coeff_count(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Coefficients `c_{jk}` of `det(x Re A + y Im A + z I)`, stored at index
/// `d (d + 1) / 2 + k` with `d = j + k`.
///
/// # Safety
/// `m` must be a live handle and `coeffs` writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn kms_kipp_coeffs(m: *const KmsMatrix, coeffs: *mut f64, len: usize) -> KmsStatus {
    guard(|| {
        let a = matrix(m, "m")?;
        non_null(coeffs, "coeffs")?;
        let n = a.dim();
        capacity(kms_kipp_coeff_count(n), len)?;
        let p = lib(kipp_coeffs(a))?;
        for d in 0..=n {
            for k in 0..=d {
                *coeffs.add(d * (d + 1) / 2 + k) = p.coeff(d - k, k);
            }
        }
        Ok(())
    })
}
