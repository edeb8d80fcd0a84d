use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use kmsrange_ffi::*;

fn new_kms(n: usize, re: f64, im: f64) -> *mut KmsMatrix {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { kms_matrix_new_kms(n, re, im, &mut m) }, KmsStatus::Ok);
    assert!(!m.is_null());
    m
}

fn last_error() -> String {
    let p = kms_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn handles_report_dimension_and_free_cleanly() {
    let m = new_kms(5, 0.5, 0.0);
    unsafe {
        assert_eq!(kms_matrix_dim(m), 5);
        let mut sub = ptr::null_mut();
        assert_eq!(kms_matrix_principal_submatrix(m, 3, &mut sub), KmsStatus::Ok);
        assert_eq!(kms_matrix_dim(sub), 4);
        kms_matrix_free(sub);
        kms_matrix_free(m);
        kms_matrix_free(ptr::null_mut());
        assert_eq!(kms_matrix_dim(ptr::null()), 0);
    }
}

#[test]
fn invalid_input_sets_status_and_message() {
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(kms_matrix_new_kms(0, 1.0, 0.0, &mut m), KmsStatus::InvalidArgument);
        assert!(m.is_null());
        assert!(last_error().contains("size"));
        assert_eq!(kms_matrix_new_kms(3, f64::NAN, 0.0, &mut m), KmsStatus::InvalidArgument);
        assert_eq!(kms_matrix_new_kms(3, 1.0, 0.0, ptr::null_mut()), KmsStatus::NullPointer);
        let mut h = 0.0;
        assert_eq!(kms_support(ptr::null(), 0.0, &mut h), KmsStatus::NullPointer);
        assert!(last_error().contains("null"));
        let a = new_kms(3, 1.0, 0.0);
        let mut sub = ptr::null_mut();
        assert_eq!(kms_matrix_principal_submatrix(a, 4, &mut sub), KmsStatus::InvalidArgument);
        kms_matrix_free(a);
    }
}

#[test]
fn entries_constructor_reads_row_major_parts() {
    let re = [0.0, 2.0, 0.0, 0.0];
    let im = [0.0, 0.0, 0.0, 0.0];
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(kms_matrix_from_entries(2, re.as_ptr(), im.as_ptr(), &mut m), KmsStatus::Ok);
        let mut w = 0.0;
        assert_eq!(kms_numerical_radius(m, &mut w, ptr::null_mut()), KmsStatus::Ok);
        assert!((w - 1.0).abs() < 1e-10);
        let mut d = KmsDisc::default();
        assert_eq!(kms_disc_check(m, &mut d), KmsStatus::Ok);
        assert_eq!(d.is_disc, 1);
        assert!((d.radius - 1.0).abs() < 1e-7);
        kms_matrix_free(m);
    }
}

#[test]
fn support_and_boundary_agree() {
    let m = new_kms(4, 1.0, 0.0);
    let count = 64;
    let (mut th, mut h, mut re, mut im) = (vec![0.0; count], vec![0.0; count], vec![0.0; count], vec![0.0; count]);
    unsafe {
        assert_eq!(
            kms_boundary_sample(m, count, th.as_mut_ptr(), h.as_mut_ptr(), re.as_mut_ptr(), im.as_mut_ptr()),
            KmsStatus::Ok
        );
        for k in 0..count {
            let mut s = 0.0;
            assert_eq!(kms_support(m, th[k], &mut s), KmsStatus::Ok);
            assert!((s - h[k]).abs() < 1e-12);
            assert!((re[k] * th[k].cos() + im[k] * th[k].sin() - s).abs() < 1e-10);
        }
        let mut seg = KmsSegment::default();
        assert_eq!(kms_detect_segment(m, &mut seg), KmsStatus::Ok);
        assert_eq!(seg.present, 1);
        assert!((seg.abscissa + 0.5).abs() < 1e-7);
        kms_matrix_free(m);
    }
}

#[test]
fn touch_points_respect_capacity() {
    let a = new_kms(3, 2.0, 0.0);
    let mut sub = ptr::null_mut();
    let (mut re, mut im) = ([0.0; 4], [0.0; 4]);
    let mut count = usize::MAX;
    unsafe {
        assert_eq!(kms_matrix_principal_submatrix(a, 2, &mut sub), KmsStatus::Ok);
        assert_eq!(
            kms_boundary_touch(a, sub, 720, ptr::null_mut(), ptr::null_mut(), 0, &mut count),
            KmsStatus::BufferTooSmall
        );
        assert_eq!(count, 1);
        assert_eq!(kms_boundary_touch(a, sub, 720, re.as_mut_ptr(), im.as_mut_ptr(), 4, &mut count), KmsStatus::Ok);
        assert_eq!(count, 1);
        assert!((re[0] + 2.0).abs() < 1e-8 && im[0].abs() < 1e-8);

        let mut gap = 0.0;
        assert_eq!(kms_interior_gap(sub, a, 360, &mut gap), KmsStatus::Ok);
        assert!(gap.abs() < 1e-9);
        // reversed roles: the larger range is not inside the smaller one
        assert_eq!(
            kms_boundary_touch(sub, a, 360, re.as_mut_ptr(), im.as_mut_ptr(), 4, &mut count),
            KmsStatus::NotContained
        );
        kms_matrix_free(sub);
        kms_matrix_free(a);
    }
}

#[test]
fn kippenhahn_coefficients_in_slot_order() {
    let m = new_kms(4, 1.0, 0.0);
    let len = kms_kipp_coeff_count(4);
    assert_eq!(len, 15);
    let mut c = vec![0.0; len];
    unsafe {
        assert_eq!(kms_kipp_coeffs(m, c.as_mut_ptr(), len - 1), KmsStatus::BufferTooSmall);
        assert_eq!(kms_kipp_coeffs(m, c.as_mut_ptr(), len), KmsStatus::Ok);
        kms_matrix_free(m);
    }
    assert!((c[0] - 1.0).abs() < 1e-12);
    // x^4 sits in the first slot of the degree-4 block
    assert!((c[10] + 3.0 / 16.0).abs() < 1e-9);
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().expect("test binary path");
    exe.parent().and_then(|p| p.parent()).expect("target/<profile>").to_path_buf()
}

#[test]
fn c_program_links_against_the_generated_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("kmsrange.h").exists(), "header not generated");
    let lib = target_dir().join("libkmsrange_ffi.a");
    let compiler = Command::new("cc").arg("--version").output();
    if compiler.is_err() || !lib.exists() {
        eprintln!("skipping C link check: cc or {} unavailable", lib.display());
        return;
    }
    let work = tempfile::tempdir().unwrap();
    let exe = work.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
