use std::ffi::{c_char, CStr};
use std::path::Path;
use std::process::Command;
use std::ptr;

use cpplab_ffi::*;

unsafe fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    cpplab_string_free(s);
    out
}

unsafe fn last_error() -> String {
    take_string(cpplab_last_error_message())
}

#[test]
fn field_arithmetic_by_index() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(cpplab_field_new(3, 1, CpplabModulus::X2Plus1, 0, &mut f), CpplabStatus::Ok);
        assert_eq!(cpplab_field_order(f), 9);
        let mut r = 0;
        // index 3 is alpha; alpha^2 = -1 = 2
        assert_eq!(cpplab_field_mul(f, 3, 3, &mut r), CpplabStatus::Ok);
        assert_eq!(r, 2);
        assert_eq!(cpplab_field_add(f, 1, 2, &mut r), CpplabStatus::Ok);
        assert_eq!(r, 0);
        assert_eq!(cpplab_field_sub(f, 0, 1, &mut r), CpplabStatus::Ok);
        assert_eq!(r, 2);
        for a in 1..9 {
            let mut inv = 0;
            assert_eq!(cpplab_field_inv(f, a, &mut inv), CpplabStatus::Ok);
            assert_eq!(cpplab_field_mul(f, a, inv, &mut r), CpplabStatus::Ok);
            assert_eq!(r, 1);
            assert_eq!(cpplab_field_pow(f, a, 8, &mut r), CpplabStatus::Ok);
            assert_eq!(r, 1);
        }
        assert_eq!(cpplab_field_inv(f, 0, &mut r), CpplabStatus::DivisionByZero);
        assert_eq!(cpplab_field_mul(f, 9, 1, &mut r), CpplabStatus::InvalidArgument);
        assert!(last_error().contains("out of range"));
        assert_eq!(cpplab_field_mul(f, 1, 1, ptr::null_mut()), CpplabStatus::NullPointer);
        cpplab_field_free(f);
    }
}

#[test]
fn construction_errors() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(cpplab_field_new(9, 1, CpplabModulus::Auto, 0, &mut f), CpplabStatus::NotPrime);
        assert!(f.is_null());
        assert_eq!(cpplab_field_new(3, 5, CpplabModulus::X2Plus1, 1000, &mut f), CpplabStatus::UnsupportedSize);
        let mut fam = ptr::null_mut();
        assert_eq!(
            cpplab_family_new(CpplabClass::C1, 3, 2, 0, CpplabModulus::X2Plus1, &mut fam),
            CpplabStatus::HypothesisViolated
        );
        assert!(!last_error().is_empty());
        assert_eq!(
            cpplab_family_new(CpplabClass::C3, 19, 1, 5, CpplabModulus::Auto, &mut fam),
            CpplabStatus::HypothesisViolated
        );
        assert_eq!(cpplab_field_order(ptr::null()), 0);
        assert_eq!(cpplab_verify(ptr::null(), ptr::null(), 1, false, ptr::null_mut()), CpplabStatus::NullPointer);
        cpplab_field_free(ptr::null_mut());
        cpplab_family_free(ptr::null_mut());
        cpplab_report_free(ptr::null_mut());
        cpplab_string_free(ptr::null_mut());
    }
}

#[test]
fn family_and_verify() {
    unsafe {
        let mut fam = ptr::null_mut();
        assert_eq!(
            cpplab_family_new(CpplabClass::C1, 3, 5, 0, CpplabModulus::X2Plus1, &mut fam),
            CpplabStatus::Ok
        );
        let (mut d, mut e, mut closed) = (ptr::null_mut(), ptr::null_mut(), false);
        assert_eq!(cpplab_family_exponents(fam, &mut d, &mut e, &mut closed), CpplabStatus::Ok);
        assert_eq!(take_string(d), "245");
        assert_eq!(take_string(e), "39285");
        assert!(closed);
        cpplab_family_free(fam);

        assert_eq!(
            cpplab_family_new(CpplabClass::C3, 7, 1, 2, CpplabModulus::Auto, &mut fam),
            CpplabStatus::Ok
        );
        let mut field = ptr::null_mut();
        assert_eq!(cpplab_family_field(fam, 0, &mut field), CpplabStatus::Ok);
        assert_eq!(cpplab_field_order(field), 49);

        let mut len = 0;
        assert_eq!(cpplab_family_admissible(fam, field, ptr::null_mut(), 0, &mut len), CpplabStatus::BufferTooSmall);
        assert_eq!(len, 4);
        let mut buf = vec![0u64; len];
        assert_eq!(cpplab_family_admissible(fam, field, buf.as_mut_ptr(), buf.len(), &mut len), CpplabStatus::Ok);
        assert!(buf.windows(2).all(|w| w[0] < w[1]));

        let mut report = ptr::null_mut();
        assert_eq!(cpplab_verify(fam, field, 2, true, &mut report), CpplabStatus::Ok);
        assert!(cpplab_report_all_pass(report));
        assert_eq!(cpplab_report_count(report), 4);
        let mut json = ptr::null_mut();
        assert_eq!(cpplab_report_json(report, &mut json), CpplabStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(doc["all_pass"], true);
        assert_eq!(doc["results"].as_array().unwrap().len(), 4);
        cpplab_report_free(report);

        // field built internally
        assert_eq!(cpplab_verify(fam, ptr::null(), 1, false, &mut report), CpplabStatus::Ok);
        assert_eq!(cpplab_report_count(report), 4);
        cpplab_report_free(report);

        // family over a field of the wrong size
        let mut other = ptr::null_mut();
        assert_eq!(cpplab_field_new(3, 1, CpplabModulus::X2Plus1, 0, &mut other), CpplabStatus::Ok);
        assert_eq!(cpplab_verify(fam, other, 1, false, &mut report), CpplabStatus::InvalidArgument);
        cpplab_field_free(other);
        cpplab_field_free(field);
        cpplab_family_free(fam);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(cpplab_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/cpplab.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "cpplab_field_new",
        "cpplab_family_admissible",
        "cpplab_verify",
        "cpplab_report_json",
        "cpplab_last_error_message",
        "CPPLAB_STATUS_VERIFY_FAILED = 1",
        "typedef struct CpplabReport CpplabReport",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler found; syntax check skipped");
        return;
    };
    assert!(status.success(), "cc rejected the header");
}
