use std::ffi::{CStr, CString};
use std::ptr;

use lrslab_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    lrs_string_free(s);
    out
}

#[test]
fn minimal_recursion_round_trip() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(lrs_field_new(c("7").as_ptr(), &mut k), LrsStatus::Ok);
        assert_eq!(lrs_field_size(k), 7);
        let mut s = ptr::null_mut();
        assert_eq!(lrs_seq_new(k, c("1,3,4,6,5,2").as_ptr(), &mut s), LrsStatus::Ok);
        assert_eq!(lrs_seq_period(s), 6);
        let mut f = ptr::null_mut();
        assert_eq!(lrs_seq_minimal_recursion(s, &mut f), LrsStatus::Ok);
        assert_eq!(lrs_poly_degree(f), 3);
        let mut text = ptr::null_mut();
        assert_eq!(lrs_poly_to_string(f, &mut text), LrsStatus::Ok);
        assert_eq!(take(text), "x^3+2*x^2+2*x+1");
        let mut ans = false;
        assert_eq!(lrs_seq_verify(s, &mut ans), LrsStatus::Ok);
        assert!(ans);
        lrs_poly_free(f);
        lrs_seq_free(s);
        lrs_field_free(k);
    }
}

#[test]
fn classify_json_is_canonical() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(lrs_field_new(c("3^2").as_ptr(), &mut k), LrsStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(lrs_seq_new(k, c("1,w,1+w,1+2*w,2,2*w,2+2*w,2+w").as_ptr(), &mut s), LrsStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(lrs_seq_classify_json(s, &mut out), LrsStatus::Ok);
        let text = take(out);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["is_cyclic"], serde_json::json!(false));
        assert_eq!(v["standardness"], serde_json::json!("non-standard-presentation"));
        lrs_seq_free(s);
        lrs_field_free(k);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(lrs_field_new(c("4").as_ptr(), &mut k), LrsStatus::NotPrime);
        assert!(k.is_null());
        let msg = CStr::from_ptr(lrs_last_error()).to_str().unwrap();
        assert!(msg.contains("not a prime"), "{msg}");
        assert_eq!(lrs_field_new(ptr::null(), &mut k), LrsStatus::NullPointer);
        assert_eq!(lrs_field_new(c("7").as_ptr(), ptr::null_mut()), LrsStatus::NullPointer);

        assert_eq!(lrs_field_new(c("7").as_ptr(), &mut k), LrsStatus::Ok);
        assert!(lrs_last_error().is_null());
        let mut s = ptr::null_mut();
        assert_eq!(lrs_seq_new(k, c("1,x").as_ptr(), &mut s), LrsStatus::Parse);
        let mut f = ptr::null_mut();
        assert_eq!(lrs_seq_minimal_recursion(ptr::null(), &mut f), LrsStatus::NullPointer);
        assert_eq!(lrs_poly_degree(ptr::null()), -1);
        lrs_field_free(k);
        lrs_field_free(ptr::null_mut());
        lrs_string_free(ptr::null_mut());
    }
}

#[test]
fn search_reports_exhaustiveness() {
    unsafe {
        let mut out = ptr::null_mut();
        let mut exhaustive = false;
        assert_eq!(lrs_search_ans_json(6, 13, 0, 1, &mut out, &mut exhaustive), LrsStatus::Ok);
        assert!(exhaustive);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["characteristics_with_hits"], serde_json::json!([7]));

        assert_eq!(lrs_search_ans_json(6, 7, 10, 1, &mut out, &mut exhaustive), LrsStatus::Ok);
        assert!(!exhaustive);
        lrs_string_free(out);

        assert_eq!(lrs_search_ans_json(1, 7, 0, 1, &mut out, &mut exhaustive), LrsStatus::InvalidArgument);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/lrslab.h");
    let src = std::env::temp_dir().join(format!("lrslab_header_{}.c", std::process::id()));
    std::fs::write(&src, format!("#include \"{header}\"\nint main(void) {{ return LRS_STATUS_OK; }}\n")).unwrap();
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg(&src)
        .status()
        .expect("a C compiler on PATH");
    std::fs::remove_file(&src).ok();
    assert!(status.success());
}
