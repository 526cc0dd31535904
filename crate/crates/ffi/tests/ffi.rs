use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qcoh_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { qcoh_string_free(p) };
    s
}

fn last_error() -> Option<String> {
    let p = qcoh_last_error();
    (!p.is_null()).then(|| take_string(p))
}

fn builtin(name: &str) -> *mut QcohModel {
    let name = CString::new(name).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qcoh_model_builtin(name.as_ptr(), &mut m) }, QcohStatus::Ok);
    m
}

#[test]
fn model_lifecycle() {
    let m = builtin("f3");
    unsafe {
        assert_eq!(qcoh_model_size(m), 6);
        assert_eq!(qcoh_model_rank(m), 2);
        let mut json = ptr::null_mut();
        assert_eq!(qcoh_model_to_json(m, &mut json), QcohStatus::Ok);
        let text = CString::new(take_string(json)).unwrap();
        let mut again = ptr::null_mut();
        assert_eq!(qcoh_model_from_json(text.as_ptr(), &mut again), QcohStatus::Ok);
        assert_eq!(qcoh_model_size(again), 6);
        qcoh_model_free(again);
        qcoh_model_free(m);
        qcoh_model_free(ptr::null_mut());
        assert_eq!(qcoh_model_size(ptr::null()), 0);
    }
    assert!(last_error().is_none());
}

#[test]
fn errors_set_status_and_message() {
    let name = CString::new("nope").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qcoh_model_builtin(name.as_ptr(), &mut m) }, QcohStatus::Unsupported);
    assert!(m.is_null());
    assert!(last_error().unwrap().contains("nope"));

    let bad = CString::new("{\"name\": 1}").unwrap();
    assert_eq!(unsafe { qcoh_model_from_json(bad.as_ptr(), &mut m) }, QcohStatus::Parse);
    assert_eq!(unsafe { qcoh_model_builtin(ptr::null(), &mut m) }, QcohStatus::InvalidArgument);
    assert!(last_error().unwrap().contains("null"));

    let f3 = builtin("f3");
    let mut ok = false;
    let rel = CString::new("a*").unwrap();
    assert_eq!(unsafe { qcoh_eval_relation(f3, rel.as_ptr(), 3, &mut ok) }, QcohStatus::Parse);
    assert!(last_error().unwrap().contains("column"));
    unsafe { qcoh_model_free(f3) };
}

#[test]
fn ring_checks() {
    let m = builtin("gr24");
    let mut passed = false;
    unsafe {
        assert_eq!(qcoh_check_flatness(m, 4, &mut passed), QcohStatus::Ok);
        assert!(passed);
        assert_eq!(qcoh_check_associativity(m, 4, &mut passed), QcohStatus::Ok);
        assert!(passed);
        let rel = CString::new("a^5 - 4*q*a").unwrap();
        assert_eq!(qcoh_eval_relation(m, rel.as_ptr(), 4, &mut passed), QcohStatus::Ok);
        assert!(passed);
        let rel = CString::new("a^5").unwrap();
        assert_eq!(qcoh_eval_relation(m, rel.as_ptr(), 4, &mut passed), QcohStatus::Ok);
        assert!(!passed);
        assert_eq!(qcoh_check_flatness(m, 4, ptr::null_mut()), QcohStatus::InvalidArgument);
        qcoh_model_free(m);
    }
}

#[test]
fn j_functions() {
    let m = builtin("sigma1");
    unsafe {
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(qcoh_jfunction_solve(m, 4, &mut a), QcohStatus::Ok);
        assert_eq!(qcoh_jfunction_closed_form(m, 4, &mut b), QcohStatus::Ok);
        let mut equal = false;
        assert_eq!(qcoh_jfunction_equal(a, b, &mut equal), QcohStatus::Ok);
        assert!(equal);
        let mut zero = false;
        let op = CString::new("D2^2 - D1*D2 - q2").unwrap();
        assert_eq!(qcoh_jfunction_apply(a, op.as_ptr(), &mut zero), QcohStatus::Ok);
        assert!(zero);
        let op = CString::new("D2^2 - D1*D2").unwrap();
        assert_eq!(qcoh_jfunction_apply(a, op.as_ptr(), &mut zero), QcohStatus::Ok);
        assert!(!zero);
        let mut json = ptr::null_mut();
        assert_eq!(qcoh_jfunction_to_json(a, &mut json), QcohStatus::Ok);
        assert!(take_string(json).starts_with("[{\"degree\":[0,0]"));
        qcoh_jfunction_free(a);
        qcoh_jfunction_free(b);
        qcoh_model_free(m);
    }
    let g = builtin("gr24");
    let mut j = ptr::null_mut();
    assert_eq!(unsafe { qcoh_jfunction_closed_form(g, 2, &mut j) }, QcohStatus::Unsupported);
    unsafe { qcoh_model_free(g) };
}

#[test]
fn descendents() {
    let m = builtin("cp1");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qcoh_descendents_json(m, 2, &mut out) }, QcohStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    let hit = v.as_array().unwrap().iter().find(|r| r["D"][0] == 2 && r["n"] == 4 && r["j_label"] == "1").unwrap();
    assert_eq!(hit["value"], "-3/4");
    assert_eq!(unsafe { qcoh_descendents_json(m, 0, &mut out) }, QcohStatus::InvalidArgument);
    unsafe { qcoh_model_free(m) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(qcoh_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qcoh.h")).unwrap();
    for name in [
        "QCOH_STATUS_OK",
        "typedef struct QcohModel QcohModel",
        "qcoh_last_error",
        "qcoh_string_free",
        "qcoh_model_builtin",
        "qcoh_jfunction_solve",
        "qcoh_descendents_json",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
