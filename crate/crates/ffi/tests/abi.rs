use std::ffi::{CStr, CString};
use std::ptr;

use modext_ffi::*;

fn last_error() -> String {
    let p = modext_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn forge(q: u64, m: usize, k: usize) -> (*mut ModextCode, *mut ModextCode) {
    let (mut l, mut u) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { modext_forge(q, m, k, &mut l, &mut u) }, ModextStatus::Ok);
    (l, u)
}

#[test]
fn forge_lengths_and_check() {
    for (q, m, k, n) in [(2, 1, 2, 3), (3, 1, 2, 4), (2, 2, 3, 15)] {
        let (l, u) = forge(q, m, k);
        let mut len = 0usize;
        assert_eq!(unsafe { modext_code_length(l, &mut len) }, ModextStatus::Ok);
        assert_eq!(len, n);
        let (mut iso, mut ext) = (false, true);
        assert_eq!(unsafe { modext_check(l, u, &mut iso, &mut ext) }, ModextStatus::Ok);
        assert!(iso && !ext);
        assert_eq!(unsafe { modext_check(l, l, &mut iso, &mut ext) }, ModextStatus::Ok);
        assert!(iso && ext);
        unsafe {
            modext_code_free(l);
            modext_code_free(u);
        }
    }
}

#[test]
fn forge_rejects_extension_property_alphabets() {
    let (mut l, mut u) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { modext_forge(2, 2, 2, &mut l, &mut u) }, ModextStatus::Domain);
    assert!(l.is_null() && u.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { modext_forge(4, 1, 2, &mut l, &mut u) }, ModextStatus::InvalidInput);
}

#[test]
fn json_round_trip() {
    let (l, u) = forge(2, 1, 2);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { modext_code_to_json(l, &mut s) }, ModextStatus::Ok);
    let json = unsafe { CStr::from_ptr(s) }.to_owned();
    unsafe { modext_string_free(s) };
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { modext_code_from_json(json.as_ptr(), &mut back) }, ModextStatus::Ok);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { modext_code_to_json(back, &mut again) }, ModextStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(again) }, json.as_c_str());
    unsafe {
        modext_string_free(again);
        modext_code_free(back);
        modext_code_free(l);
        modext_code_free(u);
    }
}

#[test]
fn bad_json_and_null_arguments() {
    let bad = CString::new("{\"q\": 2}").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { modext_code_from_json(bad.as_ptr(), &mut out) }, ModextStatus::InvalidInput);
    assert!(out.is_null());
    assert!(last_error().contains("code file"));
    let wrong_entry = CString::new(r#"{"q":2,"m":1,"k":1,"t":1,"generators":[[[2]]]}"#).unwrap();
    assert_eq!(unsafe { modext_code_from_json(wrong_entry.as_ptr(), &mut out) }, ModextStatus::InvalidInput);
    assert_eq!(unsafe { modext_code_from_json(ptr::null(), &mut out) }, ModextStatus::NullArgument);
    assert_eq!(unsafe { modext_code_length(ptr::null(), ptr::null_mut()) }, ModextStatus::NullArgument);
    unsafe {
        modext_code_free(ptr::null_mut());
        modext_string_free(ptr::null_mut());
    }
}

#[test]
fn error_cleared_on_success() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { modext_code_from_json(ptr::null(), &mut out) }, ModextStatus::NullArgument);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { modext_gaussian_binomial(4, 2, 2, &mut s) }, ModextStatus::Ok);
    assert!(modext_last_error_message().is_null());
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "35");
    unsafe { modext_string_free(s) };
}

#[test]
fn min_length_search() {
    let (mut len, mut done) = (0u64, false);
    assert_eq!(unsafe { modext_min_length(2, 1, 2, 8, &mut len, &mut done) }, ModextStatus::Ok);
    assert_eq!((len, done), (3, true));
    assert_eq!(unsafe { modext_min_length(2, 2, 3, 20, &mut len, &mut done) }, ModextStatus::Ok);
    assert_eq!((len, done), (15, true));
    assert_eq!(unsafe { modext_min_length(2, 2, 3, 14, &mut len, &mut done) }, ModextStatus::Ok);
    assert_eq!((len, done), (0, true));
    assert_eq!(unsafe { modext_min_length(6, 1, 2, 8, &mut len, &mut done) }, ModextStatus::InvalidInput);
}
