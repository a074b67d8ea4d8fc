//! C ABI over `modext`.
//!
//! Every fallible call returns a [`ModextStatus`]; on failure the message is
//! available from [`modext_last_error_message`] on the same thread. Codes are
//! opaque [`ModextCode`] handles released with [`modext_code_free`]; strings
//! returned through out-parameters are released with [`modext_string_free`].
//! Work budgets come from the `MODCODE_BUDGET` environment variable.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use modext::cli::CodeFile;
use modext::forge::{min_nontrivial_length, wood_counterexample};
use modext::linalg::gaussian_binomial;
use modext::modcode::{extend_to_monomial, is_isometry_criterion, Code};
use modext::{Budget, ModextError};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModextStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Malformed input: bad JSON, shapes, non-prime q, invalid UTF-8.
    InvalidInput = 2,
    /// Well-formed input outside the mathematical domain of the call.
    Domain = 3,
    /// A `MODCODE_BUDGET` limit would be exceeded.
    Budget = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

/// Opaque code handle.
pub struct ModextCode(Code);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &ModextError) -> ModextStatus {
    match e.exit_code() {
        2 => ModextStatus::Domain,
        3 => ModextStatus::Budget,
        _ => ModextStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), ModextStatus>) -> ModextStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ModextStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal error: panic caught at the C boundary".into());
            ModextStatus::Internal
        }
    }
}

fn fail(e: ModextError) -> ModextStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(name: &str) -> ModextStatus {
    set_error(format!("null pointer: {name}"));
    ModextStatus::NullArgument
}

fn budget() -> Result<Budget, ModextStatus> {
    Budget::from_env().map_err(fail)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Parses a JSON code file (`{q, m, k, t, generators}`) into a new handle.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn modext_code_from_json(json: *const c_char, out: *mut *mut ModextCode) -> ModextStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| fail(ModextError::Input("json is not UTF-8".into())))?;
        let code = CodeFile::from_json(text).and_then(|f| f.to_code()).map_err(fail)?;
        *out = Box::into_raw(Box::new(ModextCode(code)));
        Ok(())
    })
}

/// Serializes a code to JSON. Free the result with [`modext_string_free`].
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn modext_code_to_json(code: *const ModextCode, out: *mut *mut c_char) -> ModextStatus {
    guard(|| {
        let code = code.as_ref().ok_or_else(|| null("code"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = into_c_string(CodeFile::from_code(&code.0).to_json());
        Ok(())
    })
}

/// Number of coordinates of the code.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn modext_code_length(code: *const ModextCode, out: *mut usize) -> ModextStatus {
    guard(|| {
        let code = code.as_ref().ok_or_else(|| null("code"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = code.0.len();
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `code` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn modext_code_free(code: *mut ModextCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Builds the minimum-length unextendable isometry `λ ↦ μ` over
/// `M_{m x k}(F_q)`. Requires `k > m`, otherwise returns `Domain`.
///
/// # Safety
/// `lambda` and `mu` must be writable.
#[no_mangle]
pub unsafe extern "C" fn modext_forge(
    q: u64,
    m: usize,
    k: usize,
    lambda: *mut *mut ModextCode,
    mu: *mut *mut ModextCode,
) -> ModextStatus {
    guard(|| {
        if lambda.is_null() {
            return Err(null("lambda"));
        }
        if mu.is_null() {
            return Err(null("mu"));
        }
        let (l, u) = wood_counterexample(q, m, k, &budget()?).map_err(fail)?;
        *lambda = Box::into_raw(Box::new(ModextCode(l)));
        *mu = Box::into_raw(Box::new(ModextCode(u)));
        Ok(())
    })
}

/// Decides whether `λ(w) ↦ μ(w)` preserves Hamming weight and, if so,
/// whether it extends to a monomial map. `extendable` is false for
/// non-isometries.
///
/// # Safety
/// `lambda` and `mu` must be live handles; `isometry` and `extendable` must be writable.
#[no_mangle]
pub unsafe extern "C" fn modext_check(
    lambda: *const ModextCode,
    mu: *const ModextCode,
    isometry: *mut bool,
    extendable: *mut bool,
) -> ModextStatus {
    guard(|| {
        let lam = lambda.as_ref().ok_or_else(|| null("lambda"))?;
        let mu = mu.as_ref().ok_or_else(|| null("mu"))?;
        if isometry.is_null() {
            return Err(null("isometry"));
        }
        if extendable.is_null() {
            return Err(null("extendable"));
        }
        let b = budget()?;
        let iso = is_isometry_criterion(&lam.0, &mu.0, &b).map_err(fail)?;
        let ext = iso && extend_to_monomial(&lam.0, &mu.0, &b).map_err(fail)?.is_extendable();
        *isometry = iso;
        *extendable = ext;
        Ok(())
    })
}

/// Shortest nontrivial solution length in `M_{m x t}(F_q)` up to `bound`.
/// `length` is 0 when none exists within the bound. `exhausted` is false
/// when the search budget ran out first.
///
/// # Safety
/// `length` and `exhausted` must be writable.
#[no_mangle]
pub unsafe extern "C" fn modext_min_length(
    q: u64,
    m: usize,
    t: usize,
    bound: u64,
    length: *mut u64,
    exhausted: *mut bool,
) -> ModextStatus {
    guard(|| {
        if length.is_null() {
            return Err(null("length"));
        }
        if exhausted.is_null() {
            return Err(null("exhausted"));
        }
        let res = min_nontrivial_length(q, m, t, bound, &budget()?).map_err(fail)?;
        *length = res.min_length.unwrap_or(0);
        *exhausted = res.exhausted;
        Ok(())
    })
}

/// Gaussian binomial `[t choose i]_q` as a decimal string. Free the result
/// with [`modext_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn modext_gaussian_binomial(t: i64, i: i64, q: u64, out: *mut *mut c_char) -> ModextStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = into_c_string(gaussian_binomial(t, i, q).to_string());
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn modext_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on this thread; do not free.
#[no_mangle]
pub extern "C" fn modext_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
