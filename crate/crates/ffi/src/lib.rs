//! C ABI over `lrslab`.
//!
//! Objects are opaque heap handles freed by their `_free` function. Every
//! fallible call returns an [`LrsStatus`]; on failure the message is kept
//! per thread and read with [`lrs_last_error`]. Strings returned to the
//! caller are NUL-terminated UTF-8 and must be released with
//! [`lrs_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lrslab::classify::classify_presentation;
use lrslab::format::{canonical_json, parse_field_spec, parse_poly, parse_seq, poly_to_string};
use lrslab::lrs::PeriodicSeq;
use lrslab::search::{search_ans, verify_hit, SearchSpec};
use lrslab::{Error, Field, Poly};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LrsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotPrime = 4,
    FieldTooLarge = 5,
    MixedFields = 6,
    InvalidArgument = 7,
    NotCoprime = 8,
    DivisionByZero = 9,
    Domain = 10,
    Panic = 255,
}

impl From<&Error> for LrsStatus {
    fn from(e: &Error) -> LrsStatus {
        match e {
            Error::Parse(_) | Error::BadModulus(_) => LrsStatus::Parse,
            Error::NotPrime(_) => LrsStatus::NotPrime,
            Error::FieldTooLarge { .. } => LrsStatus::FieldTooLarge,
            Error::MixedFields => LrsStatus::MixedFields,
            Error::InvalidArgument(_) | Error::ZeroDegree | Error::SeedLength { .. } => LrsStatus::InvalidArgument,
            Error::NotCoprime { .. } => LrsStatus::NotCoprime,
            Error::DivisionByZero => LrsStatus::DivisionByZero,
            _ => LrsStatus::Domain,
        }
    }
}

/// A finite field.
pub struct LrsField(Field);

/// A periodic sequence given by one period.
pub struct LrsSeq(PeriodicSeq);

/// A polynomial over a field.
pub struct LrsPoly(Poly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(LrsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(LrsStatus::from(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LrsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LrsStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            LrsStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(LrsStatus::NullPointer, "null string argument".to_string()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(LrsStatus::InvalidUtf8, "argument is not UTF-8".to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(LrsStatus::NullPointer, "null handle".to_string()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(LrsStatus::NullPointer, "null output pointer".to_string()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(LrsStatus::NullPointer, "null output pointer".to_string()));
    }
    *out = CString::new(s).expect("library output has no NUL").into_raw();
    Ok(())
}

unsafe fn put_value<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(LrsStatus::NullPointer, "null output pointer".to_string()));
    }
    *out = value;
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn lrs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn lrs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a field spec such as `7`, `3^2` or `3^2/1,0,1`.
///
/// # Safety
/// `spec` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lrs_field_new(spec: *const c_char, out: *mut *mut LrsField) -> LrsStatus {
    guard(|| put(out, LrsField(parse_field_spec(text(spec)?)?)))
}

/// # Safety
/// `f` must be NULL or a handle from [`lrs_field_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn lrs_field_free(f: *mut LrsField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of elements; 0 for a NULL handle.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lrs_field_size(f: *const LrsField) -> u64 {
    f.as_ref().map_or(0, |f| f.0.size())
}

/// Builds a sequence from a comma-separated window such as `1,3,4,6,5,2`.
///
/// # Safety
/// `field` must be a live handle, `window` a valid C string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lrs_seq_new(
    field: *const LrsField,
    window: *const c_char,
    out: *mut *mut LrsSeq,
) -> LrsStatus {
    guard(|| {
        let k = &handle(field)?.0;
        put(out, LrsSeq(PeriodicSeq::new(k, parse_seq(k, text(window)?)?)?))
    })
}

/// # Safety
/// `s` must be NULL or a handle from [`lrs_seq_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn lrs_seq_free(s: *mut LrsSeq) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Period of the sequence; 0 for a NULL handle.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lrs_seq_period(s: *const LrsSeq) -> u64 {
    s.as_ref().map_or(0, |s| s.0.period() as u64)
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lrs_seq_minimal_recursion(s: *const LrsSeq, out: *mut *mut LrsPoly) -> LrsStatus {
    guard(|| put(out, LrsPoly(handle(s)?.0.minimal_recursion())))
}

/// Report of the window as a subgroup presentation, as canonical JSON.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lrs_seq_classify_json(s: *const LrsSeq, out: *mut *mut c_char) -> LrsStatus {
    guard(|| {
        let r = classify_presentation(&handle(s)?.0, None)?;
        put_string(out, canonical_json(&r.to_json()))
    })
}

/// Writes whether the window is automatically non-standard.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lrs_seq_verify(s: *const LrsSeq, out: *mut bool) -> LrsStatus {
    guard(|| {
        let s = &handle(s)?.0;
        put_value(out, verify_hit(s.window(), s.field()))
    })
}

/// Parses `x^3+2*x^2+2*x+1` or `[1,2,2,1]` over `field`.
///
/// # Safety
/// `field` must be a live handle, `s` a valid C string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lrs_poly_new(field: *const LrsField, s: *const c_char, out: *mut *mut LrsPoly) -> LrsStatus {
    guard(|| {
        let k = &handle(field)?.0;
        put(out, LrsPoly(parse_poly(k, text(s)?)?))
    })
}

/// # Safety
/// `f` must be NULL or a polynomial handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn lrs_poly_free(f: *mut LrsPoly) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Degree, or -1 for the zero polynomial and NULL.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lrs_poly_degree(f: *const LrsPoly) -> i64 {
    f.as_ref().and_then(|f| f.0.degree()).map_or(-1, |d| d as i64)
}

/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lrs_poly_to_string(f: *const LrsPoly, out: *mut *mut c_char) -> LrsStatus {
    guard(|| put_string(out, poly_to_string(&handle(f)?.0)))
}

/// Runs the subgroup search for size `m` over characteristics up to
/// `p_max`. `cap` 0 means no cap; `threads` 0 means the default pool.
/// `exhaustive` receives whether every seed was enumerated.
///
/// # Safety
/// `out` and `exhaustive` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lrs_search_ans_json(
    m: u64,
    p_max: u64,
    cap: u64,
    threads: u32,
    out: *mut *mut c_char,
    exhaustive: *mut bool,
) -> LrsStatus {
    guard(|| {
        if out.is_null() || exhaustive.is_null() {
            return Err(Failure(LrsStatus::NullPointer, "null output pointer".to_string()));
        }
        let mut spec = SearchSpec::new(m, p_max);
        spec.cap = (cap > 0).then_some(cap);
        let r = search_ans(&spec, (threads > 0).then_some(threads as usize))?;
        put_value(exhaustive, r.exhaustive())?;
        put_string(out, canonical_json(&r.to_json()))
    })
}
