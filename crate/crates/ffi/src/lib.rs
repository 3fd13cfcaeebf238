//! C ABI over the `blanchfield` crate.
//!
//! Results are returned through out-pointers to opaque handles; every call
//! returns a [`BfStatus`]. On failure the message is available from
//! [`bf_last_error_message`] until the next failing call on the same thread.
//! Strings handed out by the library must be released with
//! [`bf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use blanchfield::forms::{decompose, Decomposition, JumpMap, LinkingForm};
use blanchfield::pipeline::torus_decomposition;
use blanchfield::satellite::{sliceness_obstruction, torus_decomposition_oracle, KnotExpr, ObstructionReport, Verdict};
use blanchfield::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Math = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfVerdict {
    Inconclusive = 0,
    Obstructed = 1,
}

/// Opaque decomposition handle.
pub struct BfDecomposition(Decomposition);

/// Opaque obstruction report handle.
pub struct BfReport(ObstructionReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BfStatus {
    match e {
        Error::Parse(_) | Error::Json(_) => BfStatus::Parse,
        e if e.is_usage() => BfStatus::InvalidInput,
        _ => BfStatus::Math,
    }
}

fn guard<F: FnOnce() -> Result<(), BfStatus>>(f: F) -> BfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BfStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            BfStatus::Panic
        }
    }
}

fn lib<T>(r: blanchfield::Result<T>) -> Result<T, BfStatus> {
    r.map_err(|e| {
        set_error(&e.to_string());
        status_of(&e)
    })
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, BfStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(BfStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        BfStatus::Utf8
    })
}

unsafe fn write_out<T>(out: *mut *mut T, v: T) -> Result<(), BfStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(BfStatus::NullPointer);
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), BfStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(BfStatus::NullPointer);
    }
    *out = CString::new(s).expect("JSON has no NUL").into_raw();
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, BfStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        BfStatus::NullPointer
    })
}

/// Decomposition of the metabelian Blanchfield form of T(2, 2k+1) for ρ_θ,
/// computed by the full pipeline.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_torus_blanchfield(k: u32, theta: i64, out: *mut *mut BfDecomposition) -> BfStatus {
    guard(|| write_out(out, BfDecomposition(lib(torus_decomposition(k, theta))?)))
}

/// Closed-form decomposition for 1 ≤ θ ≤ k.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_oracle(k: u32, theta: i64, out: *mut *mut BfDecomposition) -> BfStatus {
    guard(|| write_out(out, BfDecomposition(lib(torus_decomposition_oracle(k, theta))?)))
}

/// Decompose a linking form given as JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_decompose_form_json(json: *const c_char, out: *mut *mut BfDecomposition) -> BfStatus {
    guard(|| {
        let lf = lib(LinkingForm::from_json(read_str(json)?))?;
        write_out(out, BfDecomposition(lib(decompose(&lf))?))
    })
}

/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_decomposition_to_json(d: *const BfDecomposition, out: *mut *mut c_char) -> BfStatus {
    guard(|| write_string(out, handle(d)?.0.to_json()))
}

/// Signature jumps of the decomposition as JSON.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_decomposition_jumps_json(d: *const BfDecomposition, out: *mut *mut c_char) -> BfStatus {
    guard(|| {
        let j = JumpMap::from_decomposition(&handle(d)?.0);
        write_string(out, j.to_json())
    })
}

/// # Safety
/// `d` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bf_decomposition_free(d: *mut BfDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Run the sliceness obstruction on a knot expression. `ells` may be null
/// (with `n_ells` = 0) to test every odd prime dividing |H₁(Σ₂)|.
///
/// # Safety
/// `expr` must be a NUL-terminated string, `ells` must point to `n_ells`
/// integers when non-null, and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_obstruct(
    expr: *const c_char,
    ells: *const u64,
    n_ells: usize,
    out: *mut *mut BfReport,
) -> BfStatus {
    guard(|| {
        let e = lib(KnotExpr::parse(read_str(expr)?))?;
        let list = if ells.is_null() || n_ells == 0 {
            None
        } else {
            Some(std::slice::from_raw_parts(ells, n_ells))
        };
        write_out(out, BfReport(lib(sliceness_obstruction(&e, list))?))
    })
}

/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_report_verdict(r: *const BfReport, out: *mut BfVerdict) -> BfStatus {
    guard(|| {
        let v = match handle(r)?.0.verdict {
            Verdict::Obstructed => BfVerdict::Obstructed,
            Verdict::Inconclusive => BfVerdict::Inconclusive,
        };
        if out.is_null() {
            set_error("null output pointer");
            return Err(BfStatus::NullPointer);
        }
        *out = v;
        Ok(())
    })
}

/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_report_to_json(r: *const BfReport, out: *mut *mut c_char) -> BfStatus {
    guard(|| write_string(out, handle(r)?.0.to_json()))
}

/// # Safety
/// `r` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bf_report_free(r: *mut BfReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failing call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
