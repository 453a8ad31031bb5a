//! C interface to `skewspan`.
//!
//! Instances cross the boundary as opaque handles created from instance-file
//! JSON. Every call returns a [`SkewspanStatus`]; on failure the message is
//! available from [`skewspan_last_error_message`]. Strings returned through
//! out-parameters are owned by the caller and released with
//! [`skewspan_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;
use skewspan::characterization::{build, extract, roundtrip};
use skewspan::examples::monoid_to_monoidale;
use skewspan::io::{parse_instance, print_instance, Instance};
use skewspan::simplicial::dec_cat;
use skewspan::skew::verify;
use skewspan::Error;

/// Opaque handle to a parsed instance.
pub struct SkewspanInstance(Instance);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkewspanStatus {
    Ok = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    NullPointer = 3,
    Utf8 = 4,
    WrongKind = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkewspanKind {
    Monoidale = 0,
    Category = 1,
    RStructure = 2,
    Monoid = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(SkewspanStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::AxiomsFail(_) | Error::ConditionsFail(_) => SkewspanStatus::VerificationFailed,
            _ => SkewspanStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<SkewspanStatus, Failure>) -> SkewspanStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            SkewspanStatus::Internal
        }
    }
}

unsafe fn instance<'a>(p: *const SkewspanInstance) -> Result<&'a Instance, Failure> {
    // SAFETY: non-null handles come from `skewspan_parse` or a constructor here.
    unsafe { p.as_ref() }
        .map(|h| &h.0)
        .ok_or_else(|| Failure(SkewspanStatus::NullPointer, "null instance handle".into()))
}

fn wrong_kind(expected: &str, found: &Instance) -> Failure {
    Failure(
        SkewspanStatus::WrongKind,
        format!("expected a {expected}, found a {}", found.kind()),
    )
}

unsafe fn put_handle(out: *mut *mut SkewspanInstance, inst: Instance) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            SkewspanStatus::NullPointer,
            "null output pointer".into(),
        ));
    }
    // SAFETY: checked non-null; the caller provides writable storage.
    unsafe { *out = Box::into_raw(Box::new(SkewspanInstance(inst))) };
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Ok(());
    }
    let c = CString::new(s)
        .map_err(|_| Failure(SkewspanStatus::Internal, "string contains NUL".into()))?;
    // SAFETY: checked non-null.
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn to_json(v: &impl serde::Serialize) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Failure(SkewspanStatus::Internal, e.to_string()))
}

/// Parses instance-file JSON into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn skewspan_parse(
    json: *const c_char,
    out: *mut *mut SkewspanInstance,
) -> SkewspanStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure(
                SkewspanStatus::NullPointer,
                "null input string".into(),
            ));
        }
        // SAFETY: the caller passes a NUL-terminated string.
        let text = unsafe { CStr::from_ptr(json) }
            .to_str()
            .map_err(|e| Failure(SkewspanStatus::Utf8, e.to_string()))?;
        let inst = parse_instance(text)?;
        unsafe { put_handle(out, inst)? };
        Ok(SkewspanStatus::Ok)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `inst` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn skewspan_free(inst: *mut SkewspanInstance) {
    if !inst.is_null() {
        // SAFETY: the handle was created by `Box::into_raw`.
        drop(unsafe { Box::from_raw(inst) });
    }
}

/// # Safety
/// `inst` must be a live handle; `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn skewspan_kind(
    inst: *const SkewspanInstance,
    out: *mut SkewspanKind,
) -> SkewspanStatus {
    guard(|| {
        let kind = match unsafe { instance(inst)? } {
            Instance::Monoidale(_) => SkewspanKind::Monoidale,
            Instance::Category(_) => SkewspanKind::Category,
            Instance::RStructure(_) => SkewspanKind::RStructure,
            Instance::Monoid(_) => SkewspanKind::Monoid,
        };
        if out.is_null() {
            return Err(Failure(
                SkewspanStatus::NullPointer,
                "null output pointer".into(),
            ));
        }
        unsafe { *out = kind };
        Ok(SkewspanStatus::Ok)
    })
}

/// Runs both axiom checkers. Returns `VerificationFailed` when some axiom
/// fails or the instance is not well-formed. The JSON report is written to
/// `report` unless it is null.
///
/// # Safety
/// `inst` must be a live handle; `report` is null or points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn skewspan_verify(
    inst: *const SkewspanInstance,
    report: *mut *mut c_char,
) -> SkewspanStatus {
    guard(|| {
        let Instance::Monoidale(m) = (unsafe { instance(inst)? }) else {
            return Err(wrong_kind("monoidale", unsafe { instance(inst)? }));
        };
        let r = verify(m);
        unsafe { put_string(report, to_json(&r)?)? };
        Ok(if r.all_pass() {
            SkewspanStatus::Ok
        } else {
            SkewspanStatus::VerificationFailed
        })
    })
}

/// Compares a monoidale with `build(extract(.))`; the report goes to `report`.
///
/// # Safety
/// As for [`skewspan_verify`].
#[no_mangle]
pub unsafe extern "C" fn skewspan_roundtrip(
    inst: *const SkewspanInstance,
    report: *mut *mut c_char,
) -> SkewspanStatus {
    guard(|| {
        let Instance::Monoidale(m) = (unsafe { instance(inst)? }) else {
            return Err(wrong_kind("monoidale", unsafe { instance(inst)? }));
        };
        let r = roundtrip(m)?;
        unsafe { put_string(report, to_json(&r)?)? };
        Ok(if r.isomorphic() {
            SkewspanStatus::Ok
        } else {
            SkewspanStatus::VerificationFailed
        })
    })
}

unsafe fn convert(
    inst: *const SkewspanInstance,
    out: *mut *mut SkewspanInstance,
    f: impl FnOnce(&Instance) -> Result<Instance, Failure>,
) -> SkewspanStatus {
    guard(|| {
        let result = f(unsafe { instance(inst)? })?;
        unsafe { put_handle(out, result)? };
        Ok(SkewspanStatus::Ok)
    })
}

/// The (C, R) form of a verified monoidale, as a new handle.
///
/// # Safety
/// `inst` must be a live handle; `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn skewspan_extract(
    inst: *const SkewspanInstance,
    out: *mut *mut SkewspanInstance,
) -> SkewspanStatus {
    unsafe {
        convert(inst, out, |i| match i {
            Instance::Monoidale(m) => Ok(Instance::RStructure(extract(m)?)),
            other => Err(wrong_kind("monoidale", other)),
        })
    }
}

/// The monoidale of an R-structure, as a new handle.
///
/// # Safety
/// As for [`skewspan_extract`].
#[no_mangle]
pub unsafe extern "C" fn skewspan_build(
    inst: *const SkewspanInstance,
    out: *mut *mut SkewspanInstance,
) -> SkewspanStatus {
    unsafe {
        convert(inst, out, |i| match i {
            Instance::RStructure(rs) => Ok(Instance::Monoidale(build(rs)?)),
            other => Err(wrong_kind("rstructure", other)),
        })
    }
}

/// The monoidale of a monoid, as a new handle.
///
/// # Safety
/// As for [`skewspan_extract`].
#[no_mangle]
pub unsafe extern "C" fn skewspan_from_monoid(
    inst: *const SkewspanInstance,
    out: *mut *mut SkewspanInstance,
) -> SkewspanStatus {
    unsafe {
        convert(inst, out, |i| match i {
            Instance::Monoid(m) => Ok(Instance::Monoidale(monoid_to_monoidale(m))),
            other => Err(wrong_kind("monoid", other)),
        })
    }
}

/// Dec of a category, as a new handle.
///
/// # Safety
/// As for [`skewspan_extract`].
#[no_mangle]
pub unsafe extern "C" fn skewspan_dec(
    inst: *const SkewspanInstance,
    out: *mut *mut SkewspanInstance,
) -> SkewspanStatus {
    unsafe {
        convert(inst, out, |i| match i {
            Instance::Category(c) => Ok(Instance::Category(dec_cat(c)?.0)),
            other => Err(wrong_kind("category", other)),
        })
    }
}

/// Serializes a handle back to instance-file JSON.
///
/// # Safety
/// `inst` must be a live handle; `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn skewspan_to_json(
    inst: *const SkewspanInstance,
    out: *mut *mut c_char,
) -> SkewspanStatus {
    guard(|| {
        let text = print_instance(unsafe { instance(inst)? });
        if out.is_null() {
            return Err(Failure(
                SkewspanStatus::NullPointer,
                "null output pointer".into(),
            ));
        }
        unsafe { put_string(out, text)? };
        Ok(SkewspanStatus::Ok)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn skewspan_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by `CString::into_raw`.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message for the last failing call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn skewspan_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
