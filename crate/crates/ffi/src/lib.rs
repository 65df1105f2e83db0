//! C interface to the invariant-field kernel.
//!
//! Handles are opaque; every call returns an [`InvfStatus`]. On failure a
//! message is available from [`invf_last_error`] on the same thread. Strings
//! returned through out-parameters belong to the caller and are released
//! with [`invf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use invfield::cli::report::{run, Command, RunOptions};
use invfield::cli::spec::{parse_spec_str, GroupSpecFile, Overrides};
use invfield::cli::load_spec;
use invfield::grouprep::{GroupError, RepContext};
use invfield::spanning::{compute_dreg, compute_dspan, RankMode};
use invfield::Error;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    GroupTooLarge = 5,
    BudgetExceeded = 6,
    Internal = 7,
    /// The report was produced but some asserted inequality fails.
    BoundViolated = 8,
}

/// A parsed group description with its enumerated group.
pub struct InvfContext {
    spec: GroupSpecFile,
    ctx: RepContext,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: InvfStatus, msg: &str) -> InvfStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> InvfStatus {
    match e {
        Error::Spec(invfield::cli::spec::SpecError::Syntax { .. }) | Error::Literal(_) => InvfStatus::ParseError,
        Error::Group(GroupError::TooLarge { .. }) => InvfStatus::GroupTooLarge,
        Error::Spec(_) | Error::Group(_) | Error::Irrep(_) | Error::Scalar(_) | Error::Ring(_) => {
            InvfStatus::InvalidInput
        }
        Error::Budget(_) => InvfStatus::BudgetExceeded,
        Error::Internal(_) => InvfStatus::Internal,
    }
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> InvfStatus) -> InvfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == InvfStatus::Ok {
                set_error("");
            }
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            fail(InvfStatus::Internal, &format!("internal error: {msg}"))
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, InvfStatus> {
    if s.is_null() {
        return Err(fail(InvfStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(InvfStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn build(spec: GroupSpecFile, out: *mut *mut InvfContext) -> InvfStatus {
    match spec.build(&Overrides::default()) {
        Ok(ctx) => {
            let h = Box::new(InvfContext { spec, ctx });
            unsafe { *out = Box::into_raw(h) };
            InvfStatus::Ok
        }
        Err(e) => fail(status_of(&e), &e.to_string()),
    }
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn invf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn invf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a group description document and enumerates the group.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invf_context_from_json(json: *const c_char, out: *mut *mut InvfContext) -> InvfStatus {
    guard(|| {
        if out.is_null() {
            return fail(InvfStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let src = match read_str(json) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match parse_spec_str(src) {
            Ok(spec) => build(spec, out),
            Err(e) => fail(status_of(&Error::Spec(e.clone())), &e.to_string()),
        }
    })
}

/// Loads a bundled description by name (for example `q8`) or a file path.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invf_context_load(name: *const c_char, out: *mut *mut InvfContext) -> InvfStatus {
    guard(|| {
        if out.is_null() {
            return fail(InvfStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let name = match read_str(name) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match load_spec(name) {
            Ok(spec) => build(spec, out),
            Err(e) => fail(status_of(&Error::Spec(e.clone())), &e.to_string()),
        }
    })
}

/// Releases a context. Null is ignored.
///
/// # Safety
/// `ctx` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn invf_context_free(ctx: *mut InvfContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

unsafe fn context<'a>(ctx: *const InvfContext) -> Result<&'a InvfContext, InvfStatus> {
    ctx.as_ref()
        .ok_or_else(|| fail(InvfStatus::NullPointer, "null context"))
}

/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn invf_group_order(ctx: *const InvfContext, out: *mut usize) -> InvfStatus {
    guard(|| {
        let c = match context(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(InvfStatus::NullPointer, "null output pointer");
        }
        *out = c.ctx.group().order();
        InvfStatus::Ok
    })
}

/// Spanning degree. `fast_rank` enables the randomized rank shortcut.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn invf_dspan(ctx: *const InvfContext, fast_rank: bool, out: *mut u32) -> InvfStatus {
    guard(|| {
        let c = match context(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(InvfStatus::NullPointer, "null output pointer");
        }
        let mode = if fast_rank { RankMode::Fast } else { RankMode::Exact };
        match compute_dspan(&c.ctx, mode) {
            Ok(d) => {
                *out = d;
                InvfStatus::Ok
            }
            Err(e) => fail(status_of(&e), &e.to_string()),
        }
    })
}

/// Least degree containing a copy of the regular representation.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn invf_dreg(ctx: *const InvfContext, out: *mut u32) -> InvfStatus {
    guard(|| {
        let c = match context(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(InvfStatus::NullPointer, "null output pointer");
        }
        match compute_dreg(&c.ctx) {
            Ok(d) => {
                *out = d;
                InvfStatus::Ok
            }
            Err(e) => fail(status_of(&e), &e.to_string()),
        }
    })
}

unsafe fn report_json(ctx: *const InvfContext, command: Command, budget_secs: u64, out: *mut *mut c_char) -> InvfStatus {
    guard(|| {
        let c = match context(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(InvfStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let opts = RunOptions {
            orbit_budget: (budget_secs > 0).then(|| Duration::from_secs(budget_secs)),
            ..RunOptions::default()
        };
        match run(command, &c.spec, &opts) {
            Ok(r) => {
                let text = CString::new(r.to_json()).expect("json has no nul");
                *out = text.into_raw();
                if r.passed() {
                    InvfStatus::Ok
                } else {
                    fail(InvfStatus::BoundViolated, "some asserted inequality fails")
                }
            }
            Err(e) => fail(status_of(&e), &e.to_string()),
        }
    })
}

/// Full pipeline; writes the JSON report to `out`. A report is written even
/// when the status is `BoundViolated`. `budget_secs` limits the orbit ideal
/// (0 for no limit); an overrun is recorded in the report, not an error.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn invf_verify_json(
    ctx: *const InvfContext,
    budget_secs: u64,
    out: *mut *mut c_char,
) -> InvfStatus {
    report_json(ctx, Command::Verify, budget_secs, out)
}

/// Spanning data and the generic orbit ideal as a JSON report.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn invf_orbit_ideal_json(
    ctx: *const InvfContext,
    budget_secs: u64,
    out: *mut *mut c_char,
) -> InvfStatus {
    report_json(ctx, Command::OrbitIdeal, budget_secs, out)
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn invf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
