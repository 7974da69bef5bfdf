//! C interface. Algebras and reports are opaque handles; every entry point
//! returns a [`WebcalcStatus`] and never unwinds across the boundary. The
//! message for the most recent failure on the calling thread is available
//! through [`webcalc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use webcalc::cli::{execute, parse_command, CliError, Report};
use webcalc::schur::schur_dim;
use webcalc::superalgebra::GoodPair;

/// Status codes returned by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WebcalcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    AssertionFailed = 4,
    Internal = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque algebra handle.
pub struct WebcalcAlgebra {
    pair: GoodPair,
}

/// Opaque report handle.
pub struct WebcalcReport {
    report: Report,
    json: String,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn guard(f: impl FnOnce() -> Result<(), (WebcalcStatus, String)>) -> WebcalcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WebcalcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside webcalc");
            WebcalcStatus::Panic
        }
    }
}

type FfiResult<T> = Result<T, (WebcalcStatus, String)>;

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err((WebcalcStatus::NullPointer, format!("{what} is null")));
    }
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| (WebcalcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn algebra<'a>(p: *const WebcalcAlgebra) -> FfiResult<&'a GoodPair> {
    unsafe { p.as_ref() }.map(|a| &a.pair).ok_or((WebcalcStatus::NullPointer, "algebra handle is null".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err((WebcalcStatus::NullPointer, "output pointer is null".into()));
    }
    unsafe { out.write(value) };
    Ok(())
}

/// Copies `s` plus a trailing NUL into `buf`. `needed` always receives the
/// required size including the NUL.
unsafe fn copy_string(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> FfiResult<()> {
    if !needed.is_null() {
        unsafe { needed.write(s.len() + 1) };
    }
    if buf.is_null() || len < s.len() + 1 {
        return Err((WebcalcStatus::BufferTooSmall, format!("buffer of {len} bytes, need {}", s.len() + 1)));
    }
    unsafe {
        ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
        buf.add(s.len()).write(0);
    }
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn webcalc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last error message of this thread into `buf`.
///
/// # Safety
/// `buf` must be valid for `len` bytes or null; `needed` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn webcalc_last_error(buf: *mut c_char, len: usize, needed: *mut usize) -> WebcalcStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match unsafe { copy_string(&msg, buf, len, needed) } {
        Ok(()) => WebcalcStatus::Ok,
        Err((s, _)) => s,
    }
}

/// Loads a builtin algebra (`trivial`, `cyclic(3)`, ...) or a JSON file path.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn webcalc_algebra_load(spec: *const c_char, out: *mut *mut WebcalcAlgebra) -> WebcalcStatus {
    guard(|| {
        let spec = unsafe { read_str(spec, "spec") }?;
        let pair = GoodPair::resolve(spec).map_err(|e| (WebcalcStatus::InvalidInput, e.to_string()))?;
        unsafe { write_out(out, Box::into_raw(Box::new(WebcalcAlgebra { pair }))) }
    })
}

/// Parses an algebra from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn webcalc_algebra_from_json(json: *const c_char, out: *mut *mut WebcalcAlgebra) -> WebcalcStatus {
    guard(|| {
        let text = unsafe { read_str(json, "json") }?;
        let pair = GoodPair::from_json_str(text).map_err(|e| (WebcalcStatus::InvalidInput, e.to_string()))?;
        unsafe { write_out(out, Box::into_raw(Box::new(WebcalcAlgebra { pair }))) }
    })
}

/// Releases an algebra handle. Null is ignored.
///
/// # Safety
/// `alg` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn webcalc_algebra_free(alg: *mut WebcalcAlgebra) {
    if !alg.is_null() {
        drop(unsafe { Box::from_raw(alg) });
    }
}

/// Graded dimension of the algebra.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn webcalc_algebra_dim(alg: *const WebcalcAlgebra, even: *mut usize, odd: *mut usize) -> WebcalcStatus {
    guard(|| {
        let (e, o) = unsafe { algebra(alg) }?.graded_dim();
        unsafe { write_out(even, e) }?;
        unsafe { write_out(odd, o) }
    })
}

/// Number of axiom violations (0 for a valid good pair).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn webcalc_algebra_validate(alg: *const WebcalcAlgebra, violations: *mut usize) -> WebcalcStatus {
    guard(|| {
        let v = unsafe { algebra(alg) }?.validate();
        if let Some(first) = v.first() {
            set_error(first.to_string());
        }
        unsafe { write_out(violations, v.len()) }
    })
}

/// Dimension of the Schur algebra of degree d on n strands.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn webcalc_schur_dim(alg: *const WebcalcAlgebra, n: usize, d: usize, out: *mut usize) -> WebcalcStatus {
    guard(|| {
        let dim = schur_dim(unsafe { algebra(alg) }?, n, d);
        unsafe { write_out(out, dim) }
    })
}

/// Runs one CLI subcommand (without the program name or `--algebra`) against
/// the algebra, e.g. `{"howe", "check", "--m", "1", "--n", "2", "--d", "2"}`.
/// A report is produced even when its verdict fails; in that case the status
/// is `AssertionFailed` and `*out` is still set.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn webcalc_run(
    alg: *const WebcalcAlgebra,
    argv: *const *const c_char,
    argc: usize,
    out: *mut *mut WebcalcReport,
) -> WebcalcStatus {
    guard(|| {
        let pair = unsafe { algebra(alg) }?;
        if argv.is_null() && argc > 0 {
            return Err((WebcalcStatus::NullPointer, "argv is null".into()));
        }
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            args.push(unsafe { read_str(*argv.add(i), "argument") }?.to_string());
        }
        let cmd = parse_command(args).map_err(|e| (WebcalcStatus::InvalidInput, e.to_string()))?;
        let report = execute(pair, &cmd).map_err(|e| match e {
            CliError::Input(m) => (WebcalcStatus::InvalidInput, m),
            CliError::Internal(m) => (WebcalcStatus::Internal, m),
        })?;
        let json = serde_json::to_string(&report.to_json(&pair.name, 0)).map_err(|e| (WebcalcStatus::Internal, e.to_string()))?;
        let passed = report.passed;
        let summary = report.summary.clone();
        unsafe { write_out(out, Box::into_raw(Box::new(WebcalcReport { report, json }))) }?;
        if passed {
            Ok(())
        } else {
            Err((WebcalcStatus::AssertionFailed, summary))
        }
    })
}

/// Whether every asserted verdict of the report holds (1) or not (0).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn webcalc_report_passed(rep: *const WebcalcReport, passed: *mut i32) -> WebcalcStatus {
    guard(|| {
        let r = unsafe { rep.as_ref() }.ok_or((WebcalcStatus::NullPointer, "report handle is null".into()))?;
        unsafe { write_out(passed, r.report.passed as i32) }
    })
}

/// Copies the JSON report into `buf`; call with a null buffer to query the size.
///
/// # Safety
/// `buf` must be valid for `len` bytes or null; `needed` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn webcalc_report_json(rep: *const WebcalcReport, buf: *mut c_char, len: usize, needed: *mut usize) -> WebcalcStatus {
    guard(|| {
        let r = unsafe { rep.as_ref() }.ok_or((WebcalcStatus::NullPointer, "report handle is null".into()))?;
        unsafe { copy_string(&r.json, buf, len, needed) }
    })
}

/// Copies the one-line summary into `buf`.
///
/// # Safety
/// As for [`webcalc_report_json`].
#[no_mangle]
pub unsafe extern "C" fn webcalc_report_summary(rep: *const WebcalcReport, buf: *mut c_char, len: usize, needed: *mut usize) -> WebcalcStatus {
    guard(|| {
        let r = unsafe { rep.as_ref() }.ok_or((WebcalcStatus::NullPointer, "report handle is null".into()))?;
        unsafe { copy_string(&r.report.summary, buf, len, needed) }
    })
}

/// Releases a report handle. Null is ignored.
///
/// # Safety
/// `rep` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn webcalc_report_free(rep: *mut WebcalcReport) {
    if !rep.is_null() {
        drop(unsafe { Box::from_raw(rep) });
    }
}
