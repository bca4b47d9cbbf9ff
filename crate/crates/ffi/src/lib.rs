//! C ABI over `sigma-artin`: opaque problem handles, status codes and
//! JSON reports. Strings returned by the library are freed with
//! `sa_string_free`; the last error message is kept per thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sigma_artin::graph::{validate_character, Character, DefiningGraph, InputDocument};
use sigma_artin::report::run_report;
use sigma_artin::sigma::{kernel_finiteness, sigma_membership, Answer, Flags};
use sigma_artin::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaStatus {
    Ok = 0,
    /// Null pointer or invalid argument.
    Usage = 1,
    /// Malformed or invalid input document.
    Validation = 2,
    /// An internal invariant failed.
    Internal = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaAnswer {
    In = 0,
    Out = 1,
    Unknown = 2,
}

/// A defining graph together with a character.
pub struct SaProblem {
    graph: DefiningGraph,
    character: Character,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: SaStatus, message: impl Into<String>) -> SaStatus {
    set_error(message.into());
    status
}

fn from_error(e: Error) -> SaStatus {
    let status = match e.exit_code() {
        2 => SaStatus::Validation,
        _ => SaStatus::Internal,
    };
    fail(status, e.to_string())
}

fn guard(body: impl FnOnce() -> SaStatus) -> SaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(SaStatus::Internal, "panic inside sigma-artin"),
    }
}

fn answer(a: Answer) -> SaAnswer {
    match a {
        Answer::In => SaAnswer::In,
        Answer::Out => SaAnswer::Out,
        Answer::Unknown => SaAnswer::Unknown,
    }
}

fn parse_problem(text: &str) -> sigma_artin::Result<SaProblem> {
    let doc = InputDocument::parse(text)?;
    let graph = doc.graph()?;
    let raw = doc.raw_character()?.ok_or_else(|| Error::Validation("document has no `character` field".into()))?;
    let character = validate_character(&graph, &raw)?;
    Ok(SaProblem { graph, character })
}

/// Parse a JSON document with `vertices`, `edges` and `character`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sa_problem_from_json(json: *const c_char, out: *mut *mut SaProblem) -> SaStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return fail(SaStatus::Usage, "null argument");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return fail(SaStatus::Validation, "input is not UTF-8");
        };
        match parse_problem(text) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(p));
                SaStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Release a handle from `sa_problem_from_json`; null is ignored.
///
/// # Safety
/// `problem` must come from `sa_problem_from_json` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sa_problem_destroy(problem: *mut SaProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

unsafe fn verdict_with(
    problem: *const SaProblem,
    n: u32,
    assume_k_pi_1: bool,
    out: *mut SaAnswer,
    decide: fn(&DefiningGraph, &Character, usize, Flags) -> sigma_artin::Result<sigma_artin::sigma::SigmaVerdict>,
) -> SaStatus {
    guard(|| {
        if problem.is_null() || out.is_null() {
            return fail(SaStatus::Usage, "null argument");
        }
        let p = &*problem;
        let flags = Flags { assume_k_pi_1, ..Flags::for_graph(&p.graph) };
        match decide(&p.graph, &p.character, n as usize, flags) {
            Ok(v) => {
                *out = answer(v.answer);
                SaStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Membership of `[χ]` in the homological invariant `Σ^n(A_Γ, Z)`.
///
/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sa_sigma_verdict(
    problem: *const SaProblem,
    n: u32,
    assume_k_pi_1: bool,
    out: *mut SaAnswer,
) -> SaStatus {
    verdict_with(problem, n, assume_k_pi_1, out, sigma_membership)
}

/// Whether `ker χ` is of type `FP_n`.
///
/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sa_kernel_finiteness(
    problem: *const SaProblem,
    n: u32,
    assume_k_pi_1: bool,
    out: *mut SaAnswer,
) -> SaStatus {
    verdict_with(problem, n, assume_k_pi_1, out, kernel_finiteness)
}

/// Full report for degrees `1..=n_max` as a JSON string owned by the caller.
///
/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sa_report_json(problem: *const SaProblem, n_max: u32, out: *mut *mut c_char) -> SaStatus {
    guard(|| {
        if problem.is_null() || out.is_null() {
            return fail(SaStatus::Usage, "null argument");
        }
        *out = ptr::null_mut();
        let p = &*problem;
        let text = run_report(&p.graph, &p.character, n_max as usize, Flags::for_graph(&p.graph)).and_then(|r| r.to_json());
        match text {
            Ok(t) => match CString::new(t) {
                Ok(c) => {
                    *out = c.into_raw();
                    SaStatus::Ok
                }
                Err(_) => fail(SaStatus::Internal, "report contains NUL"),
            },
            Err(e) => from_error(e),
        }
    })
}

/// Release a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
