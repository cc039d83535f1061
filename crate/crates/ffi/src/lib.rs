//! C ABI for `fagroup`.
//!
//! Every fallible function returns a [`FagStatus`] and writes its result
//! through an out-pointer. On failure a message is available from
//! [`fag_last_error`] on the same thread. Handles and strings returned by
//! this library must be released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fagroup::abelian::abelian_invariants_finite;
use fagroup::catalog::parse_group_spec;
use fagroup::covering::{is_fa_finite, is_nfa_finite, verify_finite_theorems, VerifyOptions};
use fagroup::presentation::classify::{analyze, classify_nfa, Hint, VerdictKind};
use fagroup::presentation::{parse_presentation, Presentation};
use fagroup::search::find_annihilator;
use fagroup::structure::{abelianisation, weight_bruteforce};
use fagroup::{Caps, Error, FiniteGroup};

/// Opaque finite group handle.
pub struct FagGroup {
    inner: FiniteGroup,
}

/// Opaque presentation handle.
pub struct FagPresentation {
    inner: Presentation,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FagStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    CapExceeded = 4,
    NotAGroup = 5,
    InvalidArgument = 6,
    Io = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FagVerdict {
    Fa = 0,
    NotFa = 1,
    Unknown = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FagStatus {
    match e {
        Error::Syntax { .. }
        | Error::UnknownGenerator { .. }
        | Error::EmptyGeneratorList
        | Error::Parse { .. }
        | Error::InvalidPermutation(_) => FagStatus::ParseError,
        Error::ClosureExceedsCap { .. }
        | Error::OrderCapExceeded { .. }
        | Error::SearchBudgetExceeded { .. } => FagStatus::CapExceeded,
        Error::NotAGroup(_) => FagStatus::NotAGroup,
        Error::Io(_) => FagStatus::Io,
        _ => FagStatus::InvalidArgument,
    }
}

/// Run `f`, recording any error or panic as the thread's last error.
fn guard<F>(f: F) -> FagStatus
where
    F: FnOnce() -> Result<(), (FagStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FagStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FagStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (FagStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (FagStatus, String) {
    (FagStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `p` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (FagStatus, String)> {
    if p.is_null() {
        return Err(null_err(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (FagStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be null or point to a live value of type `T`.
unsafe fn read_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (FagStatus, String)> {
    p.as_ref().ok_or_else(|| null_err(what))
}

/// # Safety
/// `out` must be null or writable.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (FagStatus, String)> {
    if out.is_null() {
        return Err(null_err("out"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fag_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Build a group from the spec mini-language, e.g. `"prod(C 2, S 3)"`.
///
/// # Safety
/// `spec` must be a valid nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fag_group_from_spec(spec: *const c_char, out: *mut *mut FagGroup) -> FagStatus {
    guard(|| {
        let spec = read_str(spec, "spec")?;
        let g = parse_group_spec(spec, Caps::default().order).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(FagGroup { inner: g })))
    })
}

/// Build a group from a row-major `n x n` Cayley table with identity 0. The
/// table is validated.
///
/// # Safety
/// `table` must point to `n * n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fag_group_from_cayley_table(
    table: *const u32,
    n: usize,
    out: *mut *mut FagGroup,
) -> FagStatus {
    guard(|| {
        if table.is_null() {
            return Err(null_err("table"));
        }
        let cells = n
            .checked_mul(n)
            .ok_or((FagStatus::InvalidArgument, "table too large".into()))?;
        let flat = std::slice::from_raw_parts(table, cells);
        let rows: Vec<Vec<usize>> = flat.chunks(n.max(1)).map(|r| r.iter().map(|&x| x as usize).collect()).collect();
        let g = FiniteGroup::from_cayley_table("table", &rows).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(FagGroup { inner: g })))
    })
}

/// # Safety
/// `g` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn fag_group_free(g: *mut FagGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fag_group_order(g: *const FagGroup, out: *mut usize) -> FagStatus {
    guard(|| write_out(out, read_ref(g, "group")?.inner.order()))
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fag_group_is_fa(g: *const FagGroup, out: *mut bool) -> FagStatus {
    guard(|| {
        let g = &read_ref(g, "group")?.inner;
        let r = is_fa_finite(g, &Caps::default()).map_err(lib_err)?;
        write_out(out, r.verdict)
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fag_group_is_nfa(g: *const FagGroup, n: usize, out: *mut bool) -> FagStatus {
    guard(|| {
        let g = &read_ref(g, "group")?.inner;
        if n == 0 {
            return Err((FagStatus::InvalidArgument, "n must be at least 1".into()));
        }
        let r = is_nfa_finite(g, n, &Caps::default()).map_err(lib_err)?;
        write_out(out, r.verdict)
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fag_group_weight(g: *const FagGroup, out: *mut usize) -> FagStatus {
    guard(|| {
        let g = &read_ref(g, "group")?.inner;
        write_out(out, weight_bruteforce(g, &Caps::default()).map_err(lib_err)?)
    })
}

/// Invariants of the abelianisation as JSON `{free_rank, factors}`. Free the
/// string with [`fag_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fag_group_invariants_json(g: *const FagGroup, out: *mut *mut c_char) -> FagStatus {
    guard(|| {
        let g = &read_ref(g, "group")?.inner;
        let inv = abelian_invariants_finite(&abelianisation(g)).map_err(lib_err)?;
        write_out(out, into_c_string(serde_json::to_string(&inv).expect("json")))
    })
}

/// Full cross-check report as JSON.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fag_group_verify_json(g: *const FagGroup, out: *mut *mut c_char) -> FagStatus {
    guard(|| {
        let g = &read_ref(g, "group")?.inner;
        let caps = Caps::default();
        let opts = VerifyOptions {
            weight: g.order() <= caps.weight,
            ..VerifyOptions::default()
        };
        let report = verify_finite_theorems(g, &caps, &opts).map_err(lib_err)?;
        write_out(out, into_c_string(serde_json::to_string(&report).expect("json")))
    })
}

/// # Safety
/// `text` must be a valid nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fag_presentation_parse(
    text: *const c_char,
    out: *mut *mut FagPresentation,
) -> FagStatus {
    guard(|| {
        let p = parse_presentation(read_str(text, "text")?).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(FagPresentation { inner: p })))
    })
}

/// # Safety
/// `p` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn fag_presentation_free(p: *mut FagPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `n`-F-A verdict (`n = 1` for F-A). `hint` may be null for no hint.
///
/// # Safety
/// `p` must be a live handle; `hint` null or a valid string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fag_presentation_classify(
    p: *const FagPresentation,
    hint: *const c_char,
    n: usize,
    out: *mut FagVerdict,
) -> FagStatus {
    guard(|| {
        let p = &read_ref(p, "presentation")?.inner;
        let hint = read_hint(hint)?;
        let v = classify_nfa(p, n, hint).map_err(lib_err)?;
        write_out(
            out,
            match v.verdict {
                VerdictKind::Fa => FagVerdict::Fa,
                VerdictKind::NotFa => FagVerdict::NotFa,
                VerdictKind::Unknown => FagVerdict::Unknown,
            },
        )
    })
}

/// # Safety
/// `hint` must be null or a valid nul-terminated string.
unsafe fn read_hint(hint: *const c_char) -> Result<Hint, (FagStatus, String)> {
    if hint.is_null() {
        return Ok(Hint::None);
    }
    read_str(hint, "hint")?.parse().map_err(lib_err)
}

/// Analysis (verdict, invariants, rule, reason) as JSON.
///
/// # Safety
/// `p` must be a live handle; `hint` null or a valid string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fag_presentation_analyze_json(
    p: *const FagPresentation,
    hint: *const c_char,
    n: usize,
    out: *mut *mut c_char,
) -> FagStatus {
    guard(|| {
        let p = &read_ref(p, "presentation")?.inner;
        let a = analyze(p, n, read_hint(hint)?).map_err(lib_err)?;
        write_out(out, into_c_string(serde_json::to_string(&a).expect("json")))
    })
}

/// Search for a finite quotient of order at most `bound` killing `word`.
/// Writes witness JSON, or null when there is none up to the bound.
///
/// # Safety
/// `p` must be a live handle; `word` a valid string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fag_find_annihilator_json(
    p: *const FagPresentation,
    word: *const c_char,
    bound: usize,
    out: *mut *mut c_char,
) -> FagStatus {
    guard(|| {
        let p = &read_ref(p, "presentation")?.inner;
        let w = p.parse_word(read_str(word, "word")?).map_err(lib_err)?;
        let found = find_annihilator(p, &w, bound, &Caps::default()).map_err(lib_err)?;
        write_out(
            out,
            found.map_or(ptr::null_mut(), |wit| into_c_string(wit.to_json().to_string())),
        )
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fag_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
