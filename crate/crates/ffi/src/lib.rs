//! C interface to `folia-core`.
//!
//! Foliations and reduction transcripts are passed across the boundary as
//! opaque handles. Every fallible function returns a [`FoliaStatus`]; on
//! failure the message is available from [`folia_last_error`] on the same
//! thread. Strings returned to the caller are released with
//! [`folia_string_free`], handles with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use folia::birational::{pullback_quadratic, BuiltinMap, QuadraticMap};
use folia::io::parse::{parse_form, strip_comments, Params};
use folia::io::transcript::{
    parse_transcript, replay_transcript, singular_locus_json, to_json_string, transcript_json,
};
use folia::reducer::{reduce_partial, ReducerConfig, ReductionTranscript};
use folia::singular::singular_records;
use folia::{Error, ErrorKind, FoliationForm};

/// Result of a call. The nonzero codes below 6 agree with the exit codes of
/// the `folia` command.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoliaStatus {
    Ok = 0,
    /// Input text or JSON could not be parsed.
    Parse = 2,
    /// Input parsed but is not acceptable.
    Validation = 3,
    /// A computation gave up: degree ceiling, field extension needed.
    Abort = 4,
    /// An internal consistency check failed.
    Internal = 5,
    /// A required pointer argument was null.
    NullArgument = 6,
    /// A string argument was not UTF-8.
    InvalidUtf8 = 7,
    /// The library panicked; the handle arguments are left untouched.
    Panic = 8,
}

/// A foliation of the projective plane.
pub struct FoliaForm(FoliationForm);

/// The record of a reduction run, possibly partial.
pub struct FoliaTranscript(ReductionTranscript);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> FoliaStatus {
    match e.kind() {
        ErrorKind::Parse => FoliaStatus::Parse,
        ErrorKind::Validation => FoliaStatus::Validation,
        ErrorKind::Abort => FoliaStatus::Abort,
        ErrorKind::Internal => FoliaStatus::Internal,
    }
}

struct Failure(FoliaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null_argument(name: &str) -> Failure {
    Failure(FoliaStatus::NullArgument, format!("{name} is null"))
}

/// Runs `body`, turning errors and panics into a status and last-error text.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FoliaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            FoliaStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("panic inside folia");
            FoliaStatus::Panic
        }
    }
}

unsafe fn c_text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null_argument(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(FoliaStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null_argument(name))
}

unsafe fn write_out<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null_argument(name));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message of the last failed call on this thread, or an empty string after
/// a successful one. Valid until the next call on this thread; do not free.
#[no_mangle]
pub extern "C" fn folia_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn folia_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a form such as `"y dx - x dy + 0 dz"`; `#` starts a comment.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn folia_form_parse(text: *const c_char, out: *mut *mut FoliaForm) -> FoliaStatus {
    guard(|| {
        let t = strip_comments(c_text(text, "text")?);
        let form = parse_form(&t, &Params::new())?;
        write_out(out, boxed(FoliaForm(form)), "out")
    })
}

/// Releases a form. Null is ignored.
///
/// # Safety
/// `form` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn folia_form_free(form: *mut FoliaForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// # Safety
/// `form` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn folia_form_degree(form: *const FoliaForm, out: *mut u32) -> FoliaStatus {
    guard(|| write_out(out, handle(form, "form")?.0.degree(), "out"))
}

/// Writes the form in the syntax [`folia_form_parse`] accepts.
///
/// # Safety
/// `form` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn folia_form_render(form: *const FoliaForm, out: *mut *mut c_char) -> FoliaStatus {
    guard(|| write_out(out, c_string(handle(form, "form")?.0.to_string()), "out"))
}

/// Singular points with Milnor numbers and the Darboux check, as JSON.
///
/// # Safety
/// `form` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn folia_form_singular_json(
    form: *const FoliaForm,
    out: *mut *mut c_char,
) -> FoliaStatus {
    guard(|| {
        let f = &handle(form, "form")?.0;
        let doc = singular_locus_json(f, &singular_records(f)?);
        write_out(out, c_string(to_json_string(&doc)), "out")
    })
}

/// Pulls a form back by one of the quadratic maps `"phi"`, `"I1"`, `"I2"`.
/// When `factor_out` is not null it receives the polynomial factor removed
/// from the pulled-back coefficients.
///
/// # Safety
/// `form` must be a live handle, `map` a NUL-terminated string, `out`
/// writable and `factor_out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn folia_form_pullback(
    form: *const FoliaForm,
    map: *const c_char,
    out: *mut *mut FoliaForm,
    factor_out: *mut *mut c_char,
) -> FoliaStatus {
    guard(|| {
        let f = &handle(form, "form")?.0;
        let name = c_text(map, "map")?;
        let which = BuiltinMap::from_name(name).ok_or_else(|| Error::UnsupportedMap(name.into()))?;
        if out.is_null() {
            return Err(null_argument("out"));
        }
        let (g, factor) = pullback_quadratic(f, &QuadraticMap::builtin(which))?;
        if !factor_out.is_null() {
            factor_out.write(c_string(factor.to_string()));
        }
        write_out(out, boxed(FoliaForm(g)), "out")
    })
}

/// Reduces a form to one with at most one singular point. A
/// `degree_ceiling` of 0 selects the default. On [`FoliaStatus::Abort`] and
/// most other failures `out` still receives the steps completed so far;
/// it is left untouched only for null-argument errors and panics.
///
/// # Safety
/// `form` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn folia_reduce(
    form: *const FoliaForm,
    degree_ceiling: u32,
    out: *mut *mut FoliaTranscript,
) -> FoliaStatus {
    guard(|| {
        let f = &handle(form, "form")?.0;
        if out.is_null() {
            return Err(null_argument("out"));
        }
        let mut config = ReducerConfig::default();
        if degree_ceiling > 0 {
            config.degree_ceiling = degree_ceiling;
        }
        let (t, err) = reduce_partial(f, &config);
        out.write(boxed(FoliaTranscript(t)));
        err.map_or(Ok(()), |e| Err(e.into()))
    })
}

/// Releases a transcript. Null is ignored.
///
/// # Safety
/// `t` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn folia_transcript_free(t: *mut FoliaTranscript) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn folia_transcript_step_count(
    t: *const FoliaTranscript,
    out: *mut usize,
) -> FoliaStatus {
    guard(|| write_out(out, handle(t, "transcript")?.0.steps.len(), "out"))
}

/// A copy of the last form in the transcript.
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn folia_transcript_final_form(
    t: *const FoliaTranscript,
    out: *mut *mut FoliaForm,
) -> FoliaStatus {
    guard(|| {
        let f = handle(t, "transcript")?.0.final_form().clone();
        write_out(out, boxed(FoliaForm(f)), "out")
    })
}

/// The transcript as JSON, in the format `folia reduce --json` prints.
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn folia_transcript_json(
    t: *const FoliaTranscript,
    out: *mut *mut c_char,
) -> FoliaStatus {
    guard(|| {
        let doc = transcript_json(&handle(t, "transcript")?.0);
        write_out(out, c_string(to_json_string(&doc)), "out")
    })
}

/// Checks a JSON transcript by recomputing every step; on success `out`
/// receives the final form. `out` may be null to only check.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn folia_replay(json: *const c_char, out: *mut *mut FoliaForm) -> FoliaStatus {
    guard(|| {
        let doc = parse_transcript(c_text(json, "json")?)?;
        let form = replay_transcript(&doc)?;
        if !out.is_null() {
            out.write(boxed(FoliaForm(form)));
        }
        Ok(())
    })
}

/// Status code as a static string, e.g. `"validation"`.
#[no_mangle]
pub extern "C" fn folia_status_name(status: FoliaStatus) -> *const c_char {
    let s: &'static CStr = match status {
        FoliaStatus::Ok => c"ok",
        FoliaStatus::Parse => c"parse",
        FoliaStatus::Validation => c"validation",
        FoliaStatus::Abort => c"abort",
        FoliaStatus::Internal => c"internal",
        FoliaStatus::NullArgument => c"null argument",
        FoliaStatus::InvalidUtf8 => c"invalid utf-8",
        FoliaStatus::Panic => c"panic",
    };
    s.as_ptr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_exit_codes() {
        for (e, code) in [
            (Error::Json("x".into()), 2),
            (Error::ZeroForm, 3),
            (Error::ExtensionRequired("x".into()), 4),
            (Error::Invariant("x".into()), 5),
        ] {
            assert_eq!(status_of(&e) as i32, code);
            assert_eq!(e.exit_code(), code);
        }
    }

    #[test]
    fn panics_become_a_status() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, FoliaStatus::Panic);
        let msg = unsafe { CStr::from_ptr(folia_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "panic inside folia");
    }
}
