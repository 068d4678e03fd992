//! C interface to `igband`.
//!
//! Bands are passed around as opaque `IgBand` handles created by
//! [`igband_parse`] or [`igband_bundled`] and released with
//! [`igband_free`]. Every fallible call returns an [`IgStatus`]; on failure
//! [`igband_last_error_message`] describes the error for the calling
//! thread. Strings handed out by the library are released with
//! [`igband_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use igband::decide::{equal, Verdict};
use igband::igword::anf;
use igband::rewrite::normal_form;
use igband::{Analysis, Band, Budget, GenWord};

/// A parsed band with its decomposition and classification.
pub struct IgBand {
    analysis: Analysis,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// The band text or name was rejected.
    InvalidBand = 3,
    /// A word named an unknown letter or was empty.
    InvalidWord = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IgVerdict {
    Equal = 0,
    NotEqual = 1,
    /// The search budget ran out.
    Inconclusive = 2,
}

/// Structural properties of a band.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IgClassification {
    pub size: usize,
    pub num_classes: usize,
    pub is_semilattice: bool,
    pub is_rectangular: bool,
    pub is_chain: bool,
    pub is_normal: bool,
    pub is_regular_band: bool,
    pub is_locally_large: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).unwrap()));
}

fn fail(status: IgStatus, msg: impl Into<String>) -> IgStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning a panic into [`IgStatus::Panic`].
fn guard(f: impl FnOnce() -> IgStatus) -> IgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(IgStatus::Panic, msg)
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, IgStatus> {
    if p.is_null() {
        return Err(fail(IgStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| fail(IgStatus::InvalidUtf8, e.to_string()))
}

unsafe fn band_arg<'a>(b: *const IgBand) -> Result<&'a Analysis, IgStatus> {
    b.as_ref()
        .map(|b| &b.analysis)
        .ok_or_else(|| fail(IgStatus::NullPointer, "null band handle"))
}

fn word_arg(a: &Analysis, text: &str) -> Result<GenWord, IgStatus> {
    a.word(text)
        .map_err(|e| fail(IgStatus::InvalidWord, e.to_string()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> IgStatus {
    if out.is_null() {
        return fail(IgStatus::NullPointer, "null output pointer");
    }
    *out = CString::new(s).unwrap().into_raw();
    IgStatus::Ok
}

unsafe fn put_band(out: *mut *mut IgBand, band: Result<Band, String>) -> IgStatus {
    if out.is_null() {
        return fail(IgStatus::NullPointer, "null output pointer");
    }
    *out = ptr::null_mut();
    let analysis = match band.and_then(|b| Analysis::new(b).map_err(|e| e.to_string())) {
        Ok(a) => a,
        Err(e) => return fail(IgStatus::InvalidBand, e),
    };
    *out = Box::into_raw(Box::new(IgBand { analysis }));
    IgStatus::Ok
}

/// Parses a band from Cayley-table text into `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn igband_parse(text: *const c_char, out: *mut *mut IgBand) -> IgStatus {
    guard(|| match str_arg(text) {
        Ok(t) => put_band(out, Band::parse(t).map_err(|e| e.to_string())),
        Err(s) => s,
    })
}

/// Loads one of the bands shipped with the library by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn igband_bundled(name: *const c_char, out: *mut *mut IgBand) -> IgStatus {
    guard(|| match str_arg(name) {
        Ok(n) => put_band(
            out,
            igband::bundled::band(n).ok_or_else(|| format!("no bundled band `{n}`")),
        ),
        Err(s) => s,
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `band` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn igband_free(band: *mut IgBand) {
    if !band.is_null() {
        drop(Box::from_raw(band));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `band` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn igband_size(band: *const IgBand) -> usize {
    band.as_ref().map_or(0, |b| b.analysis.band().len())
}

/// # Safety
/// `band` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn igband_classify(
    band: *const IgBand,
    out: *mut IgClassification,
) -> IgStatus {
    guard(|| {
        let a = match band_arg(band) {
            Ok(a) => a,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(IgStatus::NullPointer, "null output pointer");
        }
        let c = a.classification();
        *out = IgClassification {
            size: a.band().len(),
            num_classes: a.decomposition().num_classes(),
            is_semilattice: c.is_semilattice,
            is_rectangular: c.is_rectangular,
            is_chain: c.is_chain,
            is_normal: c.is_normal,
            is_regular_band: c.is_regular_band,
            is_locally_large: c.is_locally_large,
        };
        IgStatus::Ok
    })
}

/// Normal form of `word` (space-separated element names) under leftmost
/// contraction, as a new string in `*out`.
///
/// # Safety
/// `band` must be a live handle, `word` a NUL-terminated string and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn igband_normal_form(
    band: *const IgBand,
    word: *const c_char,
    out: *mut *mut c_char,
) -> IgStatus {
    guard(|| {
        let run = || -> Result<String, IgStatus> {
            let a = band_arg(band)?;
            let w = word_arg(a, str_arg(word)?)?;
            Ok(normal_form(a.band(), &w).0.render(a.band()))
        };
        match run() {
            Ok(s) => put_string(out, s),
            Err(s) => s,
        }
    })
}

/// Almost normal form of `word`, blocks separated by `|`.
///
/// # Safety
/// As for [`igband_normal_form`].
#[no_mangle]
pub unsafe extern "C" fn igband_anf(
    band: *const IgBand,
    word: *const c_char,
    out: *mut *mut c_char,
) -> IgStatus {
    guard(|| {
        let run = || -> Result<String, IgStatus> {
            let a = band_arg(band)?;
            let w = word_arg(a, str_arg(word)?)?;
            Ok(anf(a, &w).0.render(a))
        };
        match run() {
            Ok(s) => put_string(out, s),
            Err(s) => s,
        }
    })
}

/// Decides whether two words are equal in `IG(B)`.
///
/// `max_len` of 0 means the longest input plus four. When `certificate`
/// is non-null it receives the derivation text for an equal verdict and
/// null otherwise.
///
/// # Safety
/// `band` must be a live handle, the words NUL-terminated strings,
/// `verdict` a valid pointer and `certificate` null or valid.
#[no_mangle]
pub unsafe extern "C" fn igband_equal(
    band: *const IgBand,
    word1: *const c_char,
    word2: *const c_char,
    max_len: usize,
    max_states: usize,
    verdict: *mut IgVerdict,
    certificate: *mut *mut c_char,
) -> IgStatus {
    guard(|| {
        let run = || -> Result<(IgVerdict, Option<String>), IgStatus> {
            let a = band_arg(band)?;
            let w1 = word_arg(a, str_arg(word1)?)?;
            let w2 = word_arg(a, str_arg(word2)?)?;
            let budget = Budget {
                max_len: (max_len > 0).then_some(max_len),
                max_states,
            };
            let v = equal(a, &w1, &w2, budget);
            let kind = match v.verdict {
                Verdict::Equal => IgVerdict::Equal,
                Verdict::NotEqual => IgVerdict::NotEqual,
                Verdict::Inconclusive => IgVerdict::Inconclusive,
            };
            Ok((kind, v.certificate().map(|c| c.to_text(a.band()))))
        };
        if verdict.is_null() {
            return fail(IgStatus::NullPointer, "null verdict pointer");
        }
        match run() {
            Ok((kind, cert)) => {
                *verdict = kind;
                if !certificate.is_null() {
                    *certificate =
                        cert.map_or(ptr::null_mut(), |c| CString::new(c).unwrap().into_raw());
                }
                IgStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn igband_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failed call on this thread, or null. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn igband_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
