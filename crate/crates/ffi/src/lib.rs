//! C interface to `serialcob`.
//!
//! Objects are opaque heap handles released with their `*_free` function.
//! Every fallible call returns an [`ScStatus`] and writes results through out
//! pointers. After a failure, [`sc_last_error_message`] describes it on the
//! calling thread. Strings returned to C are owned by the caller and must be
//! released with [`sc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serialcob::cobordism::{Mode, SignSeq};
use serialcob::exactlinalg::format_scalar;
use serialcob::gligible::quotient;
use serialcob::recognition::{equivalent, hankel_rank_probe, is_symmetric, minimize, ProbeStatus};
use serialcob::series::{LinearRep, SeriesPair};
use serialcob::skein::{enumerate_matchings, SkeinCategory};
use serialcob::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    ExceededCap = 5,
    Panic = 6,
}

/// Which cobordism calculus to use: without or with floating endpoints.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScMode {
    C = 0,
    CTilde = 1,
}

impl From<ScMode> for Mode {
    fn from(m: ScMode) -> Mode {
        match m {
            ScMode::C => Mode::NoFloating,
            ScMode::CTilde => Mode::WithFloating,
        }
    }
}

/// A linear representation of a recognizable series.
pub struct ScRep(LinearRep);

/// An interval series together with a symmetric circle series.
pub struct ScPair(SeriesPair);

/// A skein category built from a pair.
pub struct ScCategory(SkeinCategory);

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

struct Failure(ScStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => ScStatus::ParseError,
            Error::ExceededCap(_) => ScStatus::ExceededCap,
            _ => ScStatus::ValidationError,
        };
        Failure(status, e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn guard(body: impl FnOnce() -> Outcome<()>) -> ScStatus {
    let result = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".into());
        Err(Failure(ScStatus::Panic, format!("internal panic: {msg}")))
    });
    match result {
        Ok(()) => {
            LAST_ERROR.with(|e| e.borrow_mut().take());
            ScStatus::Ok
        }
        Err(Failure(status, msg)) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
            status
        }
    }
}

fn null() -> Failure {
    Failure(ScStatus::NullPointer, "null pointer argument".into())
}

unsafe fn borrow<'a, T>(p: *const T) -> Outcome<&'a T> {
    p.as_ref().ok_or_else(null)
}

unsafe fn text<'a>(p: *const c_char) -> Outcome<&'a str> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(ScStatus::InvalidUtf8, e.to_string()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Outcome<()> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    // interior NULs cannot occur in JSON or scalar text
    CString::new(s).expect("no interior NUL").into_raw()
}

fn sign_seq(s: &str) -> Outcome<SignSeq> {
    Ok(SignSeq::parse(s)?)
}

/// Parses a representation from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_rep_from_json(json: *const c_char, out: *mut *mut ScRep) -> ScStatus {
    guard(|| {
        let v: serde_json::Value =
            serde_json::from_str(text(json)?).map_err(|e| Failure(ScStatus::ParseError, e.to_string()))?;
        let rep = LinearRep::from_json(&v)?;
        put(out, Box::into_raw(Box::new(ScRep(rep))))
    })
}

/// # Safety
/// `rep` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sc_rep_free(rep: *mut ScRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_rep_dim(rep: *const ScRep, out: *mut usize) -> ScStatus {
    guard(|| put(out, borrow(rep)?.0.dim()))
}

/// Evaluates on a word written as dot-separated letters (`"e"` for the
/// empty word). The value is returned as `"p/q"` or `"p"`.
///
/// # Safety
/// Pointers must be valid; the returned string is freed with [`sc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sc_rep_eval(rep: *const ScRep, word: *const c_char, out: *mut *mut c_char) -> ScStatus {
    guard(|| {
        let rep = &borrow(rep)?.0;
        let w = rep.alphabet().parse_word(text(word)?)?;
        put(out, c_string(format_scalar(&rep.eval(&w))))
    })
}

/// # Safety
/// Pointers must be valid; the new handle is freed with [`sc_rep_free`].
#[no_mangle]
pub unsafe extern "C" fn sc_rep_minimize(rep: *const ScRep, out: *mut *mut ScRep) -> ScStatus {
    guard(|| put(out, Box::into_raw(Box::new(ScRep(minimize(&borrow(rep)?.0))))))
}

/// # Safety
/// Pointers must be valid; the returned string is freed with [`sc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sc_rep_to_json(rep: *const ScRep, out: *mut *mut c_char) -> ScStatus {
    guard(|| put(out, c_string(borrow(rep)?.0.to_json().to_string())))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_rep_equivalent(a: *const ScRep, b: *const ScRep, out: *mut bool) -> ScStatus {
    guard(|| put(out, equivalent(&borrow(a)?.0, &borrow(b)?.0)?.equivalent))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_rep_is_symmetric(rep: *const ScRep, out: *mut bool) -> ScStatus {
    guard(|| put(out, is_symmetric(&borrow(rep)?.0).symmetric))
}

/// Builds a pair. Either series may be null and then stands for zero, but
/// not both. The circle series must be symmetric.
///
/// # Safety
/// Non-null pointers must be valid; the handle is freed with [`sc_pair_free`].
#[no_mangle]
pub unsafe extern "C" fn sc_pair_new(bullet: *const ScRep, circ: *const ScRep, out: *mut *mut ScPair) -> ScStatus {
    guard(|| {
        let (b, c) = (bullet.as_ref().map(|r| r.0.clone()), circ.as_ref().map(|r| r.0.clone()));
        let pair = match (b, c) {
            (None, None) => return Err(null()),
            (Some(b), None) => SeriesPair::new(b.clone(), LinearRep::zero(b.alphabet()))?,
            (None, Some(c)) => SeriesPair::circ_only(c)?,
            (Some(b), Some(c)) => SeriesPair::new(b, c)?,
        };
        put(out, Box::into_raw(Box::new(ScPair(pair))))
    })
}

/// # Safety
/// `pair` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sc_pair_free(pair: *mut ScPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Builds the skein category of a pair. Both series are Hankel-probed with
/// `cap` first, and `SC_STATUS_EXCEEDED_CAP` is returned if either does
/// not stabilize.
///
/// # Safety
/// Pointers must be valid; the handle is freed with [`sc_category_free`].
#[no_mangle]
pub unsafe extern "C" fn sc_category_new(
    pair: *const ScPair,
    mode: ScMode,
    cap: usize,
    out: *mut *mut ScCategory,
) -> ScStatus {
    guard(|| {
        let pair = borrow(pair)?.0.clone();
        for r in [&pair.bullet, &pair.circ] {
            if let ProbeStatus::ExceededCap(c) = hankel_rank_probe(r, cap).status {
                return Err(Error::ExceededCap(c).into());
            }
        }
        put(out, Box::into_raw(Box::new(ScCategory(SkeinCategory::new(pair, mode.into())))))
    })
}

/// # Safety
/// `cat` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sc_category_free(cat: *mut ScCategory) {
    if !cat.is_null() {
        drop(Box::from_raw(cat));
    }
}

/// The algebra dimension `d` and the one-sided dimensions `ell`, `r`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_category_dims(
    cat: *const ScCategory,
    d: *mut usize,
    ell: *mut usize,
    r: *mut usize,
) -> ScStatus {
    guard(|| {
        let data = &borrow(cat)?.0.data;
        put(d, data.d)?;
        put(ell, data.ell)?;
        put(r, data.r)
    })
}

/// Dimension of the skein hom space between two sign sequences such as `"+-"`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_category_hom_dim(
    cat: *const ScCategory,
    source: *const c_char,
    target: *const c_char,
    out: *mut u64,
) -> ScStatus {
    guard(|| {
        let cat = &borrow(cat)?.0;
        let dim = cat.hom_dim(&sign_seq(text(source)?)?, &sign_seq(text(target)?)?);
        let dim = u64::try_from(dim).map_err(|_| Failure(ScStatus::ValidationError, "dimension exceeds 64 bits".into()))?;
        put(out, dim)
    })
}

/// Dimension of the hom space modulo negligible morphisms.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_category_quotient_dim(
    cat: *const ScCategory,
    source: *const c_char,
    target: *const c_char,
    out: *mut usize,
) -> ScStatus {
    guard(|| {
        let cat = &borrow(cat)?.0;
        put(out, quotient(cat, &sign_seq(text(source)?)?, &sign_seq(text(target)?)?).dim())
    })
}

/// Number of undecorated diagram shapes between two sign sequences.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_matching_count(
    source: *const c_char,
    target: *const c_char,
    mode: ScMode,
    out: *mut usize,
) -> ScStatus {
    guard(|| {
        let n = enumerate_matchings(&sign_seq(text(source)?)?, &sign_seq(text(target)?)?, mode.into()).len();
        put(out, n)
    })
}

/// A copy of the last error message on this thread, or null if the last
/// call succeeded.
#[no_mangle]
pub extern "C" fn sc_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone().map_or(ptr::null_mut(), c_string))
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn sc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
