//! C interface to `dbrauer`.
//!
//! Objects are opaque heap handles released with their `_free` function.
//! Every fallible call returns a [`DbStatus`]; on failure the message is
//! available from [`dbrauer_last_error`] on the same thread. Strings
//! returned through `char **` out-parameters belong to the caller and are
//! released with [`dbrauer_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dbrauer::bm::legendre_check;
use dbrauer::brauer_local::{local_invariant, solve_one_minus_c};
use dbrauer::cartier::{bn_member, cartier, cartier_inverse};
use dbrauer::cli::eval::{eval_global_form, eval_local_form};
use dbrauer::cli::expr::parse;
use dbrauer::ff::Fq;
use dbrauer::global::residue_sum;
use dbrauer::series::{GlobalForm, LocalForm, EXACT};
use dbrauer::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidField = 4,
    FieldMismatch = 5,
    PrecisionLoss = 6,
    NotExact = 7,
    NotInBn = 8,
    LengthMismatch = 9,
    Unsupported = 10,
    DivisionByZero = 11,
    Invalid = 12,
    Panic = 13,
}

/// A finite field F_q.
pub struct DbField(Fq);

/// A truncated local form `f(t) dt` over F_q((t)).
pub struct DbLocalForm(LocalForm);

/// An exact global form `f(t) dt` over F_q(t).
pub struct DbGlobalForm(GlobalForm);

/// Outcome of the Legendre cocycle check.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct DbLegendreReport {
    pub relation: bool,
    pub identity: bool,
    pub epsilon: i32,
    pub series_agree: bool,
    pub series_window: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> DbStatus {
    match e {
        Error::InvalidField(_) | Error::NoEmbedding { .. } => DbStatus::InvalidField,
        Error::FieldMismatch | Error::RingMismatch => DbStatus::FieldMismatch,
        Error::PrecisionLoss(_) | Error::ExpansionFailure(_) => DbStatus::PrecisionLoss,
        Error::NotExact(_) => DbStatus::NotExact,
        Error::NotInBn(_) => DbStatus::NotInBn,
        Error::LengthMismatch(..) => DbStatus::LengthMismatch,
        Error::Unsupported(_) => DbStatus::Unsupported,
        Error::DivisionByZero | Error::ZeroG => DbStatus::DivisionByZero,
        Error::Invalid(_) | Error::RelationViolation { .. } => DbStatus::Invalid,
    }
}

struct Fail(DbStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            DbStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            DbStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(DbStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(DbStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn obj<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(DbStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(DbStatus::NullPointer, "null out-parameter".into()));
    }
    out.write(v);
    Ok(())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn parse_expr(src: &str) -> Result<dbrauer::cli::expr::Expr, Fail> {
    parse(src).map_err(|e| Fail(DbStatus::Parse, e.to_string()))
}

/// The message of the last failed call on this thread (empty after a
/// successful call). Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn dbrauer_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a field descriptor such as `gf(3)` or `gf(2,2,w^2+w+1)`.
///
/// # Safety
/// `descriptor` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_field_new(descriptor: *const c_char, out: *mut *mut DbField) -> DbStatus {
    guard(|| {
        let f = Fq::parse(text(descriptor)?)?;
        put(out, boxed(DbField(f)))
    })
}

/// # Safety
/// `field` must come from [`dbrauer_field_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_field_free(field: *mut DbField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// The characteristic p, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_field_characteristic(field: *const DbField) -> u32 {
    field.as_ref().map_or(0, |f| f.0.p())
}

/// The degree k of F_{p^k} over F_p, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_field_degree(field: *const DbField) -> u32 {
    field.as_ref().map_or(0, |f| f.0.k() as u32)
}

/// Parses a local form such as `"(t^-1 + 1) dt"`, truncating series input
/// at `prec`.
///
/// # Safety
/// `field` must be live, `src` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_local_form_parse(
    field: *const DbField,
    src: *const c_char,
    prec: i64,
    out: *mut *mut DbLocalForm,
) -> DbStatus {
    guard(|| {
        let f = obj(field)?.0;
        if prec < 1 {
            return Err(Fail(DbStatus::Invalid, "precision must be positive".into()));
        }
        let w = eval_local_form(&parse_expr(text(src)?)?, f, "t", prec)?;
        put(out, boxed(DbLocalForm(w)))
    })
}

/// # Safety
/// `form` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_local_form_free(form: *mut DbLocalForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// Renders a local form; release the result with [`dbrauer_string_free`].
///
/// # Safety
/// `form` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_local_form_to_string(form: *const DbLocalForm, out: *mut *mut c_char) -> DbStatus {
    guard(|| put(out, c_string(obj(form)?.0.to_string())))
}

/// The precision window `N` of a local form known modulo `t^N`, or -1
/// when it is exact.
///
/// # Safety
/// `form` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_local_form_window(form: *const DbLocalForm) -> i64 {
    match form.as_ref() {
        Some(w) if w.0.coeff().prec() != EXACT => w.0.coeff().prec(),
        _ => -1,
    }
}

/// `C(omega)`.
///
/// # Safety
/// `form` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_cartier(form: *const DbLocalForm, out: *mut *mut DbLocalForm) -> DbStatus {
    guard(|| {
        let c = cartier(&obj(form)?.0)?;
        put(out, boxed(DbLocalForm(c)))
    })
}

/// The representative `f^p t^(p-1) dt` of `C^-1(f dt)`.
///
/// # Safety
/// `form` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_cartier_inverse(form: *const DbLocalForm, out: *mut *mut DbLocalForm) -> DbStatus {
    guard(|| put(out, boxed(DbLocalForm(cartier_inverse(&obj(form)?.0)))))
}

/// Whether `C^n(omega) = 0`; `window` receives the certified precision
/// (-1 when exact).
///
/// # Safety
/// `form` must be live; `member` and `window` writable.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_bn_member(
    form: *const DbLocalForm,
    n: u32,
    member: *mut bool,
    window: *mut i64,
) -> DbStatus {
    guard(|| {
        let m = bn_member(&obj(form)?.0, n as usize)?;
        put(member, m.value)?;
        put(window, m.window.unwrap_or(-1))
    })
}

/// The local invariant `Tr Res(omega)` in `0..p`.
///
/// # Safety
/// `form` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_local_invariant(form: *const DbLocalForm, out: *mut u32) -> DbStatus {
    guard(|| put(out, local_invariant(&obj(form)?.0)?.value))
}

/// Solves `(1 - C) w = omega`. When no solution exists `*solvable` is
/// false and `*out` is set to null.
///
/// # Safety
/// `form` must be live; `solvable` and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_solve_one_minus_c(
    form: *const DbLocalForm,
    solvable: *mut bool,
    out: *mut *mut DbLocalForm,
) -> DbStatus {
    guard(|| {
        let s = solve_one_minus_c(&obj(form)?.0)?;
        put(solvable, s.is_some())?;
        put(out, s.map_or(ptr::null_mut(), |w| boxed(DbLocalForm(w))))
    })
}

/// Parses an exact global form such as `"dt/(t^2 - t)"`.
///
/// # Safety
/// `field` must be live, `src` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_global_form_parse(
    field: *const DbField,
    src: *const c_char,
    out: *mut *mut DbGlobalForm,
) -> DbStatus {
    guard(|| {
        let f = obj(field)?.0;
        let w = eval_global_form(&parse_expr(text(src)?)?, f)?;
        put(out, boxed(DbGlobalForm(w)))
    })
}

/// # Safety
/// `form` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_global_form_free(form: *mut DbGlobalForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// The sum over all places of the traced residues, rendered as an element
/// of the base field.
///
/// # Safety
/// `form` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_residue_sum(form: *const DbGlobalForm, out: *mut *mut c_char) -> DbStatus {
    guard(|| {
        let s = residue_sum(&obj(form)?.0)?;
        put(out, c_string(s.to_string()))
    })
}

/// Runs the Legendre cocycle check for a prime `p >= 5`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dbrauer_legendre_check(p: u32, out: *mut DbLegendreReport) -> DbStatus {
    guard(|| {
        let r = legendre_check(p)?;
        put(
            out,
            DbLegendreReport {
                relation: r.relation,
                identity: r.identity,
                epsilon: r.epsilon,
                series_agree: r.series_agree,
                series_window: r.series_window,
            },
        )
    })
}

/// Runs the command-line interface on `argv` (without the program name)
/// and captures its output. Returns the process exit code, or -1 when the
/// arguments are unusable.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `out` and `err` must be
/// writable (either may be null to discard that stream).
#[no_mangle]
pub unsafe extern "C" fn dbrauer_cli_run(
    argc: usize,
    argv: *const *const c_char,
    out: *mut *mut c_char,
    err: *mut *mut c_char,
) -> c_int {
    let mut args = vec!["dbrauer".to_string()];
    if argc > 0 && argv.is_null() {
        set_error("null argv");
        return -1;
    }
    for i in 0..argc {
        match text(*argv.add(i)) {
            Ok(s) => args.push(s.to_string()),
            Err(Fail(_, m)) => {
                set_error(&m);
                return -1;
            }
        }
    }
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = match catch_unwind(AssertUnwindSafe(|| dbrauer::cli::run_with(args, &mut o, &mut e))) {
        Ok(c) => c,
        Err(_) => {
            set_error("internal panic");
            return -1;
        }
    };
    if !out.is_null() {
        out.write(c_string(String::from_utf8_lossy(&o).into_owned()));
    }
    if !err.is_null() {
        err.write(c_string(String::from_utf8_lossy(&e).into_owned()));
    }
    set_error("");
    code
}
