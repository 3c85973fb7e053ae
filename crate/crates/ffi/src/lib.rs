//! C ABI over the `orbitfourier` engine.
//!
//! Formulas are returned as opaque `OfFormula` handles and released with
//! [`of_formula_free`]. Every fallible call returns an [`OfStatus`]; on a
//! non-`OK` status a message is available from [`of_last_error_message`] on
//! the same thread. Strings handed out by this library are owned by the caller
//! and must be released with [`of_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orbitfourier::cli::record::FormulaRecord;
use orbitfourier::cli::render;
use orbitfourier::formulas::{nilpotent_ft_direct, nilpotent_ft_oracle, ComponentFormula};
use orbitfourier::levi::{orbit_of_levi, LeviClass};
use orbitfourier::rootdata::make_cartan;
use orbitfourier::Error;

/// Status codes. `OK` is zero; everything else is an error.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    BoundExceeded = 4,
    Parse = 5,
    Internal = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OfEngine {
    Direct = 0,
    Oracle = 1,
}

/// Opaque formula handle.
pub struct OfFormula {
    inner: ComponentFormula,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> OfStatus {
    match e {
        Error::Domain(_) | Error::Unsupported(_) => OfStatus::Domain,
        Error::BoundExceeded { .. } => OfStatus::BoundExceeded,
        Error::Parse(_) | Error::Json(_) => OfStatus::Parse,
        Error::InvariantBreach(_) | Error::Io(_) => OfStatus::Internal,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (OfStatus, String)>) -> OfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OfStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            OfStatus::Panic
        }
    }
}

fn lift(e: Error) -> (OfStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (OfStatus, String) {
    (OfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_class(blocks: *const usize, len: usize) -> Result<LeviClass, (OfStatus, String)> {
    if blocks.is_null() {
        return Err(null("blocks"));
    }
    if len == 0 {
        return Err((OfStatus::InvalidArgument, "a Levi class needs at least one block".into()));
    }
    let v = std::slice::from_raw_parts(blocks, len).to_vec();
    LeviClass::new(v).map_err(lift)
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (OfStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (OfStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn hand_out(s: String, out: *mut *mut c_char) -> Result<(), (OfStatus, String)> {
    let c = CString::new(s).map_err(|_| (OfStatus::Internal, "interior NUL in output".to_string()))?;
    // SAFETY: callers check `out` for null before reaching here.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Computes the Fourier transform of the nilpotent orbit induced from the
/// Levi class `blocks[0..n_blocks]` on a component of the Cartan `h_cartan`.
///
/// `component` is a selector such as `"real-order=3,1,2 pair-signs=+"` with
/// 1-based coordinates; null or an empty string selects the standard
/// component. `engine` is an `OfEngine` value. On success `*out` receives a
/// new handle.
///
/// # Safety
/// `blocks` must point to `n_blocks` readable `size_t` values. `component`
/// must be null or a NUL-terminated string. `out` must be a valid pointer to
/// writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn of_nilpotent_ft(
    blocks: *const usize,
    n_blocks: usize,
    cartan: usize,
    component: *const c_char,
    engine: u32,
    out: *mut *mut OfFormula,
) -> OfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let class = read_class(blocks, n_blocks)?;
        let n = class.n();
        if n > orbitfourier::DEFAULT_N_BOUND {
            return Err(lift(Error::BoundExceeded { n, bound: orbitfourier::DEFAULT_N_BOUND }));
        }
        let c = make_cartan(n, cartan).map_err(lift)?;
        let sel = if component.is_null() { "" } else { read_str(component, "component")? };
        let comp = orbitfourier::cli::parse_component(&c, sel).map_err(lift)?;
        let f = match engine {
            e if e == OfEngine::Direct as u32 => nilpotent_ft_direct(&class, &comp),
            e if e == OfEngine::Oracle as u32 => nilpotent_ft_oracle(&class, &comp),
            e => return Err((OfStatus::InvalidArgument, format!("unknown engine {e}"))),
        }
        .map_err(lift)?;
        *out = Box::into_raw(Box::new(OfFormula { inner: f }));
        Ok(())
    })
}

/// Parses a formula record from JSON, validating it fully.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn of_formula_from_json(json: *const c_char, out: *mut *mut OfFormula) -> OfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let s = read_str(json, "json")?;
        let f = FormulaRecord::from_json(s).and_then(|r| r.to_formula()).map_err(lift)?;
        *out = Box::into_raw(Box::new(OfFormula { inner: f }));
        Ok(())
    })
}

unsafe fn render_with(
    f: *const OfFormula,
    out: *mut *mut c_char,
    render: impl FnOnce(&ComponentFormula) -> String,
) -> OfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let f = f.as_ref().ok_or_else(|| null("formula"))?;
        hand_out(render(&f.inner), out)
    })
}

/// Serializes the formula as a JSON record. Release `*out` with
/// [`of_string_free`].
///
/// # Safety
/// `f` must be a live handle or null; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn of_formula_to_json(f: *const OfFormula, out: *mut *mut c_char) -> OfStatus {
    render_with(f, out, |f| FormulaRecord::from_formula(f, None).to_json())
}

/// LaTeX rendering of the formula.
///
/// # Safety
/// As for [`of_formula_to_json`].
#[no_mangle]
pub unsafe extern "C" fn of_formula_to_latex(f: *const OfFormula, out: *mut *mut c_char) -> OfStatus {
    render_with(f, out, render::formula_latex)
}

/// Plain text rendering of the formula.
///
/// # Safety
/// As for [`of_formula_to_json`].
#[no_mangle]
pub unsafe extern "C" fn of_formula_to_text(f: *const OfFormula, out: *mut *mut c_char) -> OfStatus {
    render_with(f, out, render::formula_text)
}

/// 1 if the transform vanishes on the component, 0 if not, -1 for a null
/// handle.
///
/// # Safety
/// `f` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn of_formula_is_zero(f: *const OfFormula) -> i32 {
    match f.as_ref() {
        Some(f) => f.inner.is_zero() as i32,
        None => -1,
    }
}

/// Evaluates numerator and denominator at a rational point given as
/// numerator/denominator arrays of length `n`, writing the value of the
/// quotient as a double. Fails if the point is singular.
///
/// # Safety
/// `f` must be a live handle; `num` and `den` must each point to `n`
/// readable `int64_t`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn of_formula_eval(
    f: *const OfFormula,
    num: *const i64,
    den: *const i64,
    n: usize,
    out: *mut f64,
) -> OfStatus {
    use num_traits::{ToPrimitive, Zero};
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = f.as_ref().ok_or_else(|| null("formula"))?;
        if num.is_null() || den.is_null() {
            return Err(null("point"));
        }
        if n != f.inner.n() {
            return Err((OfStatus::InvalidArgument, format!("point has {n} coordinates, expected {}", f.inner.n())));
        }
        let num = std::slice::from_raw_parts(num, n);
        let den = std::slice::from_raw_parts(den, n);
        let mut x = Vec::with_capacity(n);
        for (&a, &b) in num.iter().zip(den) {
            if b == 0 {
                return Err((OfStatus::InvalidArgument, "zero denominator in point".into()));
            }
            x.push(orbitfourier::symalg::frac(a, b));
        }
        let d = f.inner.denominator().eval(&x);
        if d.is_zero() {
            return Err((OfStatus::Domain, "point is singular".into()));
        }
        let v = f.inner.numerator.eval(&x) / d;
        *out = v.to_f64().unwrap_or(f64::NAN);
        Ok(())
    })
}

/// Dimension of the nilpotent orbit induced from the Levi class.
///
/// # Safety
/// `blocks` must point to `n_blocks` readable values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn of_orbit_dim(blocks: *const usize, n_blocks: usize, out: *mut usize) -> OfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let class = read_class(blocks, n_blocks)?;
        *out = orbit_of_levi(&class).dim;
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `f` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn of_formula_free(f: *mut OfFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn of_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn of_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn of_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
