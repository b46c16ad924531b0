//! C ABI for `torsion8`.
//!
//! Curves live behind an opaque [`T8Curve`] handle created by
//! [`t8_curve_new`] and released by [`t8_curve_free`]. Points and complex
//! numbers are plain `repr(C)` values. Every fallible call returns a
//! [`T8Status`]; on failure [`t8_last_error_message`] describes the error
//! for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use torsion8::{cli, radicals, torsion, Complex64, Curve, Error, Point, Sign, Tolerance};

/// Default relative tolerance.
pub const T8_DEFAULT_TOLERANCE: f64 = 1e-9;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum T8Status {
    Ok = 0,
    VerificationFailed = 1,
    DegenerateCurve = 2,
    OffCurve = 3,
    ParseError = 4,
    InvalidBeta = 5,
    InconsistentAddends = 6,
    UnsupportedIndex = 7,
    NullPointer = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum T8Branch {
    Plus = 0,
    Minus = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct T8Complex {
    pub re: f64,
    pub im: f64,
}

/// A curve point; `x` and `y` are ignored when `is_infinity` is set.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct T8Point {
    pub is_infinity: bool,
    pub x: T8Complex,
    pub y: T8Complex,
}

/// Flattened order-8 verification report. Orders are 0 when none was found.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct T8Order8Report {
    pub beta: T8Complex,
    pub gamma: T8Complex,
    pub beta1: T8Complex,
    pub beta2: T8Complex,
    pub point: T8Point,
    /// `multiples[k - 1] = k * P` for `k = 1..=8`.
    pub multiples: [T8Point; 8],
    pub verified_order: u32,
    pub oracle_order: u32,
    pub four_p_is_e2: bool,
    pub oracle_confirms: bool,
    pub beta_assumption_met: bool,
}

/// Opaque curve handle.
pub struct T8Curve {
    inner: Curve,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn status_of(err: &Error) -> T8Status {
    match err {
        Error::DegenerateCurve(_) => T8Status::DegenerateCurve,
        Error::InvalidBeta(_) => T8Status::InvalidBeta,
        Error::OffCurve(_) => T8Status::OffCurve,
        Error::InconsistentAddends(_) => T8Status::InconsistentAddends,
        Error::UnsupportedIndex(_) => T8Status::UnsupportedIndex,
        Error::Parse(_) => T8Status::ParseError,
    }
}

/// Run `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), T8Status>) -> T8Status {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => T8Status::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal panic".into());
            T8Status::Panic
        }
    }
}

fn fail(err: Error) -> T8Status {
    let status = status_of(&err);
    set_last_error(err.to_string());
    status
}

fn null() -> T8Status {
    set_last_error("null pointer argument".into());
    T8Status::NullPointer
}

impl From<Complex64> for T8Complex {
    fn from(z: Complex64) -> Self {
        T8Complex { re: z.re, im: z.im }
    }
}

impl From<T8Complex> for Complex64 {
    fn from(z: T8Complex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Point> for T8Point {
    fn from(p: Point) -> Self {
        match p.coords() {
            None => T8Point {
                is_infinity: true,
                ..T8Point::default()
            },
            Some((x, y)) => T8Point {
                is_infinity: false,
                x: x.into(),
                y: y.into(),
            },
        }
    }
}

impl From<T8Point> for Point {
    fn from(p: T8Point) -> Self {
        if p.is_infinity {
            Point::Infinity
        } else {
            Point::affine(p.x.into(), p.y.into())
        }
    }
}

impl From<T8Branch> for Sign {
    fn from(b: T8Branch) -> Self {
        match b {
            T8Branch::Plus => Sign::Plus,
            T8Branch::Minus => Sign::Minus,
        }
    }
}

unsafe fn curve_ref<'a>(curve: *const T8Curve) -> Result<&'a Curve, T8Status> {
    curve.as_ref().map(|c| &c.inner).ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), T8Status> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn tolerance(rel: f64) -> Result<Tolerance, T8Status> {
    Tolerance::new(rel).map_err(fail)
}

/// Create a curve `y^2 = 4(x - e1)(x - e2)(x - e3)`. The handle written to
/// `out` must be released with `t8_curve_free`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn t8_curve_new(
    e1: T8Complex,
    e2: T8Complex,
    e3: T8Complex,
    out: *mut *mut T8Curve,
) -> T8Status {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let curve = Curve::new(e1.into(), e2.into(), e3.into()).map_err(fail)?;
        out.write(Box::into_raw(Box::new(T8Curve { inner: curve })));
        Ok(())
    })
}

/// Release a curve handle. Null is ignored.
///
/// # Safety
/// `curve` must come from `t8_curve_new` and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn t8_curve_free(curve: *mut T8Curve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Copy the three roots into `out[0..3]`.
///
/// # Safety
/// `curve` must be a live handle; `out` must point to three writable values.
#[no_mangle]
pub unsafe extern "C" fn t8_curve_roots(curve: *const T8Curve, out: *mut T8Complex) -> T8Status {
    guard(|| {
        let roots = curve_ref(curve)?.roots();
        if out.is_null() {
            return Err(null());
        }
        for (k, r) in roots.into_iter().enumerate() {
            out.add(k).write(r.into());
        }
        Ok(())
    })
}

/// Principal square root (cut on the negative reals, cut mapped upward).
#[no_mangle]
pub extern "C" fn t8_principal_sqrt(z: T8Complex) -> T8Complex {
    radicals::principal_sqrt(z.into()).into()
}

/// # Safety
/// `curve` must be a live handle; `beta` and `gamma` must be writable.
#[no_mangle]
pub unsafe extern "C" fn t8_beta_gamma(
    curve: *const T8Curve,
    beta: *mut T8Complex,
    gamma: *mut T8Complex,
) -> T8Status {
    guard(|| {
        let (b, g) = radicals::beta_gamma(curve_ref(curve)?).map_err(fail)?;
        write(beta, b.into())?;
        write(gamma, g.into())
    })
}

/// # Safety
/// `curve` must be a live handle; `p` readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn t8_contains(
    curve: *const T8Curve,
    p: *const T8Point,
    rel: f64,
    out: *mut bool,
) -> T8Status {
    guard(|| {
        let curve = curve_ref(curve)?;
        let p = p.as_ref().ok_or_else(null)?;
        write(out, curve.contains(&(*p).into(), tolerance(rel)?))
    })
}

/// `y = branch * sqrt(4(x - e1)(x - e2)(x - e3))`.
///
/// # Safety
/// `curve` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn t8_lift_x(
    curve: *const T8Curve,
    x: T8Complex,
    branch: T8Branch,
    out: *mut T8Point,
) -> T8Status {
    guard(|| {
        write(
            out,
            curve_ref(curve)?.lift_x(x.into(), branch.into()).into(),
        )
    })
}

/// # Safety
/// `curve` must be a live handle; `p`, `q` readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn t8_add(
    curve: *const T8Curve,
    p: *const T8Point,
    q: *const T8Point,
    rel: f64,
    out: *mut T8Point,
) -> T8Status {
    guard(|| {
        let curve = curve_ref(curve)?;
        let (p, q) = (p.as_ref().ok_or_else(null)?, q.as_ref().ok_or_else(null)?);
        let sum = curve
            .add(&(*p).into(), &(*q).into(), tolerance(rel)?)
            .map_err(fail)?;
        write(out, sum.into())
    })
}

/// # Safety
/// `curve` must be a live handle; `p` readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn t8_double(
    curve: *const T8Curve,
    p: *const T8Point,
    rel: f64,
    out: *mut T8Point,
) -> T8Status {
    guard(|| {
        let curve = curve_ref(curve)?;
        let p = p.as_ref().ok_or_else(null)?;
        write(
            out,
            curve
                .double(&(*p).into(), tolerance(rel)?)
                .map_err(fail)?
                .into(),
        )
    })
}

/// # Safety
/// `curve` must be a live handle; `p` readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn t8_multiply(
    curve: *const T8Curve,
    k: u64,
    p: *const T8Point,
    rel: f64,
    out: *mut T8Point,
) -> T8Status {
    guard(|| {
        let curve = curve_ref(curve)?;
        let p = p.as_ref().ok_or_else(null)?;
        write(
            out,
            curve
                .multiply(k, &(*p).into(), tolerance(rel)?)
                .map_err(fail)?
                .into(),
        )
    })
}

/// Smallest `n <= max_order` with `n * p` at infinity; writes 0 if none.
///
/// # Safety
/// `curve` must be a live handle; `p` readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn t8_order_of(
    curve: *const T8Curve,
    p: *const T8Point,
    max_order: u32,
    rel: f64,
    out: *mut u32,
) -> T8Status {
    guard(|| {
        let curve = curve_ref(curve)?;
        let p = p.as_ref().ok_or_else(null)?;
        let order = curve
            .order_of(&(*p).into(), max_order, tolerance(rel)?)
            .map_err(fail)?;
        write(out, order.unwrap_or(0))
    })
}

/// The constructed point of order 8.
///
/// # Safety
/// `curve` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn t8_order8_point(
    curve: *const T8Curve,
    branch: T8Branch,
    out: *mut T8Point,
) -> T8Status {
    guard(|| {
        let p = torsion::order8_point(curve_ref(curve)?, branch.into()).map_err(fail)?;
        write(out, p.into())
    })
}

/// Build and verify the order-8 point. Returns `T8_STATUS_VERIFICATION_FAILED`
/// (with the report still written) when the checks do not all pass.
///
/// # Safety
/// `curve` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn t8_verify_order8(
    curve: *const T8Curve,
    branch: T8Branch,
    rel: f64,
    out: *mut T8Order8Report,
) -> T8Status {
    guard(|| {
        let r = torsion::verify_order8(curve_ref(curve)?, branch.into(), tolerance(rel)?)
            .map_err(fail)?;
        let mut multiples = [T8Point::default(); 8];
        for (k, p) in &r.multiples {
            multiples[*k as usize - 1] = (*p).into();
        }
        write(
            out,
            T8Order8Report {
                beta: r.radicals.beta.into(),
                gamma: r.radicals.gamma.into(),
                beta1: r.radicals.beta1.into(),
                beta2: r.radicals.beta2.into(),
                point: r.point.into(),
                multiples,
                verified_order: r.verified_order.unwrap_or(0),
                oracle_order: r.oracle_order.unwrap_or(0),
                four_p_is_e2: r.four_p_is_e2,
                oracle_confirms: r.oracle_confirms,
                beta_assumption_met: r.beta_assumption_met,
            },
        )?;
        if r.passed() {
            Ok(())
        } else {
            set_last_error("order-8 verification failed".into());
            Err(T8Status::VerificationFailed)
        }
    })
}

/// JSON report of the worked example on `(i, 0, -i)`, the same text the
/// `example` command prints. Release with `t8_string_free`. `exit_code`, if
/// not null, receives the command's exit code.
///
/// # Safety
/// `exit_code` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn t8_example_json(exit_code: *mut i32) -> *mut c_char {
    let outcome = cli::cmd_example(&cli::Options::default());
    if let Some(code) = exit_code.as_mut() {
        *code = outcome.exit_code;
    }
    CString::new(outcome.render()).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn t8_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn t8_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
