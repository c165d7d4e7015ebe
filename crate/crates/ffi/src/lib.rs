//! C ABI over the `s1fix` library.
//!
//! Every fallible function returns an [`S1fixStatus`] and writes its result
//! through an out pointer. On failure a message is available from
//! [`s1fix_last_error`] on the calling thread. Strings returned through out
//! pointers are owned by the caller and released with [`s1fix_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::{json, Value};

use s1fix::classify::{enumerate_fixed_types, Axioms, FixedSetType};
use s1fix::degree::{bidegree, BidegreeOptions, MapDescriptor};
use s1fix::dsl;
use s1fix::equivariant::{self, ActionExpr};
use s1fix::space::SpaceExpr;
use s1fix::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum S1fixStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Violation = 5,
    Numeric = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum S1fixMapFamily {
    /// `(x, y) ↦ y − 2⟨x, y⟩x` on `S^{n-1} × S^{n-1}`, `n ∈ {2, 4, 8}`.
    Phi = 0,
    /// Unit multiplication of complex numbers, quaternions or octonions;
    /// `n` is the algebra dimension.
    Multiplication = 1,
}

/// Parsed space expression.
pub struct S1fixSpace(SpaceExpr);

/// Parsed circle-action expression.
pub struct S1fixAction(ActionExpr);

struct Failure {
    status: S1fixStatus,
    message: String,
}

impl Failure {
    fn new(status: S1fixStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => S1fixStatus::Parse,
            Error::Violation(_) => S1fixStatus::Violation,
            Error::Numeric(_) | Error::Nonlinear(_) => S1fixStatus::Numeric,
            _ => S1fixStatus::Domain,
        };
        Failure::new(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> S1fixStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    let failure = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => return S1fixStatus::Ok,
        Ok(Err(failure)) => failure,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            Failure::new(S1fixStatus::Panic, format!("panic: {msg}"))
        }
    };
    set_last_error(&failure.message);
    failure.status
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(
            S1fixStatus::NullArgument,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::new(S1fixStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(S1fixStatus::NullArgument, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(
            S1fixStatus::NullArgument,
            "output pointer is null",
        ));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure::new(S1fixStatus::Domain, e.to_string()))?;
    if out.is_null() {
        return Err(Failure::new(
            S1fixStatus::NullArgument,
            "output pointer is null",
        ));
    }
    out.write(c.into_raw());
    Ok(())
}

fn ranks_json(p: &s1fix::graded::PoincarePolynomial) -> Value {
    Value::Object(p.ranks().map(|(d, r)| (d.to_string(), json!(r))).collect())
}

/// Message for the last failed call on this thread, or NULL after a
/// successful call. The pointer stays valid until the next call into this
/// library on the same thread.
#[no_mangle]
pub extern "C" fn s1fix_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn s1fix_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn s1fix_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a space expression such as `wedge(S(2), P(2, 3))`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn s1fix_space_parse(
    text: *const c_char,
    out: *mut *mut S1fixSpace,
) -> S1fixStatus {
    guard(|| {
        let e = dsl::parse_space(read_str(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(S1fixSpace(e))))
    })
}

/// # Safety
/// `space` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn s1fix_space_free(space: *mut S1fixSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Canonical text form of a space.
///
/// # Safety
/// `space` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn s1fix_space_to_string(
    space: *const S1fixSpace,
    out: *mut *mut c_char,
) -> S1fixStatus {
    guard(|| write_string(out, deref(space, "space")?.0.to_string()))
}

/// # Safety
/// `space` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn s1fix_space_euler_char(
    space: *const S1fixSpace,
    out: *mut i64,
) -> S1fixStatus {
    guard(|| {
        let p = deref(space, "space")?.0.eval_poincare()?;
        write_out(out, p.euler_char()?)
    })
}

/// Sum of the rational Betti numbers.
///
/// # Safety
/// `space` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn s1fix_space_total_rank(
    space: *const S1fixSpace,
    out: *mut u64,
) -> S1fixStatus {
    guard(|| {
        let p = deref(space, "space")?.0.eval_poincare()?;
        write_out(out, p.total_rank())
    })
}

/// Betti numbers as a JSON object keyed by degree, e.g. `{"0":1,"2":1}`.
///
/// # Safety
/// `space` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn s1fix_space_ranks_json(
    space: *const S1fixSpace,
    out: *mut *mut c_char,
) -> S1fixStatus {
    guard(|| {
        let p = deref(space, "space")?.0.eval_poincare()?;
        write_string(out, ranks_json(&p).to_string())
    })
}

/// Parses an action expression such as `suspA(rotfree(3))`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn s1fix_action_parse(
    text: *const c_char,
    out: *mut *mut S1fixAction,
) -> S1fixStatus {
    guard(|| {
        let a = dsl::parse_action(read_str(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(S1fixAction(a))))
    })
}

/// # Safety
/// `action` must be NULL or a handle from this library that has not been
/// freed.
#[no_mangle]
pub unsafe extern "C" fn s1fix_action_free(action: *mut S1fixAction) {
    if !action.is_null() {
        drop(Box::from_raw(action));
    }
}

/// Space the action lives on, as a new handle.
///
/// # Safety
/// `action` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn s1fix_action_total_space(
    action: *const S1fixAction,
    out: *mut *mut S1fixSpace,
) -> S1fixStatus {
    guard(|| {
        let t = equivariant::total_space(&deref(action, "action")?.0)?;
        write_out(out, Box::into_raw(Box::new(S1fixSpace(t))))
    })
}

/// Fixed-point set of the action, as a new handle.
///
/// # Safety
/// `action` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn s1fix_action_fixed_set(
    action: *const S1fixAction,
    out: *mut *mut S1fixSpace,
) -> S1fixStatus {
    guard(|| {
        let f = equivariant::fixed_set(&deref(action, "action")?.0)?;
        write_out(out, Box::into_raw(Box::new(S1fixSpace(f))))
    })
}

/// Fixed-set report as JSON. Returns `S1FIX_STATUS_VIOLATION` when the rank
/// or Euler characteristic checks fail.
///
/// # Safety
/// `action` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn s1fix_action_report_json(
    action: *const S1fixAction,
    out: *mut *mut c_char,
) -> S1fixStatus {
    guard(|| {
        let r = equivariant::report(&deref(action, "action")?.0)?;
        let doc = serde_json::to_string(&r)
            .map_err(|e| Failure::new(S1fixStatus::Domain, e.to_string()))?;
        write_string(out, doc)
    })
}

/// Component type of the fixed set, e.g. `pt ⊔ P2(2)`.
///
/// # Safety
/// `action` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn s1fix_action_fixed_type(
    action: *const S1fixAction,
    out: *mut *mut c_char,
) -> S1fixStatus {
    guard(|| {
        let f = equivariant::fixed_set(&deref(action, "action")?.0)?;
        write_string(out, FixedSetType::from_space(&f)?.to_string())
    })
}

/// Admissible fixed-set types for actions on a Toda space with parameter
/// `n`, as a JSON array of strings, using the default P2 constraints.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn s1fix_classify_json(
    n: u32,
    tnhz: bool,
    out: *mut *mut c_char,
) -> S1fixStatus {
    guard(|| {
        if n == 0 {
            return Err(Failure::new(S1fixStatus::Domain, "n must be positive"));
        }
        let cases: Vec<String> = enumerate_fixed_types(n, tnhz, &Axioms::default())
            .iter()
            .map(ToString::to_string)
            .collect();
        write_string(out, json!(cases).to_string())
    })
}

/// Bidegree of a sphere map. For `Phi` with `n = 4` or `8` the first entry is
/// a Monte Carlo estimate using `samples` points per slice and `seed`.
///
/// # Safety
/// `alpha` and `beta` must be writable pointers.
#[no_mangle]
pub unsafe extern "C" fn s1fix_bidegree(
    family: S1fixMapFamily,
    n: u32,
    samples: u64,
    seed: u64,
    alpha: *mut i64,
    beta: *mut i64,
) -> S1fixStatus {
    guard(|| {
        if alpha.is_null() || beta.is_null() {
            return Err(Failure::new(
                S1fixStatus::NullArgument,
                "output pointer is null",
            ));
        }
        let map = match family {
            S1fixMapFamily::Phi => MapDescriptor::phi(n as usize)?,
            S1fixMapFamily::Multiplication => {
                let level = match n {
                    2 => 1,
                    4 => 2,
                    8 => 3,
                    _ => {
                        return Err(Failure::new(
                            S1fixStatus::Domain,
                            format!("no normed division algebra of dimension {n}"),
                        ))
                    }
                };
                MapDescriptor::cayley(level)?
            }
        };
        let opts = BidegreeOptions {
            mc_samples: samples,
            seed,
            ..BidegreeOptions::default()
        };
        let r = bidegree(&map, &opts)?;
        write_out(alpha, r.bidegree.alpha)?;
        write_out(beta, r.bidegree.beta)
    })
}
