//! C ABI over `cpplab`.
//!
//! Every fallible call returns a [`CpplabStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and
//! can be fetched with [`cpplab_last_error_message`]. Field elements cross
//! the boundary as canonical indices in `[0, q)`.
//!
//! Handles are opaque; each `*_new` has a matching `*_free`. Strings handed
//! out by this library must be released with [`cpplab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cpplab::family::{Family, FamilyClass, FamilySpec};
use cpplab::verify::{verify_family, VerifyOptions, VerifyReport};
use cpplab::{Error, FieldCtx, FiniteField, Limits, ModulusVariant};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpplabStatus {
    Ok = 0,
    /// A verification ran and some assertion failed.
    VerifyFailed = 1,
    InvalidArgument = 2,
    NullPointer = 3,
    NotPrime = 4,
    HypothesisViolated = 5,
    UnsupportedSize = 6,
    NotInvertible = 7,
    DivisionByZero = 8,
    BufferTooSmall = 9,
    Internal = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpplabClass {
    C1 = 1,
    C2 = 2,
    C3 = 3,
}

/// Defining polynomial of the quadratic top layer.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpplabModulus {
    /// `X^2 + 1`
    X2Plus1 = 0,
    /// `X^2 + 2X + 2`
    X2Plus2XPlus2 = 1,
    /// `X^2 + X + 2`
    X2PlusXPlus2 = 2,
    /// `X^2 - c` for the first non-square `c` of the base field.
    Auto = 3,
}

/// The field `F_{p^{2m}}`.
pub struct CpplabField(FieldCtx);

/// A validated family instance.
pub struct CpplabFamily(Family);

/// Outcome of a verification sweep.
pub struct CpplabReport(VerifyReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> CpplabStatus {
    match e {
        Error::NotPrime(_) => CpplabStatus::NotPrime,
        Error::HypothesisViolated(_) | Error::InadmissibleCoefficient(_) => {
            CpplabStatus::HypothesisViolated
        }
        Error::UnsupportedSize(_) => CpplabStatus::UnsupportedSize,
        Error::NotInvertible { .. } => CpplabStatus::NotInvertible,
        Error::DivisionByZero | Error::ZeroGamma | Error::ZeroCoefficient => {
            CpplabStatus::DivisionByZero
        }
        Error::InternalInvariant(_) | Error::ReducibleModulus(_) => CpplabStatus::Internal,
        Error::BadDivisor { .. } | Error::InvalidArgument(_) => CpplabStatus::InvalidArgument,
    }
}

struct Fail(CpplabStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `body`, records any error or panic, and returns the status.
fn guard(body: impl FnOnce() -> Result<CpplabStatus, Fail>) -> CpplabStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            CpplabStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(CpplabStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(CpplabStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(CpplabStatus::Internal, "string contains NUL".into()))
}

fn modulus(m: CpplabModulus) -> ModulusVariant {
    match m {
        CpplabModulus::X2Plus1 => ModulusVariant::X2Plus1,
        CpplabModulus::X2Plus2XPlus2 => ModulusVariant::X2Plus2XPlus2,
        CpplabModulus::X2PlusXPlus2 => ModulusVariant::X2PlusXPlus2,
        CpplabModulus::Auto => ModulusVariant::Auto,
    }
}

fn element(field: &FieldCtx, idx: u64) -> Result<cpplab::FieldElem, Fail> {
    if idx >= field.q() {
        return Err(Fail(
            CpplabStatus::InvalidArgument,
            format!("index {idx} out of range for q = {}", field.q()),
        ));
    }
    Ok(FiniteField::element(field, idx))
}

/// Library version as a static NUL-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn cpplab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL if none.
/// Release with `cpplab_string_free`.
#[no_mangle]
pub extern "C" fn cpplab_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_deref() {
        Some(msg) => CString::new(msg.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cpplab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds `F_{p^{2m}}`. `max_q` caps exhaustive sweeps; 0 keeps the default.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn cpplab_field_new(
    p: u64,
    m: u32,
    top: CpplabModulus,
    max_q: u64,
    out: *mut *mut CpplabField,
) -> CpplabStatus {
    guard(|| {
        let limits = if max_q == 0 { Limits::default() } else { Limits::with_max_q(max_q) };
        let ctx = FieldCtx::with_limits(p, m, modulus(top), limits)?;
        write(out, Box::into_raw(Box::new(CpplabField(ctx))))?;
        Ok(CpplabStatus::Ok)
    })
}

/// # Safety
/// `field` must be NULL or a live handle from `cpplab_field_new`/`cpplab_family_field`.
#[no_mangle]
pub unsafe extern "C" fn cpplab_field_free(field: *mut CpplabField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Field order `q = p^{2m}`, or 0 for a NULL handle.
///
/// # Safety
/// `field` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cpplab_field_order(field: *const CpplabField) -> u64 {
    field.as_ref().map_or(0, |f| f.0.q())
}

#[derive(Clone, Copy)]
enum BinOp {
    Add,
    Sub,
    Mul,
}

unsafe fn binop(
    field: *const CpplabField,
    a: u64,
    b: u64,
    out: *mut u64,
    op: BinOp,
) -> CpplabStatus {
    guard(|| {
        let f = &deref(field, "field")?.0;
        let (x, y) = (element(f, a)?, element(f, b)?);
        let z = match op {
            BinOp::Add => f.add(x, y),
            BinOp::Sub => f.sub(x, y),
            BinOp::Mul => f.mul(x, y),
        };
        write(out, FiniteField::index(f, z))?;
        Ok(CpplabStatus::Ok)
    })
}

/// # Safety
/// `field` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cpplab_field_add(field: *const CpplabField, a: u64, b: u64, out: *mut u64) -> CpplabStatus {
    binop(field, a, b, out, BinOp::Add)
}

/// # Safety
/// `field` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cpplab_field_sub(field: *const CpplabField, a: u64, b: u64, out: *mut u64) -> CpplabStatus {
    binop(field, a, b, out, BinOp::Sub)
}

/// # Safety
/// `field` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cpplab_field_mul(field: *const CpplabField, a: u64, b: u64, out: *mut u64) -> CpplabStatus {
    binop(field, a, b, out, BinOp::Mul)
}

/// Inverse of a nonzero element.
///
/// # Safety
/// `field` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cpplab_field_inv(field: *const CpplabField, a: u64, out: *mut u64) -> CpplabStatus {
    guard(|| {
        let f = &deref(field, "field")?.0;
        let x = f.inv(element(f, a)?)?;
        write(out, FiniteField::index(f, x))?;
        Ok(CpplabStatus::Ok)
    })
}

/// # Safety
/// `field` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cpplab_field_pow(field: *const CpplabField, a: u64, e: u64, out: *mut u64) -> CpplabStatus {
    guard(|| {
        let f = &deref(field, "field")?.0;
        let x = f.pow_u64(element(f, a)?, e);
        write(out, FiniteField::index(f, x))?;
        Ok(CpplabStatus::Ok)
    })
}

/// Validates a family. Pass `s = 0` for C1 and C2.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn cpplab_family_new(
    class: CpplabClass,
    p: u64,
    m: u32,
    s: u64,
    top: CpplabModulus,
    out: *mut *mut CpplabFamily,
) -> CpplabStatus {
    guard(|| {
        let spec = FamilySpec {
            class: match class {
                CpplabClass::C1 => FamilyClass::C1,
                CpplabClass::C2 => FamilyClass::C2,
                CpplabClass::C3 => FamilyClass::C3,
            },
            p,
            m,
            s: (s != 0).then_some(s),
            modulus: modulus(top),
        };
        let family = spec.validate()?;
        write(out, Box::into_raw(Box::new(CpplabFamily(family))))?;
        Ok(CpplabStatus::Ok)
    })
}

/// # Safety
/// `family` must be NULL or a live handle from `cpplab_family_new`.
#[no_mangle]
pub unsafe extern "C" fn cpplab_family_free(family: *mut CpplabFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// The field a family lives in. Free with `cpplab_field_free`.
///
/// # Safety
/// `family` must be a live handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn cpplab_family_field(
    family: *const CpplabFamily,
    max_q: u64,
    out: *mut *mut CpplabField,
) -> CpplabStatus {
    guard(|| {
        let fam = &deref(family, "family")?.0;
        let limits = if max_q == 0 { Limits::default() } else { Limits::with_max_q(max_q) };
        let ctx = fam.context_with_limits(limits)?;
        write(out, Box::into_raw(Box::new(CpplabField(ctx))))?;
        Ok(CpplabStatus::Ok)
    })
}

/// Forward exponent `d` and inverse exponent `e` as decimal strings, and
/// whether `e` came from a closed form. Free both strings.
///
/// # Safety
/// `family` must be a live handle; the out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cpplab_family_exponents(
    family: *const CpplabFamily,
    d_out: *mut *mut c_char,
    e_out: *mut *mut c_char,
    closed_form_out: *mut bool,
) -> CpplabStatus {
    guard(|| {
        let fam = &deref(family, "family")?.0;
        if d_out.is_null() || e_out.is_null() || closed_form_out.is_null() {
            return Err(Fail(CpplabStatus::NullPointer, "output pointer is null".into()));
        }
        let inv = fam.inverse();
        let d = to_c_string(fam.d().to_string())?;
        let e = match to_c_string(inv.value.to_string()) {
            Ok(e) => e,
            Err(f) => {
                drop(CString::from_raw(d));
                return Err(f);
            }
        };
        write(d_out, d)?;
        write(e_out, e)?;
        write(closed_form_out, inv.path == cpplab::modring::InversePath::ClosedForm)?;
        Ok(CpplabStatus::Ok)
    })
}

/// Admissible coefficients as element indices, ascending.
///
/// `*len_out` always receives the full count. If `cap` is smaller the call
/// returns `BUFFER_TOO_SMALL` and writes nothing to `buf`; `buf` may be NULL
/// when `cap` is 0.
///
/// # Safety
/// `family` and `field` must be live handles; `buf` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn cpplab_family_admissible(
    family: *const CpplabFamily,
    field: *const CpplabField,
    buf: *mut u64,
    cap: usize,
    len_out: *mut usize,
) -> CpplabStatus {
    guard(|| {
        let fam = &deref(family, "family")?.0;
        let ctx = &deref(field, "field")?.0;
        let vs = fam.admissible_v(ctx)?;
        write(len_out, vs.len())?;
        if cap < vs.len() {
            return Err(Fail(
                CpplabStatus::BufferTooSmall,
                format!("need room for {} indices, got {cap}", vs.len()),
            ));
        }
        if buf.is_null() && !vs.is_empty() {
            return Err(Fail(CpplabStatus::NullPointer, "buffer is null".into()));
        }
        for (i, v) in vs.iter().enumerate() {
            buf.add(i).write(FiniteField::index(ctx, *v));
        }
        Ok(CpplabStatus::Ok)
    })
}

/// Sweeps every admissible coefficient. `field` may be NULL to build the
/// family's own field with default limits. Returns `VERIFY_FAILED` (with the
/// report still written) when any check fails.
///
/// # Safety
/// `family` must be a live handle, `field` NULL or live, `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cpplab_verify(
    family: *const CpplabFamily,
    field: *const CpplabField,
    workers: usize,
    scan: bool,
    out: *mut *mut CpplabReport,
) -> CpplabStatus {
    guard(|| {
        let fam = &deref(family, "family")?.0;
        let owned;
        let ctx = match field.as_ref() {
            Some(f) => &f.0,
            None => {
                owned = fam.context()?;
                &owned
            }
        };
        let opts = VerifyOptions {
            workers: workers.max(1),
            scan,
        };
        let report = verify_family(ctx, fam, &opts)?;
        let pass = report.all_pass;
        write(out, Box::into_raw(Box::new(CpplabReport(report))))?;
        if pass {
            Ok(CpplabStatus::Ok)
        } else {
            set_error("verification failed".into());
            Ok(CpplabStatus::VerifyFailed)
        }
    })
}

/// # Safety
/// `report` must be NULL or a live handle from `cpplab_verify`.
#[no_mangle]
pub unsafe extern "C" fn cpplab_report_free(report: *mut CpplabReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cpplab_report_all_pass(report: *const CpplabReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.all_pass)
}

/// Number of coefficients checked.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cpplab_report_count(report: *const CpplabReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.count)
}

/// The report as JSON. Free with `cpplab_string_free`.
///
/// # Safety
/// `report` must be a live handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn cpplab_report_json(report: *const CpplabReport, out: *mut *mut c_char) -> CpplabStatus {
    guard(|| {
        let r = &deref(report, "report")?.0;
        let json = serde_json::to_string(r).map_err(|e| Fail(CpplabStatus::Internal, e.to_string()))?;
        write(out, to_c_string(json)?)?;
        Ok(CpplabStatus::Ok)
    })
}
