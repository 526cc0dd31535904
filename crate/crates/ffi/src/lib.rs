//! C ABI for the `qcoh` engine.
//!
//! Every fallible function returns a [`QcohStatus`] and writes its result through an
//! out-pointer. On failure the message is kept per thread and can be fetched with
//! [`qcoh_last_error`]. Strings returned by the library are owned by the caller and
//! must be released with [`qcoh_string_free`]; handles have their own `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qcoh::diffops::{apply_gauge, parse_operator, parse_relation, Mode, Symbols};
use qcoh::flat::{self, GaugeSeries};
use qcoh::quantum;
use qcoh::ModelSpec;

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcohStatus {
    Ok = 0,
    /// A null pointer, invalid UTF-8 or an out-of-range value was passed.
    InvalidArgument = 1,
    /// A model, operator or relation failed to parse or validate.
    Parse = 2,
    /// The request has no implementation for this input (e.g. no closed form).
    Unsupported = 3,
    /// The computation hit an inconsistency.
    Math = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

/// A validated ring model.
pub struct QcohModel {
    inner: ModelSpec,
}

/// A gauge-normalized J-function series for a model.
pub struct QcohJFunction {
    model: ModelSpec,
    series: GaugeSeries,
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

struct Failure(QcohStatus, String);

impl From<qcoh::Error> for Failure {
    fn from(e: qcoh::Error) -> Self {
        let status = match &e {
            qcoh::Error::Model(_) | qcoh::Error::Parse(_) | qcoh::Error::ParseLine { .. } => QcohStatus::Parse,
            qcoh::Error::UnknownModel(_) | qcoh::Error::Unsupported(_) => QcohStatus::Unsupported,
            qcoh::Error::Check(_) | qcoh::Error::Inconsistent { .. } | qcoh::Error::NonInvertible(_) => {
                QcohStatus::Math
            }
            _ => QcohStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<qcoh::ModelError> for Failure {
    fn from(e: qcoh::ModelError) -> Self {
        Failure(QcohStatus::Parse, e.to_string())
    }
}

impl From<qcoh::diffops::ParseError> for Failure {
    fn from(e: qcoh::diffops::ParseError) -> Self {
        Failure(QcohStatus::Parse, e.to_string())
    }
}

fn invalid(msg: &str) -> Failure {
    Failure(QcohStatus::InvalidArgument, msg.to_string())
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QcohStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QcohStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            QcohStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(&format!("{what} is not UTF-8")))
}

unsafe fn model_ref<'a>(p: *const QcohModel) -> Result<&'a ModelSpec, Failure> {
    p.as_ref().map(|m| &m.inner).ok_or_else(|| invalid("model handle is null"))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    out.write(v);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn qcoh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy of the calling thread's last error message, or null if the last call
/// succeeded. Free with [`qcoh_string_free`].
#[no_mangle]
pub extern "C" fn qcoh_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qcoh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Looks up a built-in model (`cp1`, `f3`, `sigma1`, `gr24`, any `cp<m>`).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_model_builtin(name: *const c_char, out: *mut *mut QcohModel) -> QcohStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let inner = qcoh::builtin_model(name)?;
        write_out(out, Box::into_raw(Box::new(QcohModel { inner })))
    })
}

/// Parses and validates a model document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_model_from_json(json: *const c_char, out: *mut *mut QcohModel) -> QcohStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let inner = qcoh::load_model(text)?;
        write_out(out, Box::into_raw(Box::new(QcohModel { inner })))
    })
}

/// # Safety
/// `model` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn qcoh_model_free(model: *mut QcohModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of basis elements, or 0 for a null handle.
///
/// # Safety
/// `model` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qcoh_model_size(model: *const QcohModel) -> usize {
    model.as_ref().map_or(0, |m| m.inner.len())
}

/// Number of Novikov variables, or 0 for a null handle.
///
/// # Safety
/// `model` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qcoh_model_rank(model: *const QcohModel) -> usize {
    model.as_ref().map_or(0, |m| m.inner.rank())
}

/// The model document as JSON.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_model_to_json(model: *const QcohModel, out: *mut *mut c_char) -> QcohStatus {
    guard(|| {
        let m = model_ref(model)?;
        write_out(out, to_c_string(m.to_file().to_json_pretty()))
    })
}

/// Runs the flatness check to `order` and stores whether it passed.
///
/// # Safety
/// `model` must be a live handle; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_check_flatness(model: *const QcohModel, order: u32, passed: *mut bool) -> QcohStatus {
    guard(|| {
        let m = model_ref(model)?;
        write_out(passed, quantum::check_flatness(m, order).passed())
    })
}

/// Runs the associativity check over all basis triples.
///
/// # Safety
/// `model` must be a live handle; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_check_associativity(
    model: *const QcohModel,
    order: u32,
    passed: *mut bool,
) -> QcohStatus {
    guard(|| {
        let m = model_ref(model)?;
        write_out(passed, quantum::check_associativity(m, order).passed())
    })
}

/// Evaluates a relation such as `a^5 - 4*q*a` under the quantum product.
///
/// # Safety
/// `model` must be a live handle, `relation` NUL-terminated, `is_zero` writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_eval_relation(
    model: *const QcohModel,
    relation: *const c_char,
    order: u32,
    is_zero: *mut bool,
) -> QcohStatus {
    guard(|| {
        let m = model_ref(model)?;
        let rel = parse_relation(read_str(relation, "relation")?, m)?;
        write_out(is_zero, quantum::eval_relation(m, &rel, order).is_zero())
    })
}

/// Solves the first-order system to `order` and returns the J-function.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_jfunction_solve(
    model: *const QcohModel,
    order: u32,
    out: *mut *mut QcohJFunction,
) -> QcohStatus {
    guard(|| {
        let m = model_ref(model)?;
        let hm = flat::solve_fundamental(m, order)?;
        let j = QcohJFunction { model: m.clone(), series: hm.j_function(m) };
        write_out(out, Box::into_raw(Box::new(j)))
    })
}

/// The hypergeometric closed form for `cp<m>`, `f3` or `sigma1`.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_jfunction_closed_form(
    model: *const QcohModel,
    order: u32,
    out: *mut *mut QcohJFunction,
) -> QcohStatus {
    guard(|| {
        let m = model_ref(model)?;
        let series = flat::closed_form(m.name(), order)?;
        write_out(out, Box::into_raw(Box::new(QcohJFunction { model: m.clone(), series })))
    })
}

/// # Safety
/// `j` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn qcoh_jfunction_free(j: *mut QcohJFunction) {
    if !j.is_null() {
        drop(Box::from_raw(j));
    }
}

/// Whether two J-functions agree termwise.
///
/// # Safety
/// `a` and `b` must be live handles; `equal` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_jfunction_equal(
    a: *const QcohJFunction,
    b: *const QcohJFunction,
    equal: *mut bool,
) -> QcohStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| invalid("first handle is null"))?;
        let b = b.as_ref().ok_or_else(|| invalid("second handle is null"))?;
        write_out(equal, a.model == b.model && a.series == b.series)
    })
}

/// Applies an operator such as `D1^2 - q1` and stores whether it annihilates `j`.
///
/// # Safety
/// `j` must be a live handle, `operator` NUL-terminated, `annihilated` writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_jfunction_apply(
    j: *const QcohJFunction,
    operator: *const c_char,
    annihilated: *mut bool,
) -> QcohStatus {
    guard(|| {
        let j = j.as_ref().ok_or_else(|| invalid("J handle is null"))?;
        let op = parse_operator(read_str(operator, "operator")?, &Symbols::for_model(&j.model, Mode::Operator))?;
        write_out(annihilated, apply_gauge(&op, &j.series, &j.model).is_zero())
    })
}

/// The series as JSON records `{degree, coeff}`.
///
/// # Safety
/// `j` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_jfunction_to_json(j: *const QcohJFunction, out: *mut *mut c_char) -> QcohStatus {
    guard(|| {
        let j = j.as_ref().ok_or_else(|| invalid("J handle is null"))?;
        let text =
            serde_json::to_string(&j.series.to_records()).map_err(|e| Failure(QcohStatus::Internal, e.to_string()))?;
        write_out(out, to_c_string(text))
    })
}

/// Descendent invariants up to total degree `max_degree`, as a JSON array.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_descendents_json(
    model: *const QcohModel,
    max_degree: u32,
    out: *mut *mut c_char,
) -> QcohStatus {
    guard(|| {
        let m = model_ref(model)?;
        if max_degree == 0 {
            return Err(invalid("max_degree must be positive"));
        }
        let hm = flat::solve_fundamental(m, max_degree)?;
        let inv = flat::extract_descendents(m, &hm, max_degree, flat::max_level(m, max_degree))?;
        let text = serde_json::to_string(&inv).map_err(|e| Failure(QcohStatus::Internal, e.to_string()))?;
        write_out(out, to_c_string(text))
    })
}
