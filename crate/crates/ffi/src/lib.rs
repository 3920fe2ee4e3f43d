//! C ABI for gradus.
//!
//! Algebras are opaque handles. Every fallible call returns a
//! [`GradusStatus`]; on failure the message is available from
//! [`gradus_last_error`] on the same thread. Strings returned through
//! `char **out` parameters are owned by the caller and must be released with
//! [`gradus_string_free`]. Reports are the JSON documents of the CLI without
//! the run manifest.

use gradus::cli::{element_from_text, multivector_from_text};
use gradus::exterior::{analyze_kvector, KVectorOptions};
use gradus::jordan_sl2::{analyze_element, jmv_triple};
use gradus::lie::{verify_axioms, AlgebraJson, GradedAlgebra};
use gradus::nilclass::{classify_nilpotent_orbits, ComponentOptions};
use gradus::{catalog, Error};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result codes of the C API.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradusStatus {
    Ok = 0,
    /// A required pointer was null or a string was not UTF-8.
    NullOrInvalidArgument = 1,
    /// Malformed or inconsistent input (parse errors, unknown names, shapes).
    InputError = 2,
    /// A precondition failed or the computation could not complete.
    ComputationError = 3,
    /// An internal panic was caught at the boundary.
    InternalError = 4,
}

/// Opaque algebra handle.
pub struct GradusAlgebra {
    inner: GradedAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

enum Failure {
    Arg(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Lib(Error::Json(e))
    }
}

/// Run `f` behind the panic boundary and translate its outcome.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GradusStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GradusStatus::Ok,
        Ok(Err(Failure::Arg(m))) => {
            set_error(m);
            GradusStatus::NullOrInvalidArgument
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            if e.is_input_error() {
                GradusStatus::InputError
            } else {
                GradusStatus::ComputationError
            }
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            GradusStatus::InternalError
        }
    }
}

/// # Safety
/// `p` must be null or a valid nul-terminated string.
unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Arg(format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Arg(format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be null or a handle returned by this library and not yet freed.
unsafe fn alg_arg<'a>(p: *const GradusAlgebra) -> Result<&'a GradedAlgebra, Failure> {
    p.as_ref().map(|a| &a.inner).ok_or_else(|| Failure::Arg("algebra handle is null".into()))
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Arg("output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Failure::Arg("output contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_handle(out: *mut *mut GradusAlgebra, alg: GradedAlgebra) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Arg("output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(GradusAlgebra { inner: alg }));
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next gradus call on the same thread.
#[no_mangle]
pub extern "C" fn gradus_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gradus_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gradus_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Build a catalog algebra such as `"sl2c-real-z2"` or `"e8-split-z3"`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gradus_catalog_build(name: *const c_char, out: *mut *mut GradusAlgebra) -> GradusStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        write_handle(out, catalog::build(name)?)
    })
}

/// Parse an algebra from its JSON interchange form.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gradus_algebra_from_json(json: *const c_char, out: *mut *mut GradusAlgebra) -> GradusStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let mut v: serde_json::Value = serde_json::from_str(text)?;
        if let Some(m) = v.as_object_mut() {
            m.remove("manifest");
        }
        let j: AlgebraJson = serde_json::from_value(v)?;
        write_handle(out, GradedAlgebra::from_json_value(&j)?)
    })
}

/// Release an algebra handle. Null is ignored.
///
/// # Safety
/// `alg` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gradus_algebra_free(alg: *mut GradusAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gradus_algebra_dim(alg: *const GradusAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.inner.dim())
}

/// Grading modulus, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gradus_algebra_modulus(alg: *const GradusAlgebra) -> u32 {
    alg.as_ref().map_or(0, |a| a.inner.modulus())
}

/// Algebra JSON.
///
/// # Safety
/// `alg` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gradus_algebra_to_json(alg: *const GradusAlgebra, out: *mut *mut c_char) -> GradusStatus {
    guard(|| {
        let a = alg_arg(alg)?;
        write_string(out, a.to_json())
    })
}

/// Axiom report; `*passed` receives whether every check holds.
///
/// # Safety
/// `alg` must be a live handle; `passed` and `out` must be valid for writes
/// (`passed` may be null).
#[no_mangle]
pub unsafe extern "C" fn gradus_verify(alg: *const GradusAlgebra, passed: *mut bool, out: *mut *mut c_char) -> GradusStatus {
    guard(|| {
        let a = alg_arg(alg)?;
        let r = verify_axioms(a);
        if !passed.is_null() {
            *passed = r.passed;
        }
        write_string(out, serde_json::to_string(&r)?)
    })
}

/// Nilpotent/semisimple predicates and Jordan decomposition. `element` is
/// element JSON or an expression such as `"E+F"`.
///
/// # Safety
/// Pointers must be valid; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gradus_element_analyze(
    alg: *const GradusAlgebra,
    element: *const c_char,
    out: *mut *mut c_char,
) -> GradusStatus {
    guard(|| {
        let a = alg_arg(alg)?;
        let x = element_from_text(a, str_arg(element, "element")?)?;
        write_string(out, serde_json::to_string(&analyze_element(a, &x)?)?)
    })
}

/// sl2-triple through a degree-1 nilpotent element.
///
/// # Safety
/// Pointers must be valid; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gradus_jmv(alg: *const GradusAlgebra, element: *const c_char, out: *mut *mut c_char) -> GradusStatus {
    guard(|| {
        let a = alg_arg(alg)?;
        let e = element_from_text(a, str_arg(element, "element")?)?;
        let r = jmv_triple(a, &e)?;
        let v = serde_json::json!({
            "algebra": a.name(),
            "h": r.triple.h,
            "e": r.triple.e,
            "f": r.triple.f,
            "f_prime": r.f_prime,
            "correction": r.correction,
            "uniqueness_kernel_dim": r.uniqueness_kernel_dim,
            "relations_hold": r.triple.relations_hold(a)?,
        });
        write_string(out, serde_json::to_string(&v)?)
    })
}

/// Degree-1 nilpotent orbits with characteristic `h`. `samples` and
/// `box_radius` of 0 select the defaults.
///
/// # Safety
/// Pointers must be valid; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gradus_nilorbits(
    alg: *const GradusAlgebra,
    h: *const c_char,
    seed: u64,
    samples: usize,
    box_radius: u32,
    out: *mut *mut c_char,
) -> GradusStatus {
    guard(|| {
        let a = alg_arg(alg)?;
        let h = element_from_text(a, str_arg(h, "h")?)?;
        let mut opts = ComponentOptions { seed, ..Default::default() };
        if samples > 0 {
            opts.samples = samples;
        }
        if box_radius > 0 {
            opts.box_radius = box_radius;
        }
        write_string(out, serde_json::to_string(&classify_nilpotent_orbits(a, &h, &opts)?)?)
    })
}

/// k-vector analysis. `form` is multivector JSON, or an expression such as
/// `"e123"` on R^n with `n` given (n = 0 is rejected for expressions).
///
/// # Safety
/// Pointers must be valid; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gradus_kform_analyze(
    form: *const c_char,
    n: usize,
    dualize: bool,
    out: *mut *mut c_char,
) -> GradusStatus {
    guard(|| {
        let text = str_arg(form, "form")?;
        if n == 0 && !text.trim_start().starts_with('{') {
            return Err(Failure::Lib(Error::InvalidInput("expression input needs the ambient dimension n".into())));
        }
        let w = multivector_from_text(text, n.max(1), 0)?;
        write_string(out, serde_json::to_string(&analyze_kvector(&w, &KVectorOptions { dualize })?)?)
    })
}
