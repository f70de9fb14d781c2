//! C ABI for `tight-embed`.
//!
//! Every object crosses the boundary as an opaque handle created by a
//! `te_*_from_json` or `te_*_embed` call and released with the matching
//! `te_*_free`. Functions return a [`TeStatus`] whose values mirror the
//! command-line exit codes; on failure [`te_last_error`] describes the
//! problem. Strings returned to the caller are released with
//! [`te_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tight_embed::lp_embed::{self, LpEmbedding, LpEmbeddingFile};
use tight_embed::moduli::{
    check_class, exp_dominate, regularize_omega, regularize_rho, Class, Family, ModulusCurve,
    DEFAULT_DENSITY,
};
use tight_embed::spaces::{Exponent, Space};
use tight_embed::stable_embed::{embed_stable, StableEmbedding, StableEmbeddingFile, StableReport};
use tight_embed::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TeStatus {
    Ok = 0,
    /// Malformed or out-of-contract input, including null pointers.
    InvalidInput = 2,
    /// The object was built but its certification failed.
    VerifyFailed = 3,
    Internal = 4,
}

/// Modulus classes for [`te_modulus_check`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TeClass {
    Phi = 0,
    P = 1,
    Omega = 2,
}

impl From<TeClass> for Class {
    fn from(c: TeClass) -> Self {
        match c {
            TeClass::Phi => Class::Phi,
            TeClass::P => Class::P,
            TeClass::Omega => Class::Omega,
        }
    }
}

/// A modulus curve.
pub struct TeModulus(ModulusCurve);

/// A finite metric space or `l_p` point set.
pub struct TeSpace(Space);

/// An `l_p` block-sum embedding with its sandwich report.
pub struct TeLpEmbedding {
    emb: LpEmbedding,
    file: LpEmbeddingFile,
}

/// An `l_inf` coordinate embedding with its sandwich report.
pub struct TeStableEmbedding {
    emb: StableEmbedding,
    report: StableReport,
    input: Space,
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

struct Failure(TeStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match tight_embed::cli::exit_code(&e) {
            2 => TeStatus::InvalidInput,
            _ => TeStatus::Internal,
        };
        Failure(code, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(TeStatus::InvalidInput, msg.into())
}

/// Run `f`, converting errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<TeStatus, Failure>) -> TeStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TeStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(invalid(format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| invalid(format!("{what} is null")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| invalid(format!("{what} is null")))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|_| Failure(TeStatus::Internal, "string has a nul byte".into()))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next `te_*` call on the same thread.
#[no_mangle]
pub extern "C" fn te_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn te_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from a `te_*` function returning `char*` and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn te_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a modulus JSON description.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_modulus_from_json(json: *const c_char, out: *mut *mut TeModulus) -> TeStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let curve = ModulusCurve::from_json(str_arg(json, "json")?)?;
        *out = Box::into_raw(Box::new(TeModulus(curve)));
        Ok(TeStatus::Ok)
    })
}

/// Evaluate the curve at `t >= 0`.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_modulus_eval(m: *const TeModulus, t: f64, out: *mut f64) -> TeStatus {
    guard(|| {
        let m = handle(m, "modulus")?;
        *out_arg(out, "out")? = m.0.eval(t)?;
        Ok(TeStatus::Ok)
    })
}

/// Certify class membership on the default grid; `pass` receives the
/// verdict and the status is `TE_STATUS_OK` either way.
///
/// # Safety
/// `m` must be a live handle and `pass` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_modulus_check(m: *const TeModulus, class: TeClass, pass: *mut bool) -> TeStatus {
    guard(|| {
        let m = handle(m, "modulus")?;
        let report = check_class(&m.0, class.into(), DEFAULT_DENSITY)?;
        if let Some(v) = &report.first_violation {
            set_error(format!("clause `{}` fails at t = {}", v.clause, v.t));
        }
        *out_arg(pass, "pass")? = report.pass;
        Ok(TeStatus::Ok)
    })
}

/// Regularize a curve of class `P` or `Omega` into a new handle.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_modulus_regularize(m: *const TeModulus, class: TeClass, out: *mut *mut TeModulus) -> TeStatus {
    guard(|| {
        let m = handle(m, "modulus")?;
        let out = out_arg(out, "out")?;
        let r = match class {
            TeClass::P => regularize_rho(&m.0)?,
            TeClass::Omega => regularize_omega(&m.0)?,
            TeClass::Phi => return Err(invalid("only P and Omega curves are regularized")),
        };
        *out = Box::into_raw(Box::new(TeModulus(r)));
        Ok(TeStatus::Ok)
    })
}

/// Serialize a curve to JSON; free the result with `te_string_free`.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_modulus_to_json(m: *const TeModulus, out: *mut *mut c_char) -> TeStatus {
    guard(|| {
        let m = handle(m, "modulus")?;
        *out_arg(out, "out")? = into_c_string(m.0.to_json())?;
        Ok(TeStatus::Ok)
    })
}

/// # Safety
/// `m` must be null or a handle not freed yet.
#[no_mangle]
pub unsafe extern "C" fn te_modulus_free(m: *mut TeModulus) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Parse a space: `{"type":"points",...}` or `{"type":"matrix",...}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_space_from_json(json: *const c_char, out: *mut *mut TeSpace) -> TeStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let space = Space::from_json(str_arg(json, "json")?)?;
        *out = Box::into_raw(Box::new(TeSpace(space)));
        Ok(TeStatus::Ok)
    })
}

/// Number of points.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn te_space_len(s: *const TeSpace) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `s` must be null or a handle not freed yet.
#[no_mangle]
pub unsafe extern "C" fn te_space_free(s: *mut TeSpace) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Build and certify the `l_p` block-sum embedding of a point set.
///
/// `modulus` is either a curve in Phi (dominated internally) or a
/// `log2_dominated` curve. `eta <= 0` selects the default
/// `max(100, 2 / (1 - 16 r) + 1)`; `outer_s` may be `INFINITY`. Returns
/// `TE_STATUS_VERIFY_FAILED` with a valid `*out` when the sandwich fails.
///
/// # Safety
/// Handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_lp_embed(
    points: *const TeSpace,
    modulus: *const TeModulus,
    eta: f64,
    r: f64,
    outer_s: f64,
    out: *mut *mut TeLpEmbedding,
) -> TeStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let points = handle(points, "points")?.0.clone().into_points()?;
        let curve = &handle(modulus, "modulus")?.0;
        let mu = match curve.family() {
            Family::Log2Dominated(_) => curve.clone(),
            _ => exp_dominate(curve)?,
        };
        let eta = if eta > 0.0 { eta } else { lp_embed::default_eta(r) };
        let plan = lp_embed::make_plan(&points, &mu, eta, r, Exponent::new(outer_s)?)?;
        let emb = lp_embed::embed(&plan, &points)?;
        let report = lp_embed::verify_sandwich(&emb, &points, &mu, r)?;
        let file = LpEmbeddingFile::new(&points, &emb, &report);
        let pass = report.pass();
        *out = Box::into_raw(Box::new(TeLpEmbedding { emb, file }));
        Ok(if pass { TeStatus::Ok } else { TeStatus::VerifyFailed })
    })
}

/// Whether every pair passed the sandwich.
///
/// # Safety
/// `e` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn te_lp_embedding_pass(e: *const TeLpEmbedding) -> bool {
    e.as_ref().is_some_and(|e| e.file.report.pass)
}

/// `||f(x_i) - f(x_j)||` in the block space.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_lp_embedding_distance(e: *const TeLpEmbedding, i: usize, j: usize, out: *mut f64) -> TeStatus {
    guard(|| {
        let e = handle(e, "embedding")?;
        if i >= e.emb.len() || j >= e.emb.len() {
            return Err(invalid(format!("point index out of range for {} points", e.emb.len())));
        }
        *out_arg(out, "out")? = e.emb.distance(&e.file.space, i, j)?;
        Ok(TeStatus::Ok)
    })
}

/// Embedding file JSON (input, plan, values, report); free with
/// `te_string_free`.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_lp_embedding_to_json(e: *const TeLpEmbedding, out: *mut *mut c_char) -> TeStatus {
    guard(|| {
        let e = handle(e, "embedding")?;
        *out_arg(out, "out")? = into_c_string(e.file.to_json())?;
        Ok(TeStatus::Ok)
    })
}

/// # Safety
/// `e` must be null or a handle not freed yet.
#[no_mangle]
pub unsafe extern "C" fn te_lp_embedding_free(e: *mut TeLpEmbedding) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Build and certify the `l_inf` coordinate embedding of a space. `rho`
/// and `omega` are regularized first. Returns `TE_STATUS_VERIFY_FAILED`
/// with a valid `*out` when the certification fails.
///
/// # Safety
/// Handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_stable_embed(
    space: *const TeSpace,
    basepoint: usize,
    rho: *const TeModulus,
    omega: *const TeModulus,
    out: *mut *mut TeStableEmbedding,
) -> TeStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let input = handle(space, "space")?.0.clone();
        let rho = regularize_rho(&handle(rho, "rho")?.0)?;
        let omega = regularize_omega(&handle(omega, "omega")?.0)?;
        let emb = embed_stable(&input.metric(), basepoint, &rho, &omega)?;
        let report = emb.verify();
        let pass = report.pass;
        *out = Box::into_raw(Box::new(TeStableEmbedding { emb, report, input }));
        Ok(if pass { TeStatus::Ok } else { TeStatus::VerifyFailed })
    })
}

/// # Safety
/// `e` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn te_stable_embedding_pass(e: *const TeStableEmbedding) -> bool {
    e.as_ref().is_some_and(|e| e.report.pass)
}

/// Largest `N_omega` over the coordinates.
///
/// # Safety
/// `e` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn te_stable_embedding_max_n_omega(e: *const TeStableEmbedding) -> f64 {
    e.as_ref().map_or(f64::NAN, |e| e.report.max_n_omega)
}

/// Sup-norm distance between the images of points `i` and `j`.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_stable_embedding_distance(
    e: *const TeStableEmbedding,
    i: usize,
    j: usize,
    out: *mut f64,
) -> TeStatus {
    guard(|| {
        let e = handle(e, "embedding")?;
        if i >= e.emb.len() || j >= e.emb.len() {
            return Err(invalid(format!("point index out of range for {} points", e.emb.len())));
        }
        *out_arg(out, "out")? = e.emb.distance(i, j);
        Ok(TeStatus::Ok)
    })
}

/// Embedding file JSON (input, moduli, coordinates, table, report); free
/// with `te_string_free`.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn te_stable_embedding_to_json(e: *const TeStableEmbedding, out: *mut *mut c_char) -> TeStatus {
    guard(|| {
        let e = handle(e, "embedding")?;
        let file = StableEmbeddingFile::new(&e.input, &e.emb, &e.report);
        *out_arg(out, "out")? = into_c_string(file.to_json())?;
        Ok(TeStatus::Ok)
    })
}

/// # Safety
/// `e` must be null or a handle not freed yet.
#[no_mangle]
pub unsafe extern "C" fn te_stable_embedding_free(e: *mut TeStableEmbedding) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

