//! C ABI over `lkinv`. Every entry point returns an [`LkStatus`]; on failure
//! the message is available from [`lkinv_last_error`] on the same thread.
//! Handles are opaque and owned by the caller until passed to their `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lkinv::geom::{Polytope, PolytopeJson};
use lkinv::motivic::{
    acampo_lefschetz, euler_realization, motivic_milnor_fibre, zeta_from_resolution, Mode, ResolutionData, Sign,
};
use lkinv::tube::{lk_curvatures, steiner_coefficients, tube_volume_mc, PlSet, PlSetJson};
use lkinv::{Error, McConfig};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LkStatus {
    Ok = 0,
    Validation = 1,
    Numerical = 2,
    Io = 3,
    NullPointer = 4,
    Utf8 = 5,
    Panic = 6,
    BufferTooSmall = 7,
}

pub struct LkPolytope(Polytope);
pub struct LkPlSet(PlSet);
pub struct LkResolution(ResolutionData);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn fail(status: LkStatus, msg: impl Into<String>) -> LkStatus {
    set_error(msg);
    status
}

fn from_lib(e: Error) -> LkStatus {
    let status = match e {
        Error::Validation(_) => LkStatus::Validation,
        Error::Numerical(_) => LkStatus::Numerical,
        Error::Io(_) => LkStatus::Io,
    };
    fail(status, e.to_string())
}

/// Run `f`, turning panics into `LkStatus::Panic` and clearing the last error
/// on success.
fn guard(f: impl FnOnce() -> LkStatus) -> LkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == LkStatus::Ok {
                LAST_ERROR.with(|e| *e.borrow_mut() = None);
            }
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(LkStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, LkStatus> {
    if s.is_null() {
        return Err(fail(LkStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| fail(LkStatus::Utf8, e.to_string()))
}

fn parse<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, LkStatus> {
    serde_json::from_str(s).map_err(|e| from_lib(e.into()))
}

unsafe fn give<T>(out: *mut *mut T, v: T) -> LkStatus {
    *out = Box::into_raw(Box::new(v));
    LkStatus::Ok
}

/// Copy `values` to `out[..cap]` and store the count in `*len`. With a short
/// buffer nothing is copied and `*len` still reports the required length.
unsafe fn write_values(values: &[f64], out: *mut f64, cap: usize, len: *mut usize) -> LkStatus {
    if len.is_null() {
        return fail(LkStatus::NullPointer, "null length pointer");
    }
    *len = values.len();
    if cap < values.len() {
        return fail(LkStatus::BufferTooSmall, format!("need room for {} values", values.len()));
    }
    if out.is_null() {
        return fail(LkStatus::NullPointer, "null output buffer");
    }
    std::ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    LkStatus::Ok
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(LkStatus::NullPointer, concat!("null argument `", stringify!($p), "`"));
        })+
    };
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn lkinv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Static version string.
#[no_mangle]
pub extern "C" fn lkinv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Free a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn lkinv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse `{dim, vertices, facets}` JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lkinv_polytope_from_json(json: *const c_char, out: *mut *mut LkPolytope) -> LkStatus {
    guard(|| {
        non_null!(out);
        let j: PolytopeJson = try_ffi!(parse(try_ffi!(read_str(json))));
        let p = try_ffi!(Polytope::from_json(&j).map_err(from_lib));
        give(out, LkPolytope(p))
    })
}

/// # Safety
/// `p` must be null or a handle from `lkinv_polytope_from_json`.
#[no_mangle]
pub unsafe extern "C" fn lkinv_polytope_free(p: *mut LkPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Exact Lipschitz-Killing curvatures Λ_0..Λ_n into `out`.
///
/// # Safety
/// `p` must be a live handle, `out` valid for `cap` writes, `len` writable.
#[no_mangle]
pub unsafe extern "C" fn lkinv_polytope_steiner(
    p: *const LkPolytope,
    out: *mut f64,
    cap: usize,
    len: *mut usize,
) -> LkStatus {
    guard(|| {
        non_null!(p);
        let lk = try_ffi!(steiner_coefficients(&(*p).0).map_err(from_lib));
        write_values(&lk.values, out, cap, len)
    })
}

/// Parse a union `{dim, pieces}` or a single polytope.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lkinv_plset_from_json(json: *const c_char, out: *mut *mut LkPlSet) -> LkStatus {
    guard(|| {
        non_null!(out);
        let v: serde_json::Value = try_ffi!(parse(try_ffi!(read_str(json))));
        let set = if v.get("pieces").is_some() {
            let j: PlSetJson = try_ffi!(serde_json::from_value(v).map_err(|e| from_lib(e.into())));
            try_ffi!(PlSet::from_json(&j).map_err(from_lib))
        } else {
            let j: PolytopeJson = try_ffi!(serde_json::from_value(v).map_err(|e| from_lib(e.into())));
            PlSet::single(try_ffi!(Polytope::from_json(&j).map_err(from_lib)))
        };
        give(out, LkPlSet(set))
    })
}

/// # Safety
/// `x` must be null or a handle from `lkinv_plset_from_json`.
#[no_mangle]
pub unsafe extern "C" fn lkinv_plset_free(x: *mut LkPlSet) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Λ_0..Λ_n of the union by inclusion-exclusion.
///
/// # Safety
/// As for `lkinv_polytope_steiner`.
#[no_mangle]
pub unsafe extern "C" fn lkinv_plset_lk(x: *const LkPlSet, out: *mut f64, cap: usize, len: *mut usize) -> LkStatus {
    guard(|| {
        non_null!(x);
        let lk = try_ffi!(lk_curvatures(&(*x).0).map_err(from_lib));
        write_values(&lk.values, out, cap, len)
    })
}

/// Monte Carlo volume of the ε-tube, deterministic in `seed`.
///
/// # Safety
/// `x` must be a live handle; `value` and `stderr` writable.
#[no_mangle]
pub unsafe extern "C" fn lkinv_tube_volume_mc(
    x: *const LkPlSet,
    eps: f64,
    samples: u64,
    seed: u64,
    value: *mut f64,
    stderr: *mut f64,
) -> LkStatus {
    guard(|| {
        non_null!(x, value, stderr);
        let e = try_ffi!(tube_volume_mc(&(*x).0, eps, McConfig::new(samples, seed)).map_err(from_lib));
        *value = e.value;
        *stderr = e.stderr;
        LkStatus::Ok
    })
}

/// Parse resolution data JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lkinv_resolution_from_json(json: *const c_char, out: *mut *mut LkResolution) -> LkStatus {
    guard(|| {
        non_null!(out);
        let r = try_ffi!(ResolutionData::from_str(try_ffi!(read_str(json))).map_err(from_lib));
        give(out, LkResolution(r))
    })
}

/// # Safety
/// `r` must be null or a handle from `lkinv_resolution_from_json`.
#[no_mangle]
pub unsafe extern "C" fn lkinv_resolution_free(r: *mut LkResolution) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Lefschetz number of the m-th monodromy iterate.
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lkinv_acampo_lefschetz(r: *const LkResolution, m: u64, out: *mut i64) -> LkStatus {
    guard(|| {
        non_null!(r, out);
        *out = try_ffi!(acampo_lefschetz(&(*r).0, m).map_err(from_lib));
        LkStatus::Ok
    })
}

/// Motivic Milnor fibre as JSON `{"class": "...", "chi": ...}`. `sign` null
/// selects the complex realization; otherwise one of "-1", "+1", "<", ">".
/// The string must be released with `lkinv_string_free`.
///
/// # Safety
/// `r` must be a live handle, `sign` null or NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lkinv_milnor_fibre_json(
    r: *const LkResolution,
    sign: *const c_char,
    out: *mut *mut c_char,
) -> LkStatus {
    guard(|| {
        non_null!(r, out);
        let mode = if sign.is_null() {
            Mode::Complex
        } else {
            Mode::Real(try_ffi!(Sign::parse(try_ffi!(read_str(sign))).map_err(from_lib)))
        };
        let z = try_ffi!(zeta_from_resolution(&(*r).0, mode).map_err(from_lib));
        let s = try_ffi!(motivic_milnor_fibre(&z).map_err(from_lib));
        let chi = euler_realization(&s, mode);
        let body = serde_json::json!({ "class": s.to_string(), "chi": lkinv::motivic::rational_json(&chi) });
        *out = CString::new(body.to_string()).expect("JSON has no NUL").into_raw();
        LkStatus::Ok
    })
}
