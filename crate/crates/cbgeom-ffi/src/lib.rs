//! C ABI over the cbgeom core. Conventions:
//!
//! * point sets travel as opaque `CbgPointSet*` handles, created by
//!   `cbg_point_set_parse` or `cbg_generate` and released with
//!   `cbg_point_set_free`;
//! * every fallible call returns a `CbgStatus`; on any non-OK status a
//!   thread-local message is retrievable with `cbg_last_error`;
//! * strings come back through caller buffers with the usual two-call
//!   pattern (`needed` reports the full length excluding the NUL, so a
//!   buffer of `needed + 1` bytes always fits).
//!
//! Panics never cross the boundary: they are caught and reported as
//! `CBG_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cbgeom::classify::classify_cb5;
use cbgeom::conditions::{conditions_imposed, h0_ideal, h1_ideal, is_cb};
use cbgeom::generate::{sample_config, ConfigCase, ConfigSpec};
use cbgeom::geometry::PointSet;
use cbgeom::io::{parse_point_set, render_point_set};
use cbgeom::position::position_report;
use cbgeom::scalar::FieldSpec;

/// Outcome of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CbgStatus {
    /// call succeeded
    Ok = 0,
    /// a required pointer argument was NULL
    NullArgument = 1,
    /// a string argument was not valid UTF-8
    InvalidUtf8 = 2,
    /// the input text did not parse; `cbg_last_error` names the line
    ParseError = 3,
    /// arguments were structurally valid but rejected (bad prime, unknown
    /// case name, degree 0, ...)
    BadInput = 4,
    /// the caller buffer was too small; the `needed` out-parameter holds
    /// the required length
    BufferTooSmall = 5,
    /// an internal invariant failed (a bug on this side of the boundary)
    Internal = 6,
}

/// A finite configuration of distinct points in P^2 or P^3. Opaque.
pub struct CbgPointSet {
    inner: PointSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let owned = CString::new(msg.replace('\0', "?")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = owned);
}

fn fail(status: CbgStatus, msg: &str) -> CbgStatus {
    set_error(msg);
    status
}

/// Copies the message from the most recent failing call on this thread
/// into `buf` (NUL-terminated, truncating if needed) and returns the full
/// message length excluding the NUL. `buf` may be NULL (with `cap` 0) to
/// query the length alone.
#[no_mangle]
pub extern "C" fn cbg_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cbg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

fn guard(body: impl FnOnce() -> CbgStatus) -> CbgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(CbgStatus::Internal, "internal panic"),
    }
}

unsafe fn deref<'a>(ps: *const CbgPointSet) -> Option<&'a PointSet> {
    ps.as_ref().map(|h| &h.inner)
}

/// Parses the canonical point-set text format (`field`/`ambient` headers
/// followed by `point` lines) into a fresh handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cbg_point_set_parse(
    text: *const c_char,
    out: *mut *mut CbgPointSet,
) -> CbgStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(CbgStatus::NullArgument, "text and out must be non-NULL");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(CbgStatus::InvalidUtf8, "text is not valid UTF-8");
        };
        match parse_point_set(text) {
            Ok(ps) => {
                *out = Box::into_raw(Box::new(CbgPointSet { inner: ps }));
                CbgStatus::Ok
            }
            Err(e) => fail(CbgStatus::ParseError, &e.to_string()),
        }
    })
}

/// Samples one configuration of the named case (`"case-i"` .. `"case-v"`,
/// `"on-conic"`, `"on-plane"`, `"on-plane-cubic"`, `"on-twisted-cubic"`,
/// `"ci33"`) over F_prime with the case's default lengths.
///
/// # Safety
/// `case` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cbg_generate(
    case: *const c_char,
    prime: u64,
    seed: u64,
    out: *mut *mut CbgPointSet,
) -> CbgStatus {
    guard(|| {
        if case.is_null() || out.is_null() {
            return fail(CbgStatus::NullArgument, "case and out must be non-NULL");
        }
        let Ok(name) = CStr::from_ptr(case).to_str() else {
            return fail(CbgStatus::InvalidUtf8, "case is not valid UTF-8");
        };
        let Some(case) = ConfigCase::from_name(name) else {
            return fail(CbgStatus::BadInput, &format!("unknown case {name:?}"));
        };
        let field = match FieldSpec::prime(prime) {
            Ok(f) => f,
            Err(e) => return fail(CbgStatus::BadInput, &e.to_string()),
        };
        let spec = match ConfigSpec::new(case, None, field, seed) {
            Ok(s) => s,
            Err(e) => return fail(CbgStatus::BadInput, &e.to_string()),
        };
        match sample_config(&spec) {
            Ok(cfg) => {
                *out = Box::into_raw(Box::new(CbgPointSet { inner: cfg.points }));
                CbgStatus::Ok
            }
            Err(e) => fail(CbgStatus::BadInput, &e.to_string()),
        }
    })
}

/// Releases a handle. NULL is a no-op.
///
/// # Safety
/// `ps` must be a pointer previously returned by this library and not
/// already freed.
#[no_mangle]
pub unsafe extern "C" fn cbg_point_set_free(ps: *mut CbgPointSet) {
    if !ps.is_null() {
        drop(Box::from_raw(ps));
    }
}

/// Number of points; 0 for NULL.
///
/// # Safety
/// `ps` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cbg_point_set_len(ps: *const CbgPointSet) -> usize {
    deref(ps).map_or(0, |ps| ps.len())
}

/// Dimension of the ambient projective space (2 or 3); 0 for NULL.
///
/// # Safety
/// `ps` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cbg_point_set_ambient(ps: *const CbgPointSet) -> usize {
    deref(ps).map_or(0, |ps| ps.ambient_dim())
}

/// Field characteristic: the prime for F_p, 0 for the rationals.
///
/// # Safety
/// `ps` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cbg_point_set_characteristic(
    ps: *const CbgPointSet,
    out: *mut u64,
) -> CbgStatus {
    guard(|| {
        let (Some(ps), false) = (deref(ps), out.is_null()) else {
            return fail(CbgStatus::NullArgument, "ps and out must be non-NULL");
        };
        *out = match ps.field() {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        };
        CbgStatus::Ok
    })
}

/// Renders the canonical text form (the same format `cbg_point_set_parse`
/// accepts) into `buf`. Two-call pattern via `needed`.
///
/// # Safety
/// `ps` must be a live handle; `needed` must be valid; `buf` must point to
/// `cap` writable bytes or be NULL with `cap` 0.
#[no_mangle]
pub unsafe extern "C" fn cbg_point_set_render(
    ps: *const CbgPointSet,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> CbgStatus {
    guard(|| {
        let (Some(ps), false) = (deref(ps), needed.is_null()) else {
            return fail(CbgStatus::NullArgument, "ps and needed must be non-NULL");
        };
        write_str(&render_point_set(ps), buf, cap, needed)
    })
}

fn write_str(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> CbgStatus {
    unsafe {
        *needed = s.len();
        if buf.is_null() || cap < s.len() + 1 {
            return fail(
                CbgStatus::BufferTooSmall,
                &format!("need {} bytes, have {cap}", s.len() + 1),
            );
        }
        ptr::copy_nonoverlapping(s.as_ptr().cast::<c_char>(), buf, s.len());
        *buf.add(s.len()) = 0;
    }
    CbgStatus::Ok
}

/// Rank of the degree-`degree` evaluation map: the number of conditions
/// the points impose on forms of that degree.
///
/// # Safety
/// `ps` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cbg_conditions(
    ps: *const CbgPointSet,
    degree: u32,
    out: *mut usize,
) -> CbgStatus {
    guard(|| {
        let (Some(ps), false) = (deref(ps), out.is_null()) else {
            return fail(CbgStatus::NullArgument, "ps and out must be non-NULL");
        };
        if degree == 0 {
            return fail(CbgStatus::BadInput, "degree must be at least 1");
        }
        *out = conditions_imposed(ps, degree);
        CbgStatus::Ok
    })
}

/// Dimension of the space of degree-`degree` forms vanishing on all the
/// points.
///
/// # Safety
/// `ps` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cbg_h0(
    ps: *const CbgPointSet,
    degree: u32,
    out: *mut usize,
) -> CbgStatus {
    guard(|| {
        let (Some(ps), false) = (deref(ps), out.is_null()) else {
            return fail(CbgStatus::NullArgument, "ps and out must be non-NULL");
        };
        if degree == 0 {
            return fail(CbgStatus::BadInput, "degree must be at least 1");
        }
        *out = h0_ideal(ps, degree);
        CbgStatus::Ok
    })
}

/// Failure count of the degree-`degree` conditions: points minus rank.
///
/// # Safety
/// `ps` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cbg_h1(
    ps: *const CbgPointSet,
    degree: u32,
    out: *mut usize,
) -> CbgStatus {
    guard(|| {
        let (Some(ps), false) = (deref(ps), out.is_null()) else {
            return fail(CbgStatus::NullArgument, "ps and out must be non-NULL");
        };
        if degree == 0 {
            return fail(CbgStatus::BadInput, "degree must be at least 1");
        }
        *out = h1_ideal(ps, degree);
        CbgStatus::Ok
    })
}

/// Cayley-Bacharach verdict for degree `m`. Writes whether the property
/// holds to `satisfied` and the indices of the failing points (those whose
/// removal drops the rank) to `failing`, reporting the count in
/// `failing_len`. `failing` may be NULL with `failing_cap` 0 to query the
/// count; if the buffer is too small the count is still written and the
/// call returns `CBG_STATUS_BUFFER_TOO_SMALL`.
///
/// # Safety
/// `ps` must be a live handle; `satisfied` and `failing_len` must be valid
/// pointers; `failing` must point to `failing_cap` writable entries or be
/// NULL with `failing_cap` 0.
#[no_mangle]
pub unsafe extern "C" fn cbg_cb(
    ps: *const CbgPointSet,
    m: u32,
    satisfied: *mut bool,
    failing: *mut usize,
    failing_cap: usize,
    failing_len: *mut usize,
) -> CbgStatus {
    guard(|| {
        let (Some(ps), false, false) = (deref(ps), satisfied.is_null(), failing_len.is_null())
        else {
            return fail(
                CbgStatus::NullArgument,
                "ps, satisfied, and failing_len must be non-NULL",
            );
        };
        if m == 0 {
            return fail(CbgStatus::BadInput, "m must be at least 1");
        }
        let rep = is_cb(ps, m);
        *satisfied = rep.satisfied;
        *failing_len = rep.failing_points.len();
        if rep.failing_points.is_empty() {
            return CbgStatus::Ok;
        }
        if failing.is_null() || failing_cap < rep.failing_points.len() {
            return fail(
                CbgStatus::BufferTooSmall,
                &format!("need room for {} indices", rep.failing_points.len()),
            );
        }
        ptr::copy_nonoverlapping(rep.failing_points.as_ptr(), failing, rep.failing_points.len());
        CbgStatus::Ok
    })
}

/// Largest collinear and coplanar subsets and the count of independent
/// quadrics through the points (coplanar is the point count itself in
/// P^2).
///
/// # Safety
/// `ps` must be a live handle; the three out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn cbg_position(
    ps: *const CbgPointSet,
    max_collinear: *mut usize,
    max_coplanar: *mut usize,
    quadric_count: *mut usize,
) -> CbgStatus {
    guard(|| {
        let (Some(ps), false, false, false) = (
            deref(ps),
            max_collinear.is_null(),
            max_coplanar.is_null(),
            quadric_count.is_null(),
        ) else {
            return fail(CbgStatus::NullArgument, "all arguments must be non-NULL");
        };
        let rep = position_report(ps);
        *max_collinear = rep.max_collinear;
        *max_coplanar = rep.max_coplanar;
        *quadric_count = rep.quadric_count;
        CbgStatus::Ok
    })
}

/// Writes the configuration-type tag (`"CaseI"` .. `"CaseV"`,
/// `"InQuadric"`, or `"Unclassified"`) determined by the curve-cover
/// classifier. Two-call pattern via `needed`.
///
/// # Safety
/// `ps` must be a live handle; `needed` must be valid; `buf` must point to
/// `cap` writable bytes or be NULL with `cap` 0.
#[no_mangle]
pub unsafe extern "C" fn cbg_classify(
    ps: *const CbgPointSet,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> CbgStatus {
    guard(|| {
        let (Some(ps), false) = (deref(ps), needed.is_null()) else {
            return fail(CbgStatus::NullArgument, "ps and needed must be non-NULL");
        };
        write_str(classify_cb5(ps).tag(), buf, cap, needed)
    })
}
