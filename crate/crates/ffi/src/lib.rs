//! C ABI for the localization engine: load a radio map file, run RSS-only
//! position queries, smooth the resulting track.
//!
//! Conventions: every constructor writes its result through an out pointer
//! and returns a status code; every handle has a matching `_free` that
//! accepts null. On any non-`Ok` status the thread-local error message is
//! set and can be read with [`fploc_last_error`]. Handles are not
//! thread-safe; share a map across threads by loading it once per thread
//! or guarding it externally.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use fploc_core::calibration::RssMeasurement;
use fploc_core::error::Error;
use fploc_core::io::read_json;
use fploc_core::localizer::{Localizer, LocalizerConfig, MovingAverage};
use fploc_core::radiomap::RadioMap;
use fploc_core::Point2;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FplocStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The file could not be read.
    Io = 3,
    /// The file content did not parse as the expected document.
    Parse = 4,
    /// Arguments or document content violate a contract.
    InvalidInput = 5,
    /// The measurement shares too few anchors with the map.
    NoEligiblePoints = 6,
    /// An internal panic was caught at the boundary.
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("nul bytes stripped");
    });
}

fn status_of(err: &Error) -> FplocStatus {
    match err {
        Error::File { .. } | Error::Io(_) => FplocStatus::Io,
        Error::Parse { .. } => FplocStatus::Parse,
        Error::NoEligiblePoints | Error::InsufficientOverlap { .. } => {
            FplocStatus::NoEligiblePoints
        }
        _ => FplocStatus::InvalidInput,
    }
}

fn fail(err: &Error) -> FplocStatus {
    set_error(&err.to_string());
    status_of(err)
}

/// Runs `body` with panics converted to [`FplocStatus::Panic`].
fn guarded(body: impl FnOnce() -> FplocStatus) -> FplocStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            FplocStatus::Panic
        }
    }
}

/// # Safety
/// `ptr` must be a valid nul-terminated string.
unsafe fn utf8_arg<'a>(ptr: *const c_char) -> Result<&'a str, FplocStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(FplocStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        FplocStatus::InvalidUtf8
    })
}

/// Message for the most recent failure on this thread. Never null; empty
/// before the first failure. Valid until the next failing call on the same
/// thread.
#[no_mangle]
pub extern "C" fn fploc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn fploc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// A loaded radio map. Opaque.
pub struct FplocRadioMap(RadioMap);

/// A localizer bound to one radio map. Opaque.
pub struct FplocLocalizer(Localizer);

/// A trailing moving-average filter over positions. Opaque.
pub struct FplocSmoother(MovingAverage);

/// Loads a radio map JSON file produced by the pipeline.
///
/// # Safety
/// `path` must be nul-terminated; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn fploc_radio_map_load(
    path: *const c_char,
    out: *mut *mut FplocRadioMap,
) -> FplocStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out pointer");
            return FplocStatus::NullArgument;
        }
        let path = match utf8_arg(path) {
            Ok(p) => p,
            Err(status) => return status,
        };
        let map: RadioMap = match read_json(Path::new(path)) {
            Ok(m) => m,
            Err(e) => return fail(&e),
        };
        if let Err(e) = map.validate() {
            return fail(&e);
        }
        *out = Box::into_raw(Box::new(FplocRadioMap(map)));
        FplocStatus::Ok
    })
}

/// Frees a map handle. Null is a no-op.
///
/// # Safety
/// `map` must have come from [`fploc_radio_map_load`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fploc_radio_map_free(map: *mut FplocRadioMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Number of grid points, or 0 for a null handle.
///
/// # Safety
/// `map` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fploc_radio_map_point_count(map: *const FplocRadioMap) -> usize {
    if map.is_null() {
        return 0;
    }
    (*map).0.points.len()
}

/// Grid spacing in meters, or NaN for a null handle.
///
/// # Safety
/// `map` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fploc_radio_map_spacing(map: *const FplocRadioMap) -> f64 {
    if map.is_null() {
        return f64::NAN;
    }
    (*map).0.spacing
}

/// Creates a localizer over `map` with the given query parameters. The map
/// handle must outlive the localizer only for this call; the localizer keeps
/// its own copy of the data it needs.
///
/// # Safety
/// `map` must be a live handle; `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn fploc_localizer_new(
    map: *const FplocRadioMap,
    k: usize,
    min_common_anchors: usize,
    distance_epsilon: f64,
    out: *mut *mut FplocLocalizer,
) -> FplocStatus {
    guarded(|| {
        if map.is_null() || out.is_null() {
            set_error("null argument");
            return FplocStatus::NullArgument;
        }
        let config = LocalizerConfig {
            k,
            distance_epsilon,
            min_common_anchors,
            ..Default::default()
        };
        match Localizer::new(&(*map).0, config) {
            Ok(localizer) => {
                *out = Box::into_raw(Box::new(FplocLocalizer(localizer)));
                FplocStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Frees a localizer handle. Null is a no-op.
///
/// # Safety
/// `localizer` must have come from [`fploc_localizer_new`] and not be freed
/// twice.
#[no_mangle]
pub unsafe extern "C" fn fploc_localizer_free(localizer: *mut FplocLocalizer) {
    if !localizer.is_null() {
        drop(Box::from_raw(localizer));
    }
}

/// Estimates a position from one RSS measurement given as parallel arrays:
/// `anchor_ids[i]` (nul-terminated) measured at `levels[i]` dBm, `count`
/// entries. A repeated anchor id keeps the last level. Writes the estimate
/// into `out_x`/`out_y`.
///
/// # Safety
/// All pointers must be valid for `count` elements; strings nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn fploc_localize(
    localizer: *const FplocLocalizer,
    timestamp: f64,
    anchor_ids: *const *const c_char,
    levels: *const f64,
    count: usize,
    out_x: *mut f64,
    out_y: *mut f64,
) -> FplocStatus {
    guarded(|| {
        if localizer.is_null()
            || anchor_ids.is_null()
            || levels.is_null()
            || out_x.is_null()
            || out_y.is_null()
        {
            set_error("null argument");
            return FplocStatus::NullArgument;
        }
        let mut meas = RssMeasurement {
            timestamp,
            levels: Default::default(),
        };
        for i in 0..count {
            let id = match utf8_arg(*anchor_ids.add(i)) {
                Ok(s) => s,
                Err(status) => return status,
            };
            meas.levels.insert(id.to_owned(), *levels.add(i));
        }
        match (*localizer).0.localize(&meas) {
            Ok(est) => {
                *out_x = est.position.x;
                *out_y = est.position.y;
                FplocStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Creates a trailing moving-average filter over the last `window` positions.
///
/// # Safety
/// `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn fploc_smoother_new(
    window: usize,
    out: *mut *mut FplocSmoother,
) -> FplocStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out pointer");
            return FplocStatus::NullArgument;
        }
        match MovingAverage::new(window) {
            Ok(filter) => {
                *out = Box::into_raw(Box::new(FplocSmoother(filter)));
                FplocStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Pushes a raw position and writes the smoothed one.
///
/// # Safety
/// `smoother` must be a live handle; `out_x`/`out_y` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fploc_smoother_push(
    smoother: *mut FplocSmoother,
    x: f64,
    y: f64,
    out_x: *mut f64,
    out_y: *mut f64,
) -> FplocStatus {
    guarded(|| {
        if smoother.is_null() || out_x.is_null() || out_y.is_null() {
            set_error("null argument");
            return FplocStatus::NullArgument;
        }
        let smoothed = (*smoother).0.push(Point2::new(x, y));
        *out_x = smoothed.x;
        *out_y = smoothed.y;
        FplocStatus::Ok
    })
}

/// Clears the filter history, starting a new track.
///
/// # Safety
/// `smoother` must be a live handle or null (no-op).
#[no_mangle]
pub unsafe extern "C" fn fploc_smoother_reset(smoother: *mut FplocSmoother) {
    if !smoother.is_null() {
        (*smoother).0.reset();
    }
}

/// Frees a smoother handle. Null is a no-op.
///
/// # Safety
/// `smoother` must have come from [`fploc_smoother_new`] and not be freed
/// twice.
#[no_mangle]
pub unsafe extern "C" fn fploc_smoother_free(smoother: *mut FplocSmoother) {
    if !smoother.is_null() {
        drop(Box::from_raw(smoother));
    }
}
