//! C ABI over `roughlift`.
//!
//! Paths and lifts are opaque heap handles released with the matching
//! `*_free` function. Every fallible call returns an [`RlStatus`]; on failure
//! the message is kept per thread and read back with
//! [`rl_last_error_message`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use roughlift::generate::PathGenerator;
use roughlift::group::GroupPath;
use roughlift::lift::{rough_sobolev_norm, Lifter};
use roughlift::sobolev::sobolev_norm;
use roughlift::wavelet::default_family;
use roughlift::{Error, SampledPath, SobolevParams};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    InvalidInput = 3,
    GridMismatch = 4,
    GroupMembership = 5,
    ResourceLimit = 6,
    Io = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

impl From<&Error> for RlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::AlphaOutOfRange(_) | Error::IntegrabilityTooLow { .. } | Error::InfiniteP => {
                RlStatus::InvalidParams
            }
            Error::GridMismatch(_) | Error::DimensionMismatch { .. } => RlStatus::GridMismatch,
            Error::NotInGroup { .. } | Error::GroupMembershipViolated { .. } => {
                RlStatus::GroupMembership
            }
            Error::ResourceLimit(_) => RlStatus::ResourceLimit,
            Error::Io { .. } => RlStatus::Io,
            _ => RlStatus::InvalidInput,
        }
    }
}

/// A sampled path on `[0, 1]`.
pub struct RlPath(SampledPath);

/// A step-2 lift on `[0, 1]`.
pub struct RlLift(GroupPath);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, records any error or panic and maps it to a status.
fn guard(f: impl FnOnce() -> Result<(), (RlStatus, String)>) -> RlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            RlStatus::Panic
        }
    }
}

fn lib<T>(r: roughlift::Result<T>) -> Result<T, (RlStatus, String)> {
    r.map_err(|e| (RlStatus::from(&e), e.to_string()))
}

fn null(what: &str) -> (RlStatus, String) {
    (RlStatus::NullPointer, format!("{what} is null"))
}

fn params(alpha: f64, p: f64) -> Result<SobolevParams, (RlStatus, String)> {
    lib(SobolevParams::new(alpha, p))
}

/// Level `L` with `n = 2^L + 1`, if any.
fn level_of(n: usize) -> Option<u32> {
    let cells = n.checked_sub(1)?;
    cells.is_power_of_two().then(|| cells.trailing_zeros())
}

/// Copies `src` into a caller buffer of `cap` doubles.
unsafe fn copy_out(src: &[f64], out: *mut f64, cap: usize) -> Result<(), (RlStatus, String)> {
    if out.is_null() {
        return Err(null("output buffer"));
    }
    if cap < src.len() {
        return Err((
            RlStatus::BufferTooSmall,
            format!("buffer holds {cap} values, {} needed", src.len()),
        ));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), out, src.len());
    Ok(())
}

/// Builds a path from `n_samples × dim` row-major values on the uniform grid
/// of `[0, 1]`. `n_samples` must be `2^L + 1`.
///
/// # Safety
/// `values` must point to `n_samples * dim` readable doubles and `out` must be
/// a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn rl_path_from_samples(
    values: *const f64,
    n_samples: usize,
    dim: usize,
    out: *mut *mut RlPath,
) -> RlStatus {
    guard(|| {
        if values.is_null() {
            return Err(null("values"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let level = level_of(n_samples).ok_or_else(|| {
            (
                RlStatus::GridMismatch,
                format!("{n_samples} samples is not 2^L + 1"),
            )
        })?;
        let len = n_samples.checked_mul(dim).ok_or_else(|| {
            (
                RlStatus::ResourceLimit,
                "sample count overflows".to_string(),
            )
        })?;
        let data = std::slice::from_raw_parts(values, len).to_vec();
        let path = lib(SampledPath::new(0.0, 1.0, level, dim, data))?;
        *out = Box::into_raw(Box::new(RlPath(path)));
        Ok(())
    })
}

/// Generates a seeded random path with the given regularity.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn rl_path_generate(
    alpha: f64,
    p: f64,
    seed: u64,
    level: u32,
    dim: usize,
    out: *mut *mut RlPath,
) -> RlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = params(alpha, p)?;
        let path = lib(PathGenerator::new(default_family(), params).generate(seed, level, dim))?;
        *out = Box::into_raw(Box::new(RlPath(path)));
        Ok(())
    })
}

/// Number of samples, or 0 for a null handle.
///
/// # Safety
/// `path` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rl_path_len(path: *const RlPath) -> usize {
    path.as_ref().map_or(0, |p| p.0.len())
}

/// Dimension, or 0 for a null handle.
///
/// # Safety
/// `path` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rl_path_dim(path: *const RlPath) -> usize {
    path.as_ref().map_or(0, |p| p.0.dim())
}

/// Copies the `len × dim` row-major samples into `out`.
///
/// # Safety
/// `path` must be a live handle and `out` must hold `cap` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rl_path_values(
    path: *const RlPath,
    out: *mut f64,
    cap: usize,
) -> RlStatus {
    guard(|| {
        let path = path.as_ref().ok_or_else(|| null("path"))?;
        copy_out(path.0.values(), out, cap)
    })
}

/// Fractional Sobolev norm of the path.
///
/// # Safety
/// `path` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_path_sobolev_norm(
    path: *const RlPath,
    alpha: f64,
    p: f64,
    out: *mut f64,
) -> RlStatus {
    guard(|| {
        let path = path.as_ref().ok_or_else(|| null("path"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = lib(sobolev_norm(&path.0, &params(alpha, p)?))?;
        Ok(())
    })
}

/// Releases a path handle. Null is ignored.
///
/// # Safety
/// `path` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rl_path_free(path: *mut RlPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

/// Lifts `path` at wavelet truncation level `truncation`.
///
/// # Safety
/// `path` must be a live handle and `out` a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn rl_lift(
    path: *const RlPath,
    alpha: f64,
    p: f64,
    truncation: u32,
    out: *mut *mut RlLift,
) -> RlStatus {
    guard(|| {
        let path = path.as_ref().ok_or_else(|| null("path"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let lifter = Lifter::new(default_family(), params(alpha, p)?, truncation);
        let lift = lib(lifter.lift(&path.0))?;
        *out = Box::into_raw(Box::new(RlLift(lift.path)));
        Ok(())
    })
}

/// Number of grid points, or 0 for a null handle.
///
/// # Safety
/// `lift` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rl_lift_len(lift: *const RlLift) -> usize {
    lift.as_ref().map_or(0, |l| l.0.len())
}

/// Dimension of the underlying path, or 0 for a null handle.
///
/// # Safety
/// `lift` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rl_lift_dim(lift: *const RlLift) -> usize {
    lift.as_ref().map_or(0, |l| l.0.dim())
}

/// Copies the element at grid index `index`: `dim` first-level values into
/// `level1` and `dim × dim` row-major second-level values into `level2`.
///
/// # Safety
/// `lift` must be a live handle; the buffers must hold `dim` and `dim * dim`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rl_lift_element(
    lift: *const RlLift,
    index: usize,
    level1: *mut f64,
    level2: *mut f64,
) -> RlStatus {
    guard(|| {
        let lift = lift.as_ref().ok_or_else(|| null("lift"))?;
        if index >= lift.0.len() {
            return Err((
                RlStatus::InvalidInput,
                format!("index {index} out of range 0..{}", lift.0.len()),
            ));
        }
        let d = lift.0.dim();
        copy_out(lift.0.level1_at(index), level1, d)?;
        copy_out(lift.0.level2_at(index), level2, d * d)
    })
}

/// Rough Sobolev norm of the lift.
///
/// # Safety
/// `lift` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_lift_rough_norm(
    lift: *const RlLift,
    alpha: f64,
    p: f64,
    out: *mut f64,
) -> RlStatus {
    guard(|| {
        let lift = lift.as_ref().ok_or_else(|| null("lift"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = lib(rough_sobolev_norm(&lift.0, &params(alpha, p)?))?;
        Ok(())
    })
}

/// Releases a lift handle. Null is ignored.
///
/// # Safety
/// `lift` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rl_lift_free(lift: *mut RlLift) {
    if !lift.is_null() {
        drop(Box::from_raw(lift));
    }
}

/// Copies the last error message of this thread, NUL-terminated and truncated
/// to `cap` bytes. Returns the full length including the terminator, or 0 when
/// the last call succeeded.
///
/// # Safety
/// `buf` must be null or hold `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn rl_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            return 0;
        };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}
