#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! C ABI over the sl2radial library.
//!
//! Every fallible entry point returns an [`Sl2rStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and can
//! be read with [`sl2r_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use sl2radial::index::verify_index_with;
use sl2radial::model::ModelParams;
use sl2radial::scattering::sigma;
use sl2radial::solutions::{wronskian, SpectralPoint};
use sl2radial::specfun::{gauss_2f1, HypergeometricArgs};
use sl2radial::spectral::{bound_states, resolvent_kernel, spectral_density_kernel};
use sl2radial::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sl2rStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Pole = 3,
    InvalidC = 4,
    NoConvergence = 5,
    Parity = 6,
    AtEigenvalue = 7,
    Index = 8,
    Unwrap = 9,
    IllConditioned = 10,
    StepFailure = 11,
    Config = 12,
    BufferTooSmall = 13,
    Panic = 14,
}

impl From<&Error> for Sl2rStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Pole { .. } => Sl2rStatus::Pole,
            Error::InvalidC { .. } => Sl2rStatus::InvalidC,
            Error::NoConvergence { .. } => Sl2rStatus::NoConvergence,
            Error::Domain(_) => Sl2rStatus::Domain,
            Error::Parity(_) => Sl2rStatus::Parity,
            Error::AtEigenvalue(_) => Sl2rStatus::AtEigenvalue,
            Error::Index { .. } => Sl2rStatus::Index,
            Error::Unwrap { .. } => Sl2rStatus::Unwrap,
            Error::IllConditioned(_) => Sl2rStatus::IllConditioned,
            Error::StepFailure(_) => Sl2rStatus::StepFailure,
            Error::Config(_) => Sl2rStatus::Config,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2rComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Sl2rComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<Sl2rComplex> for Complex64 {
    fn from(z: Sl2rComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2rIndexReport {
    pub omega: [f64; 4],
    pub winding_closed: f64,
    pub winding_numeric: f64,
    pub bound_count: usize,
    pub pass: bool,
}

/// Opaque model handle.
pub struct Sl2rModel {
    params: ModelParams,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Null(&'static str),
    Lib(Error),
    Buffer { need: usize, cap: usize },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard<F>(f: F) -> Sl2rStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Sl2rStatus::Ok,
        Ok(Err(Failure::Null(name))) => {
            set_error(format!("null pointer passed as {name}"));
            Sl2rStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            Sl2rStatus::from(&e)
        }
        Ok(Err(Failure::Buffer { need, cap })) => {
            set_error(format!("buffer holds {cap} values, {need} needed"));
            Sl2rStatus::BufferTooSmall
        }
        Err(_) => {
            set_error("internal panic".into());
            Sl2rStatus::Panic
        }
    }
}

unsafe fn model<'a>(m: *const Sl2rModel) -> Result<&'a Sl2rModel, Failure> {
    m.as_ref().ok_or(Failure::Null("model"))
}

unsafe fn out<'a, T>(p: *mut T, name: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(name))
}

/// Creates a model for (mu, nu) and stores the handle in `*out_model`.
///
/// # Safety
/// `out_model` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sl2r_model_new(
    mu: f64,
    nu: f64,
    out_model: *mut *mut Sl2rModel,
) -> Sl2rStatus {
    guard(|| {
        let slot = out(out_model, "out_model")?;
        *slot = ptr::null_mut();
        let params = ModelParams::new(mu, nu)?;
        *slot = Box::into_raw(Box::new(Sl2rModel { params }));
        Ok(())
    })
}

/// # Safety
/// `model` must be null or a handle from [`sl2r_model_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl2r_model_free(model: *mut Sl2rModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// alpha = (1 + mu + nu)/2 and beta = (1 + mu - nu)/2.
///
/// # Safety
/// `model` must be a live handle; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sl2r_model_alpha_beta(
    model: *const Sl2rModel,
    out_alpha: *mut f64,
    out_beta: *mut f64,
) -> Sl2rStatus {
    guard(|| {
        let m = self::model(model)?;
        *out(out_alpha, "out_alpha")? = m.params.alpha();
        *out(out_beta, "out_beta")? = m.params.beta();
        Ok(())
    })
}

/// Scattering coefficient sigma(k) for k > 0.
///
/// # Safety
/// `model` must be a live handle; `out_sigma` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sl2r_sigma(
    model: *const Sl2rModel,
    k: f64,
    out_sigma: *mut Sl2rComplex,
) -> Sl2rStatus {
    guard(|| {
        let m = self::model(model)?;
        let o = out(out_sigma, "out_sigma")?;
        *o = sigma(&m.params, k)?.into();
        Ok(())
    })
}

/// # Safety
/// `model` must be a live handle; `out_count` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sl2r_bound_state_count(
    model: *const Sl2rModel,
    out_count: *mut usize,
) -> Sl2rStatus {
    guard(|| {
        let m = self::model(model)?;
        *out(out_count, "out_count")? = bound_states(&m.params).count;
        Ok(())
    })
}

/// Writes the bound-state zetas in decreasing order into `zetas[0..cap]`
/// and the count into `*out_len`. The energies are -zeta^2. When `cap` is
/// too small nothing is written to `zetas` and `*out_len` holds the count
/// needed.
///
/// # Safety
/// `zetas` must point to `cap` writable doubles (it may be null when `cap`
/// is zero); `out_len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sl2r_bound_state_levels(
    model: *const Sl2rModel,
    zetas: *mut f64,
    cap: usize,
    out_len: *mut usize,
) -> Sl2rStatus {
    guard(|| {
        let m = self::model(model)?;
        let len = out(out_len, "out_len")?;
        let report = bound_states(&m.params);
        *len = report.count;
        if report.count > cap {
            return Err(Failure::Buffer {
                need: report.count,
                cap,
            });
        }
        if report.count == 0 {
            return Ok(());
        }
        if zetas.is_null() {
            return Err(Failure::Null("zetas"));
        }
        let buf = std::slice::from_raw_parts_mut(zetas, report.count);
        for (b, l) in buf.iter_mut().zip(&report.levels) {
            *b = l.zeta;
        }
        Ok(())
    })
}

/// W(zeta) = [L, M] at an interior point Re zeta > 0.
///
/// # Safety
/// `model` must be a live handle; `out_w` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sl2r_wronskian(
    model: *const Sl2rModel,
    zeta: Sl2rComplex,
    out_w: *mut Sl2rComplex,
) -> Sl2rStatus {
    guard(|| {
        let m = self::model(model)?;
        let o = out(out_w, "out_w")?;
        let pt = SpectralPoint::interior(zeta.into())?;
        *o = wronskian(&m.params, pt)?.into();
        Ok(())
    })
}

/// Resolvent kernel R(-zeta^2; x, y) at an interior point.
///
/// # Safety
/// `model` must be a live handle; `out_r` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sl2r_resolvent_kernel(
    model: *const Sl2rModel,
    zeta: Sl2rComplex,
    x: f64,
    y: f64,
    out_r: *mut Sl2rComplex,
) -> Sl2rStatus {
    guard(|| {
        let m = self::model(model)?;
        let o = out(out_r, "out_r")?;
        let pt = SpectralPoint::interior(zeta.into())?;
        *o = resolvent_kernel(&m.params, pt, x, y)?.into();
        Ok(())
    })
}

/// Spectral density kernel p(k^2; x, y), which is real.
///
/// # Safety
/// `model` must be a live handle; `out_p` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sl2r_spectral_density(
    model: *const Sl2rModel,
    k: f64,
    x: f64,
    y: f64,
    out_p: *mut f64,
) -> Sl2rStatus {
    guard(|| {
        let m = self::model(model)?;
        let o = out(out_p, "out_p")?;
        *o = spectral_density_kernel(&m.params, k, x, y)?.re;
        Ok(())
    })
}

/// Compares the closed-form and numeric winding numbers with the bound-state
/// count on a truncated contour with edges at k_max and s_max.
///
/// # Safety
/// `model` must be a live handle; `out_report` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sl2r_verify_index(
    model: *const Sl2rModel,
    k_max: f64,
    s_max: f64,
    out_report: *mut Sl2rIndexReport,
) -> Sl2rStatus {
    guard(|| {
        let m = self::model(model)?;
        let o = out(out_report, "out_report")?;
        if !(k_max > 1.0 && s_max > 0.0) {
            return Err(Error::Domain(format!(
                "need k_max > 1 and s_max > 0, got {k_max} and {s_max}"
            ))
            .into());
        }
        let r = verify_index_with(&m.params, k_max, s_max)?;
        *o = Sl2rIndexReport {
            omega: r.omega,
            winding_closed: r.winding_closed,
            winding_numeric: r.winding_numeric,
            bound_count: r.bound_count,
            pass: r.pass,
        };
        Ok(())
    })
}

/// Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1.
///
/// # Safety
/// `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sl2r_gauss_2f1(
    a: Sl2rComplex,
    b: Sl2rComplex,
    c: Sl2rComplex,
    z: f64,
    out_value: *mut Sl2rComplex,
) -> Sl2rStatus {
    guard(|| {
        let o = out(out_value, "out_value")?;
        *o = gauss_2f1(HypergeometricArgs::new(a.into(), b.into(), c.into(), z))?.into();
        Ok(())
    })
}

/// Message for the last failed call on this thread, or null after a
/// successful call. The pointer stays valid until the next call into the
/// library from the same thread.
#[no_mangle]
pub extern "C" fn sl2r_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(s) => s.as_ptr(),
        None => ptr::null(),
    })
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn sl2r_status_name(status: Sl2rStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        Sl2rStatus::Ok => b"ok\0",
        Sl2rStatus::NullPointer => b"null pointer\0",
        Sl2rStatus::Domain => b"domain error\0",
        Sl2rStatus::Pole => b"gamma pole\0",
        Sl2rStatus::InvalidC => b"invalid hypergeometric c\0",
        Sl2rStatus::NoConvergence => b"no convergence\0",
        Sl2rStatus::Parity => b"odd index difference\0",
        Sl2rStatus::AtEigenvalue => b"at eigenvalue\0",
        Sl2rStatus::Index => b"index out of range\0",
        Sl2rStatus::Unwrap => b"phase unwrap failure\0",
        Sl2rStatus::IllConditioned => b"ill-conditioned fit\0",
        Sl2rStatus::StepFailure => b"step size underflow\0",
        Sl2rStatus::Config => b"invalid configuration\0",
        Sl2rStatus::BufferTooSmall => b"buffer too small\0",
        Sl2rStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}
