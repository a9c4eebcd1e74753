//! C ABI over the `excursion` library.
//!
//! Every function returns an [`ExcStatus`]; results go through out-pointers.
//! On failure, [`exc_last_error`] returns a message for the calling thread,
//! valid until that thread's next call into this library.
//!
//! Handles are opaque and owned by the caller: create with `exc_model_ou`,
//! `exc_model_bm` or `exc_straddle_new`, release with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use excursion::montecarlo::sample_straddle_exact;
use excursion::verify::{run_all, SuiteOptions};
use excursion::{Diffusion, Error, InverseLocalTime, Model, StraddleLaw};

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcStatus {
    Ok = 0,
    /// Argument outside the domain of the function.
    Domain = 1,
    /// A quadrature or series did not reach its tolerance.
    NonConvergence = 2,
    /// The quantity needs a finite speed measure.
    Unavailable = 3,
    /// The operation is not defined for this model.
    Unsupported = 4,
    /// Invalid configuration parameter.
    Parameter = 5,
    /// A simulation exceeded its step budget.
    Budget = 6,
    NullPointer = 7,
    /// Internal panic; the library state is unaffected.
    Panic = 8,
}

/// Reflected diffusion model.
pub struct ExcModel(Model);

/// Straddling-excursion laws of a model at a fixed rate.
pub struct ExcStraddleLaw(StraddleLaw<Model>);

/// Verification suite counts.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExcVerifySummary {
    pub passed: usize,
    pub failed: usize,
    pub non_converged: usize,
    pub unavailable: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ExcStatus {
    match e {
        Error::Domain { .. } => ExcStatus::Domain,
        Error::NonConvergence { .. } => ExcStatus::NonConvergence,
        Error::Unavailable { .. } => ExcStatus::Unavailable,
        Error::Unsupported { .. } => ExcStatus::Unsupported,
        Error::Parameter(_) => ExcStatus::Parameter,
        Error::Budget { .. } => ExcStatus::Budget,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> ExcStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ExcStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(name))) => {
            set_error(&format!("null pointer passed for {name}"));
            ExcStatus::NullPointer
        }
        Err(_) => {
            set_error("internal panic");
            ExcStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(name))
}

unsafe fn write<T>(p: *mut T, value: T, name: &'static str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(Fail::Null(name));
    }
    p.write(value);
    Ok(())
}

/// Message describing the last failure on this thread (empty after success).
#[no_mangle]
pub extern "C" fn exc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn exc_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => c"unknown",
    };
    VERSION.as_ptr()
}

/// Reflected Ornstein-Uhlenbeck process with drift rate `gamma > 0`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn exc_model_ou(gamma: f64, out: *mut *mut ExcModel) -> ExcStatus {
    guard(|| {
        let m = Model::ou(gamma)?;
        write(out, Box::into_raw(Box::new(ExcModel(m))), "out")
    })
}

/// Reflected Brownian motion.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn exc_model_bm(out: *mut *mut ExcModel) -> ExcStatus {
    guard(|| write(out, Box::into_raw(Box::new(ExcModel(Model::bm()))), "out"))
}

/// Releases a model handle; null is ignored.
///
/// # Safety
/// `model` must come from `exc_model_ou`/`exc_model_bm` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn exc_model_free(model: *mut ExcModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Which scalar function of a model to evaluate.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcQuantity {
    /// Lévy density of the inverse local time, argument `t`.
    Nu = 0,
    /// Excursion length tail, argument `t`.
    NuTail = 1,
    /// Laplace exponent, argument `lambda`.
    Phi = 2,
    /// `p(t; 0, 0)`, argument `t`.
    P00 = 3,
    /// Scale function, argument `x`.
    Scale = 4,
    /// Drift of the process conditioned to avoid 0, argument `x`.
    UpwardDrift = 5,
}

/// Evaluates a one-argument model function.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exc_model_eval(
    model: *const ExcModel,
    quantity: ExcQuantity,
    arg: f64,
    out: *mut f64,
) -> ExcStatus {
    guard(|| {
        let m = &deref(model, "model")?.0;
        let v = match quantity {
            ExcQuantity::Nu => m.nu(arg)?,
            ExcQuantity::NuTail => m.nu_tail(arg)?,
            ExcQuantity::Phi => m.phi(arg)?,
            ExcQuantity::P00 => m.p00(arg)?,
            ExcQuantity::Scale => m.scale(arg)?,
            ExcQuantity::UpwardDrift => m.upward_drift(arg)?,
        };
        write(out, v, "out")
    })
}

/// Transition density of the process killed at 0, w.r.t. the speed measure.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exc_phat(model: *const ExcModel, t: f64, x: f64, y: f64, out: *mut f64) -> ExcStatus {
    guard(|| {
        let v = deref(model, "model")?.0.phat(t, x, y)?;
        write(out, v, "out")
    })
}

/// Density of the first hitting time of 0 from `x`, at time `t`.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exc_f_hit(model: *const ExcModel, x: f64, t: f64, out: *mut f64) -> ExcStatus {
    guard(|| {
        let v = deref(model, "model")?.0.f_hit(x, t)?;
        write(out, v, "out")
    })
}

/// Straddle laws of `model` at rate `alpha > 0`. The model is copied.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exc_straddle_new(
    model: *const ExcModel,
    alpha: f64,
    out: *mut *mut ExcStraddleLaw,
) -> ExcStatus {
    guard(|| {
        let law = StraddleLaw::new(deref(model, "model")?.0, alpha)?;
        write(out, Box::into_raw(Box::new(ExcStraddleLaw(law))), "out")
    })
}

/// Releases a straddle-law handle; null is ignored.
///
/// # Safety
/// `law` must come from `exc_straddle_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn exc_straddle_free(law: *mut ExcStraddleLaw) {
    if !law.is_null() {
        drop(Box::from_raw(law));
    }
}

/// Which straddle-law function to evaluate.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcStraddleQuantity {
    /// Density of `D_T − G_T`.
    DensityDelta = 0,
    /// Density of `T − G_T`.
    DensityAge = 1,
    /// Density of `D_T − T`.
    DensityResidual = 2,
    /// Density of `G_T`.
    DensityLastZero = 3,
    CdfDelta = 4,
    CdfAge = 5,
    CdfResidual = 6,
    CdfLastZero = 7,
    /// `E[exp(−g Δ_T)]`, argument `g ≥ 0`.
    LaplaceDelta = 8,
}

/// Evaluates a straddle-law function.
///
/// # Safety
/// `law` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exc_straddle_eval(
    law: *const ExcStraddleLaw,
    quantity: ExcStraddleQuantity,
    arg: f64,
    out: *mut f64,
) -> ExcStatus {
    guard(|| {
        let l = &deref(law, "law")?.0;
        let v = match quantity {
            ExcStraddleQuantity::DensityDelta => l.density_delta(arg)?,
            ExcStraddleQuantity::DensityAge => l.density_t_minus_g(arg)?,
            ExcStraddleQuantity::DensityResidual => l.density_d_minus_t(arg)?,
            ExcStraddleQuantity::DensityLastZero => l.density_g(arg)?,
            ExcStraddleQuantity::CdfDelta => l.cdf_delta(arg)?,
            ExcStraddleQuantity::CdfAge => l.cdf_t_minus_g(arg)?,
            ExcStraddleQuantity::CdfResidual => l.cdf_d_minus_t(arg)?,
            ExcStraddleQuantity::CdfLastZero => l.cdf_g(arg)?,
            ExcStraddleQuantity::LaplaceDelta => l.laplace_delta(arg)?,
        };
        write(out, v, "out")
    })
}

/// Draws `n` exact samples of `(G_T, T − G_T, D_T − T)` for `T ~ Exp(alpha)`
/// into three caller buffers of length `n`. `gamma = 0` is Brownian motion.
/// The samples are a function of `(gamma, alpha, n, seed)` only.
///
/// # Safety
/// Each buffer must be valid for `n` writes of `double`.
#[no_mangle]
pub unsafe extern "C" fn exc_sample_straddle_exact(
    gamma: f64,
    alpha: f64,
    n: usize,
    seed: u64,
    g: *mut f64,
    t_minus_g: *mut f64,
    d_minus_t: *mut f64,
) -> ExcStatus {
    guard(|| {
        for (p, name) in [(g, "g"), (t_minus_g, "t_minus_g"), (d_minus_t, "d_minus_t")] {
            if p.is_null() {
                return Err(Fail::Null(name));
            }
        }
        let batch = sample_straddle_exact(gamma, alpha, n, seed)?;
        std::slice::from_raw_parts_mut(g, n).copy_from_slice(&batch.g);
        std::slice::from_raw_parts_mut(t_minus_g, n).copy_from_slice(&batch.t_minus_g);
        std::slice::from_raw_parts_mut(d_minus_t, n).copy_from_slice(&batch.d_minus_t);
        Ok(())
    })
}

/// Runs the identity battery for one model at rate `alpha` and reports counts.
/// Returns `EXC_STATUS_OK` even when checks fail; inspect the summary.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exc_verify(model: *const ExcModel, alpha: f64, out: *mut ExcVerifySummary) -> ExcStatus {
    guard(|| {
        let m = deref(model, "model")?.0;
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::Parameter(format!("alpha must be > 0, got {alpha}")).into());
        }
        let r = run_all(&[m], &[alpha], SuiteOptions::default());
        write(
            out,
            ExcVerifySummary {
                passed: r.passed,
                failed: r.failed,
                non_converged: r.non_converged,
                unavailable: r.unavailable,
            },
            "out",
        )
    })
}
