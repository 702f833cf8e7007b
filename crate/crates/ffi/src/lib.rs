//! C ABI for `coprime-bb`.
//!
//! Every function returns a [`CbbStatus`]; results go through out-pointers.
//! Codes are opaque [`CbbCode`] handles released with [`cbb_code_free`].
//! After a non-OK status, [`cbb_last_error_message`] describes the failure
//! on the calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use coprime_bb::simkit::{run_experiment, LogicalCell, NoiseConfig, PipelineConfig, StopRule};
use coprime_bb::syndist::{analyze, p_fail_theory, AnalysisOptions};
use coprime_bb::{BbCode, CodeSpec, Error, Sector};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CbbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    InvariantViolated = 4,
    BudgetExceeded = 5,
    Panic = 6,
}

/// Opaque code handle.
pub struct CbbCode {
    code: BbCode,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CbbCodeParams {
    /// Circulant size N.
    pub n_block: usize,
    /// Physical qubits, 2N.
    pub n_qubits: usize,
    pub k: usize,
    pub deg_g: usize,
    pub r_x: usize,
    pub r_z: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CbbSyndromeReport {
    pub dim: usize,
    pub d_lower: usize,
    /// -1 when unknown.
    pub d_exact: i64,
    /// -1 when unknown.
    pub d_upper: i64,
    pub singleton_limit: usize,
    pub t_s: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CbbCellResult {
    pub trials: u64,
    pub failures: u64,
    pub rate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> CbbStatus {
    match e {
        Error::Parse { .. } => CbbStatus::Parse,
        Error::InvariantViolated(_) => CbbStatus::InvariantViolated,
        Error::BudgetExceeded { .. } => CbbStatus::BudgetExceeded,
        _ => CbbStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status plus a message.
fn guard(f: impl FnOnce() -> Result<(), CbbStatus>) -> CbbStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CbbStatus::Ok,
        Ok(Err(status)) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            CbbStatus::Panic
        }
    }
}

fn fail(e: Error) -> CbbStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(what: &str) -> CbbStatus {
    set_error(format!("{what} is null"));
    CbbStatus::NullPointer
}

unsafe fn slice<'a>(ptr: *const usize, len: usize, what: &str) -> Result<&'a [usize], CbbStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn code_ref<'a>(code: *const CbbCode) -> Result<&'a BbCode, CbbStatus> {
    code.as_ref().map(|c| &c.code).ok_or_else(|| null("code"))
}

fn sector_of(sector: u32) -> Result<Sector, CbbStatus> {
    match sector {
        0 => Ok(Sector::X),
        1 => Ok(Sector::Z),
        s => {
            set_error(format!("sector must be 0 (X) or 1 (Z), got {s}"));
            Err(CbbStatus::InvalidArgument)
        }
    }
}

fn publish(code: BbCode, out: *mut *mut CbbCode) {
    // SAFETY: callers check `out` for null before building.
    unsafe { *out = Box::into_raw(Box::new(CbbCode { code })) };
}

/// Builds the code with `a(z) = sum z^a[i]` and `b(z) = sum z^b[i]` modulo
/// `z^n - 1`.
///
/// # Safety
/// `a` and `b` must point to `a_len` and `b_len` readable values (or be null
/// with length 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cbb_code_new(
    n: usize,
    a: *const usize,
    a_len: usize,
    b: *const usize,
    b_len: usize,
    out: *mut *mut CbbCode,
) -> CbbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let a = slice(a, a_len, "a")?;
        let b = slice(b, b_len, "b")?;
        let code = BbCode::from_exponents(n, a, b).map_err(fail)?;
        publish(code, out);
        Ok(())
    })
}

/// Builds a code from a `key = value` code file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cbb_code_from_spec_file(
    path: *const c_char,
    out: *mut *mut CbbCode,
) -> CbbStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let path = CStr::from_ptr(path).to_str().map_err(|_| {
            set_error("path is not valid UTF-8");
            CbbStatus::InvalidArgument
        })?;
        let spec = CodeSpec::from_file(path).map_err(fail)?;
        let code = BbCode::build(&spec).map_err(fail)?;
        publish(code, out);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `code` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cbb_code_free(code: *mut CbbCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cbb_code_params(
    code: *const CbbCode,
    out: *mut CbbCodeParams,
) -> CbbStatus {
    guard(|| {
        let code = code_ref(code)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = CbbCodeParams {
            n_block: code.n(),
            n_qubits: code.num_qubits(),
            k: code.k(),
            deg_g: code.deg_g(),
            r_x: code.r_x(),
            r_z: code.r_z(),
        };
        Ok(())
    })
}

/// Distance report of the syndrome code; `sector` is 0 for X checks, 1 for Z.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cbb_code_syndrome_report(
    code: *const CbbCode,
    sector: u32,
    out: *mut CbbSyndromeReport,
) -> CbbStatus {
    guard(|| {
        let code = code_ref(code)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let r = analyze(code, sector_of(sector)?, &AnalysisOptions::default()).map_err(fail)?;
        let opt = |v: Option<usize>| v.map_or(-1, |d| d as i64);
        *out = CbbSyndromeReport {
            dim: r.dim,
            d_lower: r.d_lower,
            d_exact: opt(r.d_exact),
            d_upper: opt(r.d_upper),
            singleton_limit: r.singleton_limit,
            t_s: r.t_s,
        };
        Ok(())
    })
}

/// Probability that more than `t` of `n` bits flip at rate `q`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cbb_p_fail_theory(n: usize, t: usize, q: f64, out: *mut f64) -> CbbStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if !(0.0..=1.0).contains(&q) {
            set_error(format!("q must lie in [0, 1], got {q}"));
            return Err(CbbStatus::InvalidArgument);
        }
        *out = p_fail_theory(n, t, q);
        Ok(())
    })
}

/// Logical error rate of one grid cell with the default pipeline (X checks,
/// BP syndrome stage, BP+OSD-2 data stage) on a single worker.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cbb_simulate_cell(
    code: *const CbbCode,
    p: f64,
    q: f64,
    rounds: usize,
    seed: u64,
    max_trials: u64,
    min_failures: u64,
    out: *mut CbbCellResult,
) -> CbbStatus {
    guard(|| {
        let code = code_ref(code)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let report = analyze(code, Sector::X, &AnalysisOptions::default()).map_err(fail)?;
        let cell = LogicalCell {
            code: Arc::new(code.clone()),
            report: Arc::new(report),
            noise: NoiseConfig::new(p, q).map_err(fail)?,
            pipeline: PipelineConfig {
                rounds,
                ..PipelineConfig::default()
            },
        };
        let stop = StopRule {
            max_trials,
            min_failures,
        };
        let r = run_experiment("ffi", &[cell], stop, seed, 1)
            .map_err(fail)?
            .remove(0);
        *out = CbbCellResult {
            trials: r.trials,
            failures: r.failures,
            rate: r.rate,
            ci_lo: r.ci_lo,
            ci_hi: r.ci_hi,
        };
        Ok(())
    })
}

/// Copies the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`) and returns the full message length plus one.
///
/// # Safety
/// `buf` must have `len` writable bytes, or be null with `len` 0.
#[no_mangle]
pub unsafe extern "C" fn cbb_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        bytes.len() + 1
    })
}

/// Library version, NUL-terminated, static.
#[no_mangle]
pub extern "C" fn cbb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
