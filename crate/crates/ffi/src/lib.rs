//! C ABI over `dioclt`.
//!
//! Every function returns a `DIOCLT_*` status code; on failure the message is
//! available from [`dioclt_last_error_message`] on the same thread. Problems
//! are opaque handles created by [`dioclt_problem_new`] and released with
//! [`dioclt_problem_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use dioclt::{ApproximationProblem, Error, Mode, NormSpec, SamplePoint};

pub const DIOCLT_OK: i32 = 0;
pub const DIOCLT_ERR_NULL: i32 = 1;
pub const DIOCLT_ERR_INVALID: i32 = 2;
pub const DIOCLT_ERR_BUDGET: i32 = 3;
pub const DIOCLT_ERR_OVERFLOW: i32 = 4;
pub const DIOCLT_ERR_DIVERGENT: i32 = 5;
pub const DIOCLT_ERR_PANIC: i32 = 6;

pub const DIOCLT_NORM_SUP: u32 = 0;
pub const DIOCLT_NORM_EUCLIDEAN: u32 = 1;
/// `l^p` with the exponent passed separately.
pub const DIOCLT_NORM_P: u32 = 2;

/// Opaque problem handle.
pub struct DiocltProblem {
    inner: ApproximationProblem,
}

/// Closed-form constants. The congruence-only fields are NaN in
/// inhomogeneous mode.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DiocltConstants {
    pub c_mean: f64,
    pub sigma2_theorem: f64,
    pub sigma2_proof_variant: f64,
    pub omega_n: f64,
    pub zeta_n: f64,
    pub zeta_n_bound: f64,
    pub residue_double_sum: f64,
    pub residue_double_sum_bound: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

impl From<dioclt::ModelError> for Fail {
    fn from(e: dioclt::ModelError) -> Self {
        Fail::Lib(e.into())
    }
}

fn status(e: &Error) -> i32 {
    match e {
        Error::ResourceBudget { .. } => DIOCLT_ERR_BUDGET,
        Error::CountOverflow => DIOCLT_ERR_OVERFLOW,
        Error::Divergent(_) => DIOCLT_ERR_DIVERGENT,
        _ => DIOCLT_ERR_INVALID,
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DIOCLT_OK,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            DIOCLT_ERR_NULL
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            DIOCLT_ERR_PANIC
        }
    }
}

unsafe fn read<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn handle<'a>(p: *const DiocltProblem) -> Result<&'a ApproximationProblem, Fail> {
    p.as_ref().map(|h| &h.inner).ok_or(Fail::Null("problem"))
}

unsafe fn sample(
    problem: &ApproximationProblem,
    u: *const f64,
    u_len: usize,
    v: *const f64,
    v_len: usize,
) -> Result<SamplePoint, Fail> {
    let s = SamplePoint { u: read(u, u_len, "u")?.to_vec(), v: read(v, v_len, "v")?.to_vec() };
    s.check(problem)?;
    Ok(s)
}

fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    // SAFETY: non-null and caller-provided for writing
    unsafe { out.write(value) };
    Ok(())
}

/// Create an inhomogeneous problem. `weights` may be NULL for equal weights
/// `n/m`; `p` is read only for `DIOCLT_NORM_P`.
///
/// # Safety
/// `thetas` must point to `m` doubles, `weights` to `m` doubles or be NULL,
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioclt_problem_new(
    m: usize,
    n: usize,
    thetas: *const f64,
    weights: *const f64,
    norm_kind: u32,
    p: f64,
    out: *mut *mut DiocltProblem,
) -> i32 {
    guard(|| {
        let thetas = read(thetas, m, "thetas")?.to_vec();
        let norm = match norm_kind {
            DIOCLT_NORM_SUP => NormSpec::Sup,
            DIOCLT_NORM_EUCLIDEAN => NormSpec::Euclidean,
            DIOCLT_NORM_P => NormSpec::P(p).canonical()?,
            k => return Err(Error::InvalidArgument(format!("unknown norm kind {k}")).into()),
        };
        let mut problem = ApproximationProblem::new(m, n, thetas).with_norm(norm);
        if !weights.is_null() {
            problem.weights = read(weights, m, "weights")?.to_vec();
        }
        problem.validate()?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        *out = Box::into_raw(Box::new(DiocltProblem { inner: problem }));
        Ok(())
    })
}

/// Switch to congruence mode with `m + n` residues. The handle is unchanged
/// on failure.
///
/// # Safety
/// `problem` must be a live handle and `residues` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn dioclt_problem_set_congruence(
    problem: *mut DiocltProblem,
    residues: *const i64,
    len: usize,
    modulus: u64,
) -> i32 {
    guard(|| {
        let h = problem.as_mut().ok_or(Fail::Null("problem"))?;
        let mut next = h.inner.clone();
        next.mode = Mode::Congruence { residues: read(residues, len, "residues")?.to_vec(), modulus };
        next.validate()?;
        h.inner = next;
        Ok(())
    })
}

/// # Safety
/// `problem` must be NULL or a handle from [`dioclt_problem_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dioclt_problem_free(problem: *mut DiocltProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Exact count `Delta_T` at the sample `(u, v)`; `u` is row-major `m x n`.
///
/// # Safety
/// Pointers must be valid for their lengths; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioclt_delta(
    problem: *const DiocltProblem,
    u: *const f64,
    u_len: usize,
    v: *const f64,
    v_len: usize,
    t: f64,
    total: *mut u64,
    q_enumerated: *mut u64,
) -> i32 {
    guard(|| {
        let p = handle(problem)?;
        let s = sample(p, u, u_len, v, v_len)?;
        let r = dioclt::delta(p, &s, t)?;
        write_out(total, r.total, "total")?;
        if !q_enumerated.is_null() {
            *q_enumerated = r.q_enumerated;
        }
        Ok(())
    })
}

/// # Safety
/// `problem` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dioclt_constants(problem: *const DiocltProblem, tol: f64, out: *mut DiocltConstants) -> i32 {
    guard(|| {
        let c = dioclt::constants_for(handle(problem)?, tol)?;
        let (z, zb) = c.zeta_n.map_or((f64::NAN, f64::NAN), |z| (z.value, z.bound));
        let (s, sb) = c.residue_double_sum.map_or((f64::NAN, f64::NAN), |s| (s.value, s.bound));
        write_out(
            out,
            DiocltConstants {
                c_mean: c.c_mean,
                sigma2_theorem: c.sigma2_theorem,
                sigma2_proof_variant: c.sigma2_proof_variant,
                omega_n: c.omega_n,
                zeta_n: z,
                zeta_n_bound: zb,
                residue_double_sum: s,
                residue_double_sum_bound: sb,
            },
            "out",
        )
    })
}

/// Exact average of `Delta_T` over the random parameters.
///
/// # Safety
/// `problem` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dioclt_exact_mean(problem: *const DiocltProblem, t: f64, out: *mut f64) -> i32 {
    guard(|| {
        let v = dioclt::exact_mean_oracle(handle(problem)?, t)?;
        write_out(out, v, "out")
    })
}

/// Counts per annulus `e^s <= |q| < e^{s+1}`, `s < windows`, written to
/// `counts[0..windows]`.
///
/// # Safety
/// Pointers must be valid for their lengths; `counts` must hold `windows` values.
#[no_mangle]
pub unsafe extern "C" fn dioclt_window_counts(
    problem: *const DiocltProblem,
    u: *const f64,
    u_len: usize,
    v: *const f64,
    v_len: usize,
    windows: usize,
    counts: *mut u64,
) -> i32 {
    guard(|| {
        let p = handle(problem)?;
        let s = sample(p, u, u_len, v, v_len)?;
        let w = dioclt::window_counts(p, &s, windows)?;
        if counts.is_null() {
            return Err(Fail::Null("counts"));
        }
        slice::from_raw_parts_mut(counts, windows).copy_from_slice(&w.counts);
        Ok(())
    })
}

/// Message for the last failure on this thread, or NULL. The pointer is valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dioclt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
