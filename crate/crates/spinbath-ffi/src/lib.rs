//! C ABI for the spinbath library: opaque handles, status codes, and plain
//! scalar buffers so any language with a C FFI can drive the solver.
//!
//! Conventions:
//! * every function returns an [`SbStatus`]; outputs go through pointers;
//! * a solved steady state is an opaque handle created by
//!   [`sb_steady_state_new`] and released by [`sb_steady_state_free`];
//! * complex matrices cross the boundary as separate re/im buffers in
//!   row-major order;
//! * qubit indices are 1 (heat-bath qubit) and 2 (spin-bath qubit).
//!
//! The generated header is written to `include/spinbath.h` at build time.

use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use spinbath::dynamics::{self, SteadyState};
use spinbath::model::ModelParams;
use spinbath::quantumness::{self, Order, Regime};
use spinbath::state::BlochVector;
use spinbath::Error;

/// Status code returned by every FFI entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    SingularSystem = 3,
    NotConverged = 4,
    NoBoundary = 5,
    InvalidArgument = 6,
    InternalPanic = 7,
}

/// Spin-bath temperature limit selector for the closed-form results.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbRegime {
    LowT2 = 0,
    HighT2 = 1,
}

/// Machine parameters; same semantics and constraints as the library's
/// `ModelParams` (temperatures and rates positive, g non-negative).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SbParams {
    pub omega: f64,
    pub g: f64,
    pub t1: f64,
    pub t2: f64,
    pub p1: f64,
    pub p2: f64,
}

/// Closed-form critical temperatures per condition and their maximum.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SbCritTemps {
    pub per_condition: [f64; 3],
    pub max: f64,
}

/// Opaque solved steady state.
pub struct SbSteadyState {
    inner: SteadyState,
}

fn status_of(err: &Error) -> SbStatus {
    match err {
        Error::InvalidParams(_) | Error::InvalidSweep(_) => SbStatus::InvalidParams,
        Error::SingularSystem { .. } => SbStatus::SingularSystem,
        Error::ResidualTooLarge { .. }
        | Error::DriftExceeded { .. }
        | Error::UnstableStep { .. } => SbStatus::NotConverged,
        Error::NoSignChange { .. } => SbStatus::NoBoundary,
        _ => SbStatus::InvalidArgument,
    }
}

fn to_params(p: &SbParams) -> Result<ModelParams, Error> {
    ModelParams::new(p.omega, p.g, p.t1, p.t2, p.p1, p.p2)
}

fn regime_of(r: SbRegime, t2: f64) -> (Regime, Option<f64>) {
    match r {
        SbRegime::LowT2 => (Regime::LowT2, None),
        SbRegime::HighT2 => (Regime::HighT2, Some(t2)),
    }
}

/// Run a fallible computation, shielding the C caller from panics.
fn guarded(job: impl FnOnce() -> SbStatus) -> SbStatus {
    catch_unwind(AssertUnwindSafe(job)).unwrap_or(SbStatus::InternalPanic)
}

/// Solve the exact steady state and hand back an owned opaque handle.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer. On
/// `Ok` it receives a handle that must be released with
/// [`sb_steady_state_free`]; on any other status it is set to null.
#[no_mangle]
pub unsafe extern "C" fn sb_steady_state_new(
    params: SbParams,
    out: *mut *mut SbSteadyState,
) -> SbStatus {
    if out.is_null() {
        return SbStatus::NullPointer;
    }
    unsafe { *out = std::ptr::null_mut() };
    guarded(
        || match to_params(&params).and_then(|p| dynamics::steady_state(&p)) {
            Ok(inner) => {
                let handle = Box::new(SbSteadyState { inner });
                unsafe { *out = Box::into_raw(handle) };
                SbStatus::Ok
            }
            Err(e) => status_of(&e),
        },
    )
}

/// Release a handle obtained from [`sb_steady_state_new`]. Null is a no-op.
///
/// # Safety
/// `ss` must be null or a pointer previously returned by
/// [`sb_steady_state_new`] that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn sb_steady_state_free(ss: *mut SbSteadyState) {
    if !ss.is_null() {
        drop(unsafe { Box::from_raw(ss) });
    }
}

/// Copy the 4×4 joint steady state into caller buffers, row-major.
///
/// # Safety
/// `ss` must be a live handle; `out_re` and `out_im` must each point to at
/// least 16 writable f64 slots.
#[no_mangle]
pub unsafe extern "C" fn sb_steady_state_rho12(
    ss: *const SbSteadyState,
    out_re: *mut f64,
    out_im: *mut f64,
) -> SbStatus {
    if ss.is_null() || out_re.is_null() || out_im.is_null() {
        return SbStatus::NullPointer;
    }
    let entries = unsafe { (*ss).inner.rho12.matrix().entries() };
    for (i, e) in entries.iter().enumerate() {
        unsafe {
            *out_re.add(i) = e.re;
            *out_im.add(i) = e.im;
        }
    }
    SbStatus::Ok
}

/// Bloch vector of one reduced qubit (1 = heat bath, 2 = spin bath).
///
/// # Safety
/// `ss` must be a live handle; `out_xyz` must point to at least 3 writable
/// f64 slots.
#[no_mangle]
pub unsafe extern "C" fn sb_steady_state_bloch(
    ss: *const SbSteadyState,
    qubit: u32,
    out_xyz: *mut f64,
) -> SbStatus {
    if ss.is_null() || out_xyz.is_null() {
        return SbStatus::NullPointer;
    }
    let r = match qubit {
        1 => unsafe { (*ss).inner.bloch1 },
        2 => unsafe { (*ss).inner.bloch2 },
        _ => return SbStatus::InvalidArgument,
    };
    unsafe {
        *out_xyz.add(0) = r.x;
        *out_xyz.add(1) = r.y;
        *out_xyz.add(2) = r.z;
    }
    SbStatus::Ok
}

/// ‖L·vec(ρ)‖∞ of the returned solution.
///
/// # Safety
/// `ss` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_steady_state_residual(
    ss: *const SbSteadyState,
    out: *mut f64,
) -> SbStatus {
    if ss.is_null() || out.is_null() {
        return SbStatus::NullPointer;
    }
    unsafe { *out = (*ss).inner.residual };
    SbStatus::Ok
}

/// l1-norm of coherence of one reduced qubit.
///
/// # Safety
/// `ss` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_steady_state_coherence(
    ss: *const SbSteadyState,
    qubit: u32,
    out: *mut f64,
) -> SbStatus {
    if ss.is_null() || out.is_null() {
        return SbStatus::NullPointer;
    }
    let c = match qubit {
        1 => unsafe { (*ss).inner.rho1.l1_coherence() },
        2 => unsafe { (*ss).inner.rho2.l1_coherence() },
        _ => return SbStatus::InvalidArgument,
    };
    unsafe { *out = c };
    SbStatus::Ok
}

/// Stabilizer-octahedron exterior test on a Bloch vector.
///
/// # Safety
/// `out_max_sum` and `out_has_magic` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_magic_report(
    rx: f64,
    ry: f64,
    rz: f64,
    tolerance: f64,
    out_max_sum: *mut f64,
    out_has_magic: *mut bool,
) -> SbStatus {
    if out_max_sum.is_null() || out_has_magic.is_null() {
        return SbStatus::NullPointer;
    }
    let report = quantumness::magic_report(&BlochVector::new(rx, ry, rz), tolerance);
    unsafe {
        *out_max_sum = report.max_sum;
        *out_has_magic = report.has_magic;
    }
    SbStatus::Ok
}

/// Leading-order l1-coherence of the reduced heat-bath qubit (ω = 1 only).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_coherence_perturbative(params: SbParams, out: *mut f64) -> SbStatus {
    if out.is_null() {
        return SbStatus::NullPointer;
    }
    guarded(
        || match to_params(&params).and_then(|p| quantumness::coherence_perturbative(&p)) {
            Ok(c) => {
                unsafe { *out = c };
                SbStatus::Ok
            }
            Err(e) => status_of(&e),
        },
    )
}

/// Order-1 or order-2 expansions of the three bound Bloch sums (ω = 1).
///
/// # Safety
/// `out_sums` must point to at least 3 writable f64 slots.
#[no_mangle]
pub unsafe extern "C" fn sb_bloch_sums_perturbative(
    params: SbParams,
    order: u32,
    out_sums: *mut f64,
) -> SbStatus {
    if out_sums.is_null() {
        return SbStatus::NullPointer;
    }
    let order = match order {
        1 => Order::First,
        2 => Order::Second,
        _ => return SbStatus::InvalidArgument,
    };
    guarded(|| {
        match to_params(&params).and_then(|p| quantumness::bloch_sums_perturbative(&p, order)) {
            Ok(sums) => {
                for (i, s) in sums.iter().enumerate() {
                    unsafe { *out_sums.add(i) = *s };
                }
                SbStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Closed-form critical heat-bath temperatures for rates p1 = p, p2 = μp.
/// `t2` is read in the high-T2 regime only.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_critical_temperature(
    p: f64,
    mu: f64,
    regime: SbRegime,
    t2: f64,
    out: *mut SbCritTemps,
) -> SbStatus {
    if out.is_null() {
        return SbStatus::NullPointer;
    }
    let (regime, t2) = regime_of(regime, t2);
    guarded(
        || match quantumness::critical_temperature_asymmetric(p, mu, regime, t2) {
            Ok(r) => {
                unsafe {
                    *out = SbCritTemps {
                        per_condition: [r.t_crit_1, r.t_crit_2, r.t_crit_3],
                        max: r.t_crit,
                    };
                }
                SbStatus::Ok
            }
            Err(e) => status_of(&e),
        },
    )
}

/// Allowed coupling windows at heat-bath temperature `t1` for rates
/// p1 = p, p2 = μp. Per condition i, `out_present[i]` says whether a
/// window exists and `out_lo[i]`/`out_hi[i]` carry its endpoints (zeroed
/// when absent). `t2` is read in the high-T2 regime only.
///
/// # Safety
/// `out_lo`, `out_hi`, and `out_present` must each point to at least 3
/// writable slots.
#[no_mangle]
pub unsafe extern "C" fn sb_g_window(
    p: f64,
    mu: f64,
    t1: f64,
    regime: SbRegime,
    t2: f64,
    out_lo: *mut f64,
    out_hi: *mut f64,
    out_present: *mut bool,
) -> SbStatus {
    if out_lo.is_null() || out_hi.is_null() || out_present.is_null() {
        return SbStatus::NullPointer;
    }
    let (regime, t2) = regime_of(regime, t2);
    guarded(|| {
        let window = quantumness::asymmetric_coefficients(p, mu, regime, t2)
            .and_then(|c| quantumness::g_window_with(&c, t1));
        match window {
            Ok(w) => {
                for (i, c) in w.conditions.iter().enumerate() {
                    unsafe {
                        *out_present.add(i) = c.is_some();
                        *out_lo.add(i) = c.map_or(0.0, |iv| iv.lo);
                        *out_hi.add(i) = c.map_or(0.0, |iv| iv.hi);
                    }
                }
                SbStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Bisect the exact magic boundary in heat-bath temperature inside
/// [t1_lo, t1_hi]; the `t1` field of `params` is ignored.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_magic_boundary_exact(
    params: SbParams,
    t1_lo: f64,
    t1_hi: f64,
    out: *mut f64,
) -> SbStatus {
    if out.is_null() {
        return SbStatus::NullPointer;
    }
    guarded(|| {
        match to_params(&params).and_then(|p| quantumness::magic_boundary_exact(&p, (t1_lo, t1_hi)))
        {
            Ok(t) => {
                unsafe { *out = t };
                SbStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn sb_status_message(status: SbStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        SbStatus::Ok => b"ok\0",
        SbStatus::NullPointer => b"null pointer argument\0",
        SbStatus::InvalidParams => b"invalid model parameters\0",
        SbStatus::SingularSystem => b"singular linear system\0",
        SbStatus::NotConverged => b"solution failed its numerical bounds\0",
        SbStatus::NoBoundary => b"no sign change in the search bracket\0",
        SbStatus::InvalidArgument => b"invalid argument\0",
        SbStatus::InternalPanic => b"internal panic\0",
    };
    msg.as_ptr() as *const c_char
}
