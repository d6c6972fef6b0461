//! C ABI for the zetadyn toolkit.
//!
//! Conventions: functions return `ZdStatus` and write results through out
//! pointers; `ZdFunction` is an opaque handle created by the constructors and
//! released with `zd_function_free`; on any non-OK status,
//! `zd_last_error_message` returns a thread-local, NUL-terminated description
//! valid until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use zetadyn::dynamics::{
    apply_map, fixed_point_report, Classification, DynamicsError, MapKind, ReportOptions, Source,
};
use zetadyn::rotation::{gamma_to_theta, table1_row};
use zetadyn::special::{AnalyticFunction, RationalFunction, SpecialError};
use zetadyn::zeros::{find_zeros, hardy_z};

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

/// Status codes returned by every fallible entry point.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Pole = 3,
    AccuracyUnreachable = 4,
    NotAFixedPoint = 5,
    QuadratureNonConvergent = 6,
    DomainError = 7,
    BufferTooSmall = 8,
    Internal = 9,
}

/// Complex number as a plain pair.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct ZdComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ZdComplex {
    fn from(z: Complex64) -> Self {
        ZdComplex { re: z.re, im: z.im }
    }
}

impl From<ZdComplex> for Complex64 {
    fn from(z: ZdComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Value/derivative pair with an absolute error bound on the value.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct ZdEval {
    pub value: ZdComplex,
    pub derivative: ZdComplex,
    pub abs_error_bound: f64,
}

/// Which map to build from the function: 0 = nu, 1 = relaxed Newton.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZdMapKind {
    Nu = 0,
    Newton = 1,
}

/// Fixed-point classification: 0 attracting, 1 indifferent, 2 repelling.
pub const ZD_CLASS_ATTRACTING: i32 = 0;
pub const ZD_CLASS_INDIFFERENT: i32 = 1;
pub const ZD_CLASS_REPELLING: i32 = 2;

/// One fixed point: location, source (zero/pole of g), order, multiplier,
/// holomorphic index (closed form and, when requested, quadrature), class.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct ZdFixedPointReport {
    pub alpha: ZdComplex,
    /// 0 = zero of g, 1 = pole of g
    pub is_pole: i32,
    pub order: u32,
    pub lambda: ZdComplex,
    pub iota_closed: ZdComplex,
    /// meaningful only when has_iota_quad != 0
    pub iota_quad: ZdComplex,
    pub has_iota_quad: i32,
    /// ZD_CLASS_* value
    pub classification: i32,
    /// |lambda| - 1, signed
    pub margin: f64,
}

/// Opaque function handle.
pub struct ZdFunction {
    inner: AnalyticFunction,
}

fn map_kind(kind: ZdMapKind, kappa: ZdComplex) -> Result<MapKind, DynamicsError> {
    match kind {
        ZdMapKind::Nu => Ok(MapKind::Nu),
        ZdMapKind::Newton => MapKind::newton(kappa.into()),
    }
}

fn status_of_special(e: &SpecialError) -> ZdStatus {
    match e {
        SpecialError::PoleAt1 | SpecialError::PoleHit(_) => ZdStatus::Pole,
        SpecialError::AccuracyUnreachable { .. } => ZdStatus::AccuracyUnreachable,
        SpecialError::OverflowDomain { .. } => ZdStatus::DomainError,
        SpecialError::NonFinite | SpecialError::InvalidTarget(_) => ZdStatus::InvalidArgument,
    }
}

fn status_of_dynamics(e: &DynamicsError) -> ZdStatus {
    match e {
        DynamicsError::MapPole => ZdStatus::Pole,
        DynamicsError::NotAFixedPoint(_) => ZdStatus::NotAFixedPoint,
        DynamicsError::OrderUndetermined(_) => ZdStatus::NotAFixedPoint,
        DynamicsError::QuadratureNonConvergent { .. } => ZdStatus::QuadratureNonConvergent,
        DynamicsError::InvalidKappa(_) => ZdStatus::InvalidArgument,
        DynamicsError::UnsupportedFunction(_) => ZdStatus::InvalidArgument,
        DynamicsError::Eval(e) => status_of_special(e),
        DynamicsError::Contour(_) => ZdStatus::Internal,
    }
}

fn guarded<F: FnOnce() -> ZdStatus>(f: F) -> ZdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            ZdStatus::Internal
        }
    }
}

/// Last error description for this thread; empty string when no error has
/// occurred. The pointer stays valid until the next FFI call on this thread.
#[no_mangle]
pub extern "C" fn zd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Create a registry function by name: "zeta", "xi", "eta" or "cosh".
/// Returns NULL on unknown names.
#[no_mangle]
pub unsafe extern "C" fn zd_function_new(name: *const c_char) -> *mut ZdFunction {
    if name.is_null() {
        set_error("name is NULL");
        return std::ptr::null_mut();
    }
    let name = match CStr::from_ptr(name).to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("name is not valid UTF-8");
            return std::ptr::null_mut();
        }
    };
    let inner = match name {
        "zeta" => AnalyticFunction::Zeta,
        "xi" => AnalyticFunction::Xi,
        "eta" => AnalyticFunction::Eta,
        "cosh" => AnalyticFunction::Cosh,
        other => {
            set_error(&format!("unknown function '{other}'"));
            return std::ptr::null_mut();
        }
    };
    Box::into_raw(Box::new(ZdFunction { inner }))
}

/// chi(z) = (z - a)^m (z - 1) zeta(z).
#[no_mangle]
pub extern "C" fn zd_function_new_chi(m: u32, a: ZdComplex) -> *mut ZdFunction {
    if m == 0 {
        set_error("chi order m must be >= 1");
        return std::ptr::null_mut();
    }
    Box::into_raw(Box::new(ZdFunction {
        inner: AnalyticFunction::Chi { m, a: a.into() },
    }))
}

/// Rational function from its factorization:
/// scale * prod (z - zeros[i])^zero_orders[i] / prod (z - poles[j])^pole_orders[j].
#[no_mangle]
pub unsafe extern "C" fn zd_function_new_rational(
    scale: ZdComplex,
    zeros: *const ZdComplex,
    zero_orders: *const u32,
    n_zeros: usize,
    poles: *const ZdComplex,
    pole_orders: *const u32,
    n_poles: usize,
) -> *mut ZdFunction {
    if (n_zeros > 0 && (zeros.is_null() || zero_orders.is_null()))
        || (n_poles > 0 && (poles.is_null() || pole_orders.is_null()))
    {
        set_error("factor arrays are NULL");
        return std::ptr::null_mut();
    }
    let collect = |pts: *const ZdComplex, orders: *const u32, n: usize| -> Vec<(Complex64, u32)> {
        (0..n)
            .map(|i| ((*pts.add(i)).into(), *orders.add(i)))
            .collect()
    };
    let zs = collect(zeros, zero_orders, n_zeros);
    let ps = collect(poles, pole_orders, n_poles);
    Box::into_raw(Box::new(ZdFunction {
        inner: AnalyticFunction::Rational(RationalFunction::from_factors(
            scale.into(),
            &zs,
            &ps,
        )),
    }))
}

/// Release a function handle. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn zd_function_free(f: *mut ZdFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Evaluate the function: value, derivative and an absolute error bound.
#[no_mangle]
pub unsafe extern "C" fn zd_eval(
    f: *const ZdFunction,
    z: ZdComplex,
    target_abs_err: f64,
    out: *mut ZdEval,
) -> ZdStatus {
    if f.is_null() || out.is_null() {
        set_error("NULL pointer");
        return ZdStatus::NullPointer;
    }
    guarded(|| match (*f).inner.eval(z.into(), target_abs_err) {
        Ok(r) => {
            *out = ZdEval {
                value: r.value.into(),
                derivative: r.derivative.into(),
                abs_error_bound: r.abs_error_bound,
            };
            ZdStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of_special(&e)
        }
    })
}

/// Apply nu_g or the relaxed Newton map N_{g,kappa} at z.
#[no_mangle]
pub unsafe extern "C" fn zd_apply_map(
    f: *const ZdFunction,
    kind: ZdMapKind,
    kappa: ZdComplex,
    z: ZdComplex,
    out: *mut ZdComplex,
) -> ZdStatus {
    if f.is_null() || out.is_null() {
        set_error("NULL pointer");
        return ZdStatus::NullPointer;
    }
    guarded(|| {
        let kind = match map_kind(kind, kappa) {
            Ok(k) => k,
            Err(e) => {
                set_error(&e.to_string());
                return ZdStatus::InvalidArgument;
            }
        };
        match apply_map(&(*f).inner, kind, z.into()) {
            Ok(v) => {
                *out = v.into();
                ZdStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of_dynamics(&e)
            }
        }
    })
}

/// Multiplier, holomorphic index and classification of the fixed point at a
/// zero/pole of g. Set with_quadrature to cross-check the closed form with
/// the contour integral.
#[no_mangle]
pub unsafe extern "C" fn zd_fixed_point_report(
    f: *const ZdFunction,
    kind: ZdMapKind,
    kappa: ZdComplex,
    alpha: ZdComplex,
    with_quadrature: i32,
    out: *mut ZdFixedPointReport,
) -> ZdStatus {
    if f.is_null() || out.is_null() {
        set_error("NULL pointer");
        return ZdStatus::NullPointer;
    }
    guarded(|| {
        let kind = match map_kind(kind, kappa) {
            Ok(k) => k,
            Err(e) => {
                set_error(&e.to_string());
                return ZdStatus::InvalidArgument;
            }
        };
        let opts = ReportOptions {
            with_quadrature: with_quadrature != 0,
            ..ReportOptions::default()
        };
        match fixed_point_report(&(*f).inner, kind, alpha.into(), &opts) {
            Ok(r) => {
                *out = ZdFixedPointReport {
                    alpha: r.alpha.into(),
                    is_pole: matches!(r.source, Source::Pole) as i32,
                    order: r.order,
                    lambda: r.lambda.into(),
                    iota_closed: r.iota_closed.into(),
                    iota_quad: r.iota_quad.unwrap_or_default().into(),
                    has_iota_quad: r.iota_quad.is_some() as i32,
                    classification: match r.class {
                        Classification::Attracting => ZD_CLASS_ATTRACTING,
                        Classification::Indifferent => ZD_CLASS_INDIFFERENT,
                        Classification::Repelling => ZD_CLASS_REPELLING,
                    },
                    margin: r.margin,
                };
                ZdStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of_dynamics(&e)
            }
        }
    })
}

/// Hardy Z(t).
#[no_mangle]
pub unsafe extern "C" fn zd_hardy_z(t: f64, out: *mut f64) -> ZdStatus {
    if out.is_null() {
        set_error("NULL pointer");
        return ZdStatus::NullPointer;
    }
    guarded(|| match hardy_z(t) {
        Ok(v) => {
            *out = v;
            ZdStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            ZdStatus::DomainError
        }
    })
}

/// Critical-line zeros with ordinates in [t_lo, t_hi], refined to
/// target_digits. Writes up to `cap` ordinates and the total count found.
#[no_mangle]
pub unsafe extern "C" fn zd_find_zeros(
    t_lo: f64,
    t_hi: f64,
    target_digits: u32,
    gammas: *mut f64,
    cap: usize,
    n_out: *mut usize,
) -> ZdStatus {
    if n_out.is_null() || (cap > 0 && gammas.is_null()) {
        set_error("NULL pointer");
        return ZdStatus::NullPointer;
    }
    guarded(|| match find_zeros(t_lo, t_hi, target_digits) {
        Ok(recs) => {
            *n_out = recs.len();
            if recs.len() > cap {
                set_error("output buffer too small");
                return ZdStatus::BufferTooSmall;
            }
            for (i, r) in recs.iter().enumerate() {
                *gammas.add(i) = r.gamma;
            }
            ZdStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            ZdStatus::DomainError
        }
    })
}

/// Rotation number theta = (1/pi) arctan(1/(2 gamma)) of the fixed point at
/// 1/2 + i gamma.
#[no_mangle]
pub unsafe extern "C" fn zd_gamma_to_theta(gamma: f64, out: *mut f64) -> ZdStatus {
    if out.is_null() {
        set_error("NULL pointer");
        return ZdStatus::NullPointer;
    }
    guarded(|| match gamma_to_theta(gamma, 15) {
        Ok(r) => {
            *out = r.theta;
            ZdStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            ZdStatus::InvalidArgument
        }
    })
}

/// Certified continued fraction of the rotation number of zero n, computed at
/// `digits` working decimal digits (>= 17). Writes up to `cap` quotients; the
/// first `*certified_out` of them are certified against input error.
#[no_mangle]
pub unsafe extern "C" fn zd_cfrac_row(
    n: u32,
    digits: u32,
    max_terms: usize,
    quotients: *mut u64,
    cap: usize,
    n_out: *mut usize,
    certified_out: *mut usize,
) -> ZdStatus {
    if n_out.is_null() || certified_out.is_null() || (cap > 0 && quotients.is_null()) {
        set_error("NULL pointer");
        return ZdStatus::NullPointer;
    }
    guarded(|| match table1_row(n, digits, max_terms) {
        Ok(row) => {
            *n_out = row.cf.quotients.len();
            *certified_out = row.cf.certified_count;
            if row.cf.quotients.len() > cap {
                set_error("output buffer too small");
                return ZdStatus::BufferTooSmall;
            }
            for (i, q) in row.cf.quotients.iter().enumerate() {
                *quotients.add(i) = *q;
            }
            ZdStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            ZdStatus::DomainError
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn eval_zeta_at_two() {
        let name = CString::new("zeta").unwrap();
        let f = unsafe { zd_function_new(name.as_ptr()) };
        assert!(!f.is_null());
        let mut out = ZdEval {
            value: ZdComplex { re: 0.0, im: 0.0 },
            derivative: ZdComplex { re: 0.0, im: 0.0 },
            abs_error_bound: 0.0,
        };
        let st = unsafe { zd_eval(f, ZdComplex { re: 2.0, im: 0.0 }, 1e-12, &mut out) };
        assert_eq!(st, ZdStatus::Ok);
        let pi2_6 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
        assert!((out.value.re - pi2_6).abs() < 1e-12);
        unsafe { zd_function_free(f) };
    }

    #[test]
    fn pole_maps_to_status() {
        let name = CString::new("zeta").unwrap();
        let f = unsafe { zd_function_new(name.as_ptr()) };
        let mut out = ZdEval {
            value: ZdComplex { re: 0.0, im: 0.0 },
            derivative: ZdComplex { re: 0.0, im: 0.0 },
            abs_error_bound: 0.0,
        };
        let st = unsafe { zd_eval(f, ZdComplex { re: 1.0, im: 0.0 }, 1e-12, &mut out) };
        assert_eq!(st, ZdStatus::Pole);
        let msg = unsafe { CStr::from_ptr(zd_last_error_message()) };
        assert!(!msg.to_bytes().is_empty());
        unsafe { zd_function_free(f) };
    }

    #[test]
    fn report_at_zeta_pole() {
        let name = CString::new("zeta").unwrap();
        let f = unsafe { zd_function_new(name.as_ptr()) };
        let mut rep = unsafe { std::mem::zeroed::<ZdFixedPointReport>() };
        let st = unsafe {
            zd_fixed_point_report(
                f,
                ZdMapKind::Nu,
                ZdComplex { re: 1.0, im: 0.0 },
                ZdComplex { re: 1.0, im: 0.0 },
                1,
                &mut rep,
            )
        };
        assert_eq!(st, ZdStatus::Ok);
        assert_eq!(rep.is_pole, 1);
        assert_eq!(rep.order, 1);
        assert!((rep.lambda.re - 2.0).abs() < 1e-12);
        assert!((rep.iota_closed.re + 1.0).abs() < 1e-12);
        assert_eq!(rep.classification, ZD_CLASS_REPELLING);
        assert_eq!(rep.has_iota_quad, 1);
        assert!((rep.iota_quad.re + 1.0).abs() < 1e-7);
        unsafe { zd_function_free(f) };
    }

    #[test]
    fn rational_handle_and_apply_map() {
        // (z+1)(z-1/2)^2 / (z^3 (z-1))
        let zs = [ZdComplex { re: -1.0, im: 0.0 }, ZdComplex { re: 0.5, im: 0.0 }];
        let zo = [1u32, 2u32];
        let ps = [ZdComplex { re: 0.0, im: 0.0 }, ZdComplex { re: 1.0, im: 0.0 }];
        let po = [3u32, 1u32];
        let f = unsafe {
            zd_function_new_rational(
                ZdComplex { re: 1.0, im: 0.0 },
                zs.as_ptr(),
                zo.as_ptr(),
                2,
                ps.as_ptr(),
                po.as_ptr(),
                2,
            )
        };
        assert!(!f.is_null());
        let mut out = ZdComplex { re: 0.0, im: 0.0 };
        // the zero at -1 is fixed under nu
        let st = unsafe {
            zd_apply_map(
                f,
                ZdMapKind::Nu,
                ZdComplex { re: 1.0, im: 0.0 },
                ZdComplex { re: -1.0, im: 0.0 },
                &mut out,
            )
        };
        assert_eq!(st, ZdStatus::Ok);
        assert!((out.re + 1.0).abs() < 1e-12 && out.im.abs() < 1e-12);
        unsafe { zd_function_free(f) };
    }

    #[test]
    fn find_zeros_buffer_flow() {
        let mut gammas = [0f64; 8];
        let mut n = 0usize;
        let st = unsafe { zd_find_zeros(10.0, 32.0, 6, gammas.as_mut_ptr(), 8, &mut n) };
        assert_eq!(st, ZdStatus::Ok);
        assert_eq!(n, 4);
        assert!((gammas[0] - 14.1347).abs() < 5e-5);
        // too-small buffer reports the needed count
        let mut small = [0f64; 1];
        let st = unsafe { zd_find_zeros(10.0, 32.0, 6, small.as_mut_ptr(), 1, &mut n) };
        assert_eq!(st, ZdStatus::BufferTooSmall);
        assert_eq!(n, 4);
    }

    #[test]
    fn hardy_and_theta() {
        let mut z = 0.0;
        assert_eq!(unsafe { zd_hardy_z(0.0, &mut z) }, ZdStatus::Ok);
        assert!((z + 1.4603545).abs() < 1e-6);
        let mut th = 0.0;
        assert_eq!(unsafe { zd_gamma_to_theta(0.5, &mut th) }, ZdStatus::Ok);
        assert!((th - 0.25).abs() < 1e-15);
    }

    #[test]
    fn null_pointers_rejected() {
        let st = unsafe {
            zd_eval(
                std::ptr::null(),
                ZdComplex { re: 0.0, im: 0.0 },
                1e-10,
                std::ptr::null_mut(),
            )
        };
        assert_eq!(st, ZdStatus::NullPointer);
        assert!(unsafe { zd_function_new(std::ptr::null()) }.is_null());
    }
}
