//! Evaluators for the zeta family: zeta, xi, eta, chi, cosh, and exact
//! rational/polynomial functions, all returning value + derivative pairs with
//! error bounds, plus stable logarithmic derivatives for the dynamics layer.

pub mod family;
pub mod gamma;
pub mod zeta;

use num_complex::Complex64;
use thiserror::Error;

pub use family::{Polynomial, RationalFunction};
pub use zeta::{zeta as zeta_eval, ZetaEval, T_MAX};

use crate::Rect;

#[derive(Debug, Error)]
pub enum SpecialError {
    #[error("zeta has its pole at s = 1")]
    PoleAt1,
    #[error("argument hits a pole at {0}")]
    PoleHit(Complex64),
    #[error("requested accuracy {requested:e} unattainable (achieved {achieved:e})")]
    AccuracyUnreachable { requested: f64, achieved: f64 },
    #[error("overflow in {what}; outside the documented safe range")]
    OverflowDomain { what: &'static str },
    #[error("non-finite complex argument")]
    NonFinite,
    #[error("target absolute error must be positive, got {0:e}")]
    InvalidTarget(f64),
}

/// Value/derivative pair with an absolute error bound on the value.
#[derive(Debug, Clone, Copy)]
pub struct EvalResult {
    pub value: Complex64,
    pub derivative: Complex64,
    pub abs_error_bound: f64,
}

impl From<ZetaEval> for EvalResult {
    fn from(z: ZetaEval) -> Self {
        EvalResult {
            value: z.value,
            derivative: z.derivative,
            abs_error_bound: z.abs_error_bound,
        }
    }
}

const LN_PI: f64 = 1.144_729_885_849_400_2;
const LOGDERIV_TARGET: f64 = 1e-12;

/// A member of the function family the toolkit operates on.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum AnalyticFunction {
    Zeta,
    Xi,
    Eta,
    Chi {
        m: u32,
        #[serde(with = "crate::serde_util::complex")]
        a: Complex64,
    },
    Cosh,
    Rational(RationalFunction),
    Polynomial(Polynomial),
}

impl AnalyticFunction {
    pub fn name(&self) -> String {
        match self {
            AnalyticFunction::Zeta => "zeta".into(),
            AnalyticFunction::Xi => "xi".into(),
            AnalyticFunction::Eta => "eta".into(),
            AnalyticFunction::Chi { m, a } => format!("chi(m={m},a={a})"),
            AnalyticFunction::Cosh => "cosh".into(),
            AnalyticFunction::Rational(_) => "rational".into(),
            AnalyticFunction::Polynomial(_) => "polynomial".into(),
        }
    }

    /// chi is only interesting when Re(m a) > 1/2 (the extra zero then sits in
    /// the attracting half-plane); recorded as a flag, not an error.
    pub fn chi_strip_condition(&self) -> Option<bool> {
        match self {
            AnalyticFunction::Chi { m, a } => Some((*m as f64) * a.re > 0.5),
            _ => None,
        }
    }

    pub fn declared_poles(&self) -> Vec<(Complex64, u32)> {
        match self {
            AnalyticFunction::Zeta => vec![(Complex64::new(1.0, 0.0), 1)],
            AnalyticFunction::Rational(r) => r.den.known_roots.clone(),
            _ => Vec::new(),
        }
    }

    /// Zeros known in closed form inside `rect` (trivial zeros, cosh zeros,
    /// declared factors, the extra chi zero). Non-trivial zeta-family zeros are
    /// not enumerated here; they come from the zero-finding pipeline.
    pub fn declared_zeros_in(&self, rect: Rect) -> Vec<(Complex64, u32)> {
        let mut out = Vec::new();
        match self {
            AnalyticFunction::Zeta | AnalyticFunction::Eta => {
                trivial_zeros_in(rect, &mut out);
            }
            AnalyticFunction::Chi { m, a } => {
                trivial_zeros_in(rect, &mut out);
                if rect.contains(*a) {
                    out.push((*a, *m));
                }
            }
            AnalyticFunction::Xi => {}
            AnalyticFunction::Cosh => {
                // zeros at i pi (k + 1/2)
                let step = std::f64::consts::PI;
                let k_lo = (rect.im_lo / step - 0.5).ceil() as i64;
                let k_hi = (rect.im_hi / step - 0.5).floor() as i64;
                for k in k_lo..=k_hi {
                    let z = Complex64::new(0.0, step * (k as f64 + 0.5));
                    if rect.contains(z) {
                        out.push((z, 1));
                    }
                }
            }
            AnalyticFunction::Rational(r) => {
                out.extend(r.num.known_roots.iter().copied().filter(|(z, _)| rect.contains(*z)));
            }
            AnalyticFunction::Polynomial(p) => {
                out.extend(p.known_roots.iter().copied().filter(|(z, _)| rect.contains(*z)));
            }
        }
        out.sort_by(|a, b| {
            a.0.re
                .partial_cmp(&b.0.re)
                .unwrap()
                .then(a.0.im.partial_cmp(&b.0.im).unwrap())
        });
        out
    }

    /// Value + derivative at `z`.
    pub fn eval(&self, z: Complex64, target_abs_err: f64) -> Result<EvalResult, SpecialError> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(SpecialError::NonFinite);
        }
        match self {
            AnalyticFunction::Zeta => Ok(zeta::zeta(z, target_abs_err)?.into()),
            AnalyticFunction::Eta => eval_eta(z, target_abs_err),
            AnalyticFunction::Xi => eval_xi(z, target_abs_err),
            AnalyticFunction::Chi { m, a } => {
                let eta = eval_eta(z, target_abs_err)?;
                let w = z - a;
                let wm1 = w.powu(m.saturating_sub(1));
                let wm = wm1 * w;
                Ok(EvalResult {
                    value: wm * eta.value,
                    derivative: (*m as f64) * wm1 * eta.value + wm * eta.derivative,
                    abs_error_bound: wm.norm() * eta.abs_error_bound
                        + 4e-16 * (wm * eta.value).norm(),
                })
            }
            AnalyticFunction::Cosh => {
                let v = z.cosh();
                Ok(EvalResult {
                    value: v,
                    derivative: z.sinh(),
                    abs_error_bound: 4e-16 * v.norm().max(1.0),
                })
            }
            AnalyticFunction::Rational(r) => {
                let (v, d, mag) = r.eval_wd(z);
                if !v.is_finite() {
                    return Err(SpecialError::PoleHit(z));
                }
                Ok(EvalResult {
                    value: v,
                    derivative: d,
                    abs_error_bound: 4e-16 * mag,
                })
            }
            AnalyticFunction::Polynomial(p) => {
                let (v, d, mag) = p.eval_wd(z);
                Ok(EvalResult {
                    value: v,
                    derivative: d,
                    abs_error_bound: 4e-16 * mag,
                })
            }
        }
    }

    /// g'(z)/g(z), computed in a form that stays finite through the huge
    /// dynamic range of the zeta family (no overflow from the Gamma factors).
    /// Returns infinity at zeros/poles of g, which the dynamics layer treats as
    /// "the Newton/nu step vanishes".
    pub fn log_derivative(&self, z: Complex64) -> Result<Complex64, SpecialError> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(SpecialError::NonFinite);
        }
        match self {
            AnalyticFunction::Zeta => {
                let v = zeta::zeta(z, LOGDERIV_TARGET)?;
                Ok(v.derivative / v.value)
            }
            AnalyticFunction::Eta => eta_log_derivative(z),
            AnalyticFunction::Xi => xi_log_derivative(z),
            AnalyticFunction::Chi { m, a } => {
                Ok((*m as f64) / (z - a) + eta_log_derivative(z)?)
            }
            AnalyticFunction::Cosh => Ok(z.tanh()),
            AnalyticFunction::Rational(r) => Ok(r.log_derivative(z)),
            AnalyticFunction::Polynomial(p) => {
                let (v, d, _) = p.eval_wd(z);
                Ok(d / v)
            }
        }
    }
}

fn trivial_zeros_in(rect: Rect, out: &mut Vec<(Complex64, u32)>) {
    if rect.im_lo <= 0.0 && rect.im_hi >= 0.0 {
        let k_lo = (-rect.re_hi / 2.0).ceil().max(1.0) as i64;
        let k_hi = (-rect.re_lo / 2.0).floor() as i64;
        for k in k_lo..=k_hi {
            out.push((Complex64::new(-2.0 * k as f64, 0.0), 1));
        }
    }
}

/// eta(z) = (z - 1) zeta(z), entire with eta(1) = 1.
fn eval_eta(z: Complex64, target_abs_err: f64) -> Result<EvalResult, SpecialError> {
    let one = Complex64::new(1.0, 0.0);
    let u = z - one;
    if u.norm() < zeta::POLE_SERIES_RADIUS {
        return Ok(eta_series(u));
    }
    let zv = zeta::zeta(z, target_abs_err)?;
    Ok(EvalResult {
        value: u * zv.value,
        derivative: zv.value + u * zv.derivative,
        abs_error_bound: u.norm() * zv.abs_error_bound + 2e-16 * (u * zv.value).norm(),
    })
}

/// Taylor expansion of eta about 1 from the Stieltjes constants:
/// eta(1+u) = 1 + sum_n (-1)^n gamma_n u^(n+1) / n!.
fn eta_series(u: Complex64) -> EvalResult {
    let mut value = Complex64::new(1.0, 0.0);
    let mut derivative = Complex64::new(0.0, 0.0);
    let mut upow = u; // u^(n+1)
    let mut upow_d = Complex64::new(1.0, 0.0); // u^n
    let mut fact = 1.0;
    let mut sign = 1.0;
    for (n, g) in STIELTJES_LOCAL.iter().enumerate() {
        let coeff = sign * g / fact;
        value += coeff * upow;
        derivative += coeff * ((n + 1) as f64) * upow_d;
        upow_d = upow;
        upow *= u;
        fact *= (n + 1) as f64;
        sign = -sign;
    }
    EvalResult {
        value,
        derivative,
        abs_error_bound: 1e-15,
    }
}

const STIELTJES_LOCAL: [f64; 9] = [
    0.5772156649015329,
    -0.07281584548367672,
    -0.009690363192872318,
    0.0020538344203033458,
    0.0023253700654673,
    0.0007933238173010627,
    -0.0002387693454301996,
    -0.000527289567057751,
    -0.0003521233538030395,
];

fn eta_log_derivative(z: Complex64) -> Result<Complex64, SpecialError> {
    let one = Complex64::new(1.0, 0.0);
    let u = z - one;
    if u.norm() < zeta::POLE_SERIES_RADIUS {
        let e = eta_series(u);
        return Ok(e.derivative / e.value);
    }
    let zv = zeta::zeta(z, LOGDERIV_TARGET)?;
    Ok(one / u + zv.derivative / zv.value)
}

/// xi(z) = (1/2) z (1-z) pi^(-z/2) Gamma(z/2) zeta(z), computed as
/// F(z) * eta(z) with F(z) = -pi^(-z/2) Gamma(z/2 + 1), which removes the
/// pole/zero bookkeeping at 0 and 1. Near the negative even integers the
/// Gamma pole cancels a trivial zero of eta; those points evaluate through the
/// functional equation xi(z) = xi(1-z) instead.
fn eval_xi(z: Complex64, target_abs_err: f64) -> Result<EvalResult, SpecialError> {
    if near_negative_even(z) {
        let r = eval_xi_direct(Complex64::new(1.0, 0.0) - z, target_abs_err)?;
        return Ok(EvalResult {
            value: r.value,
            derivative: -r.derivative,
            abs_error_bound: r.abs_error_bound,
        });
    }
    eval_xi_direct(z, target_abs_err)
}

fn near_negative_even(z: Complex64) -> bool {
    if z.re > -1.0 || z.im.abs() > 0.5 {
        return false;
    }
    let k = (z.re / 2.0).round() * 2.0;
    (z.re - k).abs() < 0.05 && z.im.abs() < 0.05
}

fn eval_xi_direct(z: Complex64, target_abs_err: f64) -> Result<EvalResult, SpecialError> {
    let eta = eval_eta(z, target_abs_err)?;
    let half = z / 2.0 + 1.0;
    let logf = -(z / 2.0) * LN_PI + gamma::log_gamma(half);
    if logf.re > 700.0 {
        return Err(SpecialError::OverflowDomain {
            what: "xi Gamma factor",
        });
    }
    let f = -logf.exp();
    let df = f * (-0.5 * LN_PI + 0.5 * gamma::digamma(half));
    let value = f * eta.value;
    Ok(EvalResult {
        value,
        derivative: df * eta.value + f * eta.derivative,
        abs_error_bound: f.norm() * eta.abs_error_bound + 3e-13 * value.norm(),
    })
}

fn xi_log_derivative(z: Complex64) -> Result<Complex64, SpecialError> {
    if near_negative_even(z) {
        return Ok(-xi_log_derivative(Complex64::new(1.0, 0.0) - z)?);
    }
    let half = z / 2.0 + 1.0;
    Ok(-0.5 * LN_PI + 0.5 * gamma::digamma(half) + eta_log_derivative(z)?)
}

/// Spec-named wrapper: zeta with value/derivative and error bound.
pub fn eval_zeta(s: Complex64, target_abs_err: f64) -> Result<EvalResult, SpecialError> {
    AnalyticFunction::Zeta.eval(s, target_abs_err)
}

/// Spec-named wrapper: any family member.
pub fn eval_family(
    f: &AnalyticFunction,
    z: Complex64,
    target_abs_err: f64,
) -> Result<EvalResult, SpecialError> {
    f.eval(z, target_abs_err)
}

/// |zeta(s) - 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)| / max(1, |zeta(s)|).
///
/// Both sides are evaluated by this module; for arguments in the central band
/// (-0.5 <= Re s <= 1.5) the two sides take fully independent Euler-Maclaurin
/// paths.
pub fn functional_equation_residual(s: Complex64) -> Result<f64, SpecialError> {
    let one = Complex64::new(1.0, 0.0);
    if s == one {
        return Err(SpecialError::PoleAt1);
    }
    if s == Complex64::new(0.0, 0.0) {
        // 1 - s = 1 is the pole of the reflected factor
        return Err(SpecialError::PoleHit(s));
    }
    // poles of Gamma(1-s) at s = 1, 2, 3, ...
    if s.im.abs() < 1e-9 && s.re >= 1.0 && (s.re - s.re.round()).abs() < 1e-9 {
        return Err(SpecialError::PoleHit(s));
    }
    let target = 1e-12;
    let lhs = zeta::zeta(s, target)?.value;
    let rhs_zeta = zeta::zeta(one - s, target)?.value;
    let ln2 = std::f64::consts::LN_2;
    let rhs = if s.im.abs() <= 450.0 {
        let pow = (s * ln2 + (s - one) * LN_PI).exp();
        let g = gamma::log_gamma(one - s).exp();
        pow * gamma::sin_pi_c(s / 2.0) * g * rhs_zeta
    } else {
        return Err(SpecialError::OverflowDomain {
            what: "functional equation factors at |Im s| > 450",
        });
    };
    Ok((lhs - rhs).norm() / lhs.norm().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn functional_equation_at_quarter_plus_3i() {
        let r = functional_equation_residual(c(0.25, 3.0)).unwrap();
        assert!(r < 1e-9, "residual {r}");
    }

    #[test]
    fn functional_equation_on_critical_line() {
        for &t in &[0.7, 5.0, 21.3, 49.9] {
            let r = functional_equation_residual(c(0.5, t)).unwrap();
            assert!(r < 1e-9, "residual {r} at t={t}");
        }
    }

    #[test]
    fn functional_equation_at_trivial_zero() {
        let r = functional_equation_residual(c(-2.0, 0.0)).unwrap();
        assert!(r < 1e-9, "residual {r}");
    }

    #[test]
    fn eta_at_one_is_one() {
        let e = eval_family(&AnalyticFunction::Eta, c(1.0, 0.0), 1e-12).unwrap();
        assert!((e.value - c(1.0, 0.0)).norm() < 1e-10, "eta(1) = {}", e.value);
        // eta'(1) = Euler-Mascheroni
        assert!((e.derivative.re - 0.5772156649015329).abs() < 1e-10);
    }

    #[test]
    fn eta_series_consistent_with_product_form() {
        let z = c(1.0 + zeta::POLE_SERIES_RADIUS * 1.3, 0.03);
        let series = eta_series(z - c(1.0, 0.0));
        let prod = eval_eta(z, 1e-13).unwrap();
        assert!((series.value - prod.value).norm() < 1e-12);
        assert!((series.derivative - prod.derivative).norm() < 1e-10);
    }

    #[test]
    fn xi_functional_symmetry() {
        let pts = [c(0.3, 5.0), c(-1.2, 17.0), c(2.0, 44.0), c(0.5, 30.1)];
        for &z in &pts {
            let a = eval_family(&AnalyticFunction::Xi, z, 1e-13).unwrap();
            let b = eval_family(&AnalyticFunction::Xi, c(1.0, 0.0) - z, 1e-13).unwrap();
            let denom = a.value.norm().max(1e-300);
            assert!(
                (a.value - b.value).norm() / denom < 1e-9,
                "xi symmetry at {z}: {} vs {}",
                a.value,
                b.value
            );
        }
    }

    #[test]
    fn xi_at_zero_and_one() {
        // with this normalization xi(0) = xi(1) = zeta(0) = -1/2
        let a = eval_family(&AnalyticFunction::Xi, c(0.0, 0.0), 1e-12).unwrap();
        let b = eval_family(&AnalyticFunction::Xi, c(1.0, 0.0), 1e-12).unwrap();
        assert!((a.value.re + 0.5).abs() < 1e-10, "xi(0) = {}", a.value);
        assert!((b.value.re + 0.5).abs() < 1e-10, "xi(1) = {}", b.value);
    }

    #[test]
    fn cosh_zero_at_i_pi_half() {
        let v = eval_family(
            &AnalyticFunction::Cosh,
            c(0.0, std::f64::consts::FRAC_PI_2),
            1e-12,
        )
        .unwrap();
        assert!(v.value.norm() < 1e-15);
    }

    #[test]
    fn derivative_consistency_all_members() {
        let members: Vec<AnalyticFunction> = vec![
            AnalyticFunction::Zeta,
            AnalyticFunction::Eta,
            AnalyticFunction::Xi,
            AnalyticFunction::Chi {
                m: 1,
                a: c(1.2, 0.0),
            },
            AnalyticFunction::Cosh,
            AnalyticFunction::Rational(RationalFunction::from_factors(
                c(1.0, 0.0),
                &[(c(-1.0, 0.0), 1), (c(0.5, 0.0), 2)],
                &[(c(0.0, 0.0), 3), (c(1.0, 0.0), 1)],
            )),
        ];
        // fixed sample grid away from poles
        let pts = [c(0.3, 2.0), c(2.4, -1.5), c(-0.4, 6.0), c(0.5, 14.0)];
        let h = 1e-6;
        for f in &members {
            for &z in &pts {
                let v = f.eval(z, 1e-13).unwrap();
                let fd = {
                    let fp = |w| f.eval(w, 1e-13).unwrap().value;
                    (8.0 * (fp(z + h) - fp(z - h)) - (fp(z + 2.0 * h) - fp(z - 2.0 * h)))
                        / (12.0 * h)
                };
                let scale = v.derivative.norm().max(v.value.norm()).max(1e-10);
                assert!(
                    (fd - v.derivative).norm() / scale < 1e-6,
                    "{} derivative mismatch at {z}: fd {fd} vs {}",
                    f.name(),
                    v.derivative
                );
            }
        }
    }

    #[test]
    fn log_derivative_matches_ratio() {
        let members = [
            AnalyticFunction::Zeta,
            AnalyticFunction::Eta,
            AnalyticFunction::Xi,
            AnalyticFunction::Cosh,
        ];
        let pts = [c(0.3, 2.0), c(2.4, -1.5), c(0.5, 33.0)];
        for f in &members {
            for &z in &pts {
                let v = f.eval(z, 1e-13).unwrap();
                let ld = f.log_derivative(z).unwrap();
                let expect = v.derivative / v.value;
                assert!(
                    (ld - expect).norm() < 1e-8 * expect.norm().max(1.0),
                    "{} log-derivative at {z}",
                    f.name()
                );
            }
        }
    }

    #[test]
    fn chi_strip_condition_flag() {
        let good = AnalyticFunction::Chi { m: 1, a: c(1.2, 0.0) };
        let bad = AnalyticFunction::Chi { m: 1, a: c(0.3, 0.0) };
        assert_eq!(good.chi_strip_condition(), Some(true));
        assert_eq!(bad.chi_strip_condition(), Some(false));
        assert_eq!(AnalyticFunction::Zeta.chi_strip_condition(), None);
    }

    #[test]
    fn declared_zeros_cover_trivials_and_cosh() {
        let rect = Rect {
            re_lo: -9.0,
            re_hi: 1.0,
            im_lo: -1.0,
            im_hi: 1.0,
        };
        let z = AnalyticFunction::Zeta.declared_zeros_in(rect);
        let res: Vec<f64> = z.iter().map(|(p, _)| p.re).collect();
        assert_eq!(res, vec![-8.0, -6.0, -4.0, -2.0]);

        let rect2 = Rect {
            re_lo: -1.0,
            re_hi: 1.0,
            im_lo: 0.0,
            im_hi: 10.0,
        };
        let ch = AnalyticFunction::Cosh.declared_zeros_in(rect2);
        assert_eq!(ch.len(), 3); // pi/2, 3pi/2, 5pi/2 < 10
    }

    #[test]
    fn zeta_real_axis_stays_real() {
        let mut x = -10.0f64;
        while x <= 10.0 {
            if (x - 1.0).abs() > 0.06 {
                let v = eval_zeta(c(x, 0.0), 1e-10).unwrap();
                assert!(
                    v.value.im.abs() < 1e-12,
                    "Im zeta({x}) = {}",
                    v.value.im
                );
            }
            x += 0.37;
        }
    }
}
