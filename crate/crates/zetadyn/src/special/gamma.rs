//! Complex gamma, log-gamma and digamma via recurrence shift + Stirling series,
//! plus exactly-reduced sin(pi x)/cos(pi x) helpers.
//!
//! `log_gamma` keeps the analytic branch of the right half-plane: the Stirling
//! series is evaluated at a shifted argument with Re >= `STIRLING_RE_MIN` and the
//! shift logs are all taken at points with the same imaginary part, so the
//! imaginary part of the result is continuous along vertical lines (which is what
//! the Riemann-Siegel theta computation needs).

use num_complex::Complex64;

/// Stirling series coefficients B_{2k} / (2k (2k-1)) for k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Digamma asymptotic coefficients B_{2k} / (2k) for k = 1..=8.
const DIGAMMA_ASYMPT: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

const STIRLING_RE_MIN: f64 = 12.0;
const LN_2PI_HALF: f64 = 0.918_938_533_204_672_74; // ln(2 pi) / 2

/// sin(pi x) with the integer part of x removed exactly, so that integers map to
/// exactly 0 and half-integers to exactly +-1.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // reduce to r in [-1, 1] with x = 2k + r exactly (|x| < 2^52 keeps this exact)
    let r = x % 2.0;
    let (r, sign) = if r > 1.0 {
        (r - 2.0, 1.0)
    } else if r < -1.0 {
        (r + 2.0, 1.0)
    } else {
        (r, 1.0)
    };
    // fold [-1,1] to [-1/2,1/2]
    let (r, sign) = if r > 0.5 {
        (1.0 - r, sign)
    } else if r < -0.5 {
        (-1.0 - r, sign)
    } else {
        (r, sign)
    };
    sign * (std::f64::consts::PI * r).sin()
}

/// cos(pi x) with exact integer reduction; half-integers map to exactly 0.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// sin(pi z) for complex z, using the exactly-reduced real factors:
/// sin(pi(x+iy)) = sin(pi x) cosh(pi y) + i cos(pi x) sinh(pi y).
pub fn sin_pi_c(z: Complex64) -> Complex64 {
    let (s, c) = (sin_pi(z.re), cos_pi(z.re));
    let y = std::f64::consts::PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

/// cos(pi z) for complex z.
pub fn cos_pi_c(z: Complex64) -> Complex64 {
    let (s, c) = (sin_pi(z.re), cos_pi(z.re));
    let y = std::f64::consts::PI * z.im;
    Complex64::new(c * y.cosh(), -s * y.sinh())
}

/// log Gamma(z) by shifting Re(z) up past `STIRLING_RE_MIN` and applying the
/// Stirling series. Poles (non-positive integers) return infinity. The branch is
/// the analytic continuation from the positive real axis through the right
/// half-plane; it is NOT reduced mod 2 pi i.
pub fn log_gamma(z: Complex64) -> Complex64 {
    if z.re <= 0.0 && z.im == 0.0 && z.re == z.re.floor() {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    let mut shift_sum = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < STIRLING_RE_MIN {
        shift_sum += w.ln();
        w += 1.0;
    }
    let lnw = w.ln();
    let mut series = Complex64::new(0.0, 0.0);
    let w2 = w * w;
    let mut wpow = w; // w^(2k-1)
    for (k, c) in STIRLING.iter().enumerate() {
        series += c / wpow;
        if k + 1 < STIRLING.len() {
            wpow *= w2;
        }
    }
    (w - 0.5) * lnw - w + LN_2PI_HALF + series - shift_sum
}

/// Gamma(z) = exp(log_gamma(z)); exp is 2 pi i periodic, so the shift-log
/// branches drop out and this is valid on the whole plane minus the poles.
pub fn gamma(z: Complex64) -> Complex64 {
    if z.re <= 0.0 && z.im == 0.0 && z.re == z.re.floor() {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    log_gamma(z).exp()
}

/// Digamma psi(z) = Gamma'(z)/Gamma(z), by the same shift + asymptotic series.
pub fn digamma(z: Complex64) -> Complex64 {
    if z.re <= 0.0 && z.im == 0.0 && z.re == z.re.floor() {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < STIRLING_RE_MIN {
        shift += 1.0 / w;
        w += 1.0;
    }
    let mut series = Complex64::new(0.0, 0.0);
    let w2 = w * w;
    let mut wpow = w2; // w^(2k)
    for (k, c) in DIGAMMA_ASYMPT.iter().enumerate() {
        series += c / wpow;
        if k + 1 < DIGAMMA_ASYMPT.len() {
            wpow *= w2;
        }
    }
    w.ln() - 0.5 / w - series - shift
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sin_pi_exact_at_integers() {
        for n in -6i32..=6 {
            assert_eq!(sin_pi(n as f64), 0.0, "sin_pi({n})");
        }
        assert_eq!(sin_pi(0.5), 1.0);
        assert_eq!(sin_pi(-0.5), -1.0);
        assert_eq!(cos_pi(0.5), 0.0);
        assert!((sin_pi(1.0 / 3.0) - (3.0f64).sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn gamma_small_integers_and_half() {
        assert!((gamma(c(1.0, 0.0)).re - 1.0).abs() < 1e-14);
        assert!((gamma(c(5.0, 0.0)).re - 24.0).abs() < 24.0 * 1e-14);
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((gamma(c(0.5, 0.0)).re - sqrt_pi).abs() < 1e-14);
        // Gamma(-0.5) = -2 sqrt(pi)
        assert!((gamma(c(-0.5, 0.0)).re + 2.0 * sqrt_pi).abs() < 1e-13);
        assert!(gamma(c(-3.0, 0.0)).re.is_infinite());
    }

    #[test]
    fn gamma_recurrence_complex() {
        // Gamma(z+1) = z Gamma(z) at a spread of complex points
        let pts = [c(0.3, 4.0), c(-2.5, 0.7), c(6.0, -30.0), c(0.25, 250.0)];
        for &z in &pts {
            let lhs = gamma(z + 1.0);
            let rhs = z * gamma(z);
            assert!(
                (lhs - rhs).norm() <= 1e-12 * rhs.norm(),
                "recurrence at {z}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn gamma_reflection_identity() {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z), checked with log_gamma on the right half
        let pts = [c(0.25, 3.0), c(0.1, -7.0), c(0.4, 40.0)];
        for &z in &pts {
            let lhs = gamma(z) * gamma(Complex64::new(1.0, 0.0) - z);
            let rhs = std::f64::consts::PI / sin_pi_c(z);
            assert!(
                (lhs - rhs).norm() <= 1e-12 * rhs.norm(),
                "reflection at {z}"
            );
        }
    }

    #[test]
    fn log_gamma_exp_matches_gamma() {
        let pts = [c(2.3, 1.0), c(12.5, -4.0), c(0.25, 7.07)];
        for &z in &pts {
            let a = log_gamma(z).exp();
            let b = gamma(z);
            assert!((a - b).norm() <= 1e-12 * b.norm());
        }
    }

    #[test]
    fn log_gamma_imag_continuous_on_quarter_line() {
        // Im log Gamma(1/4 + i t/2) must be continuous in t (no 2 pi jumps)
        let mut prev = log_gamma(c(0.25, 0.0)).im;
        let mut t = 0.0;
        while t < 120.0 {
            t += 0.05;
            let cur = log_gamma(c(0.25, t / 2.0)).im;
            assert!(
                (cur - prev).abs() < 0.5,
                "jump at t={t}: {prev} -> {cur}"
            );
            prev = cur;
        }
    }

    #[test]
    fn digamma_known_values() {
        let euler = 0.577_215_664_901_532_9_f64;
        assert!((digamma(c(1.0, 0.0)).re + euler).abs() < 1e-13);
        // psi(1/2) = -gamma - 2 ln 2
        let expect = -euler - 2.0 * std::f64::consts::LN_2;
        assert!((digamma(c(0.5, 0.0)).re - expect).abs() < 1e-13);
        // psi(2) = 1 - gamma
        assert!((digamma(c(2.0, 0.0)).re - (1.0 - euler)).abs() < 1e-13);
    }

    #[test]
    fn digamma_is_log_gamma_derivative() {
        // central finite difference of log_gamma vs digamma
        let pts = [c(3.2, 1.5), c(0.25, 12.0), c(-1.3, 2.2)];
        let h = 1e-6;
        for &z in &pts {
            let fd = (log_gamma(z + h) - log_gamma(z - h)) / (2.0 * h);
            let ps = digamma(z);
            assert!(
                (fd - ps).norm() <= 1e-8 * (1.0 + ps.norm()),
                "digamma fd mismatch at {z}"
            );
        }
    }
}
