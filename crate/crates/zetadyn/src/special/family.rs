//! Polynomials and rational functions with exact coefficients and, when built
//! from factors, declared zero/pole metadata.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::serde_util::{complex_vec, root_vec};

/// Dense polynomial, coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    #[serde(with = "complex_vec")]
    pub coeffs: Vec<Complex64>,
    /// Roots with orders, when the polynomial was constructed from factors.
    #[serde(with = "root_vec", default, skip_serializing_if = "Vec::is_empty")]
    pub known_roots: Vec<(Complex64, u32)>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        Polynomial {
            coeffs,
            known_roots: Vec::new(),
        }
    }

    /// scale * prod (z - r_i)^(m_i)
    pub fn from_roots(scale: Complex64, roots: &[(Complex64, u32)]) -> Self {
        let mut coeffs = vec![scale];
        for &(r, m) in roots {
            for _ in 0..m {
                // multiply by (z - r)
                let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
                for (i, &c) in coeffs.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * r;
                }
                coeffs = next;
            }
        }
        Polynomial {
            coeffs,
            known_roots: roots.to_vec(),
        }
    }

    /// Horner evaluation returning (value, derivative, magnitude-sum for rounding bounds).
    pub fn eval_wd(&self, z: Complex64) -> (Complex64, Complex64, f64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for &c in self.coeffs.iter().rev() {
            d = d * z + v;
            v = v * z + c;
            mag = mag * z.norm() + c.norm();
        }
        (v, d, mag)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Rational function num/den with optional factorization metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalFunction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        RationalFunction { num, den }
    }

    /// scale * prod (z - zero_i)^(m_i) / prod (z - pole_j)^(n_j)
    pub fn from_factors(
        scale: Complex64,
        zeros: &[(Complex64, u32)],
        poles: &[(Complex64, u32)],
    ) -> Self {
        RationalFunction {
            num: Polynomial::from_roots(scale, zeros),
            den: Polynomial::from_roots(Complex64::new(1.0, 0.0), poles),
        }
    }

    pub fn eval_wd(&self, z: Complex64) -> (Complex64, Complex64, f64) {
        let (p, dp, pmag) = self.num.eval_wd(z);
        let (q, dq, qmag) = self.den.eval_wd(z);
        let v = p / q;
        let d = (dp * q - p * dq) / (q * q);
        let mag = (pmag / q.norm()).max(v.norm()) + (qmag / q.norm()) * v.norm();
        (v, d, mag)
    }

    /// g'/g as a sum over factors when the factorization is known, otherwise
    /// P'/P - Q'/Q.
    pub fn log_derivative(&self, z: Complex64) -> Complex64 {
        if !self.num.known_roots.is_empty() || !self.den.known_roots.is_empty() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(r, m) in &self.num.known_roots {
                acc += (m as f64) / (z - r);
            }
            for &(r, m) in &self.den.known_roots {
                acc -= (m as f64) / (z - r);
            }
            acc
        } else {
            let (p, dp, _) = self.num.eval_wd(z);
            let (q, dq, _) = self.den.eval_wd(z);
            dp / p - dq / q
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn from_roots_expands_correctly() {
        // (z - 1)(z + 2) = z^2 + z - 2
        let p = Polynomial::from_roots(c(1.0, 0.0), &[(c(1.0, 0.0), 1), (c(-2.0, 0.0), 1)]);
        assert_eq!(p.coeffs.len(), 3);
        assert!((p.coeffs[0] - c(-2.0, 0.0)).norm() < 1e-15);
        assert!((p.coeffs[1] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((p.coeffs[2] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn horner_derivative() {
        // p(z) = 3 z^2 - 2 z + 5, p'(z) = 6 z - 2
        let p = Polynomial::new(vec![c(5.0, 0.0), c(-2.0, 0.0), c(3.0, 0.0)]);
        let z = c(1.5, -0.5);
        let (v, d, _) = p.eval_wd(z);
        assert!((v - (3.0 * z * z - 2.0 * z + 5.0)).norm() < 1e-14);
        assert!((d - (6.0 * z - 2.0)).norm() < 1e-14);
    }

    #[test]
    fn rational_log_derivative_matches_quotient() {
        let r = RationalFunction::from_factors(
            c(2.0, 1.0),
            &[(c(-1.0, 0.0), 1), (c(0.5, 0.0), 2)],
            &[(c(0.0, 0.0), 3), (c(1.0, 0.0), 1)],
        );
        let z = c(0.3, 0.9);
        let (v, d, _) = r.eval_wd(z);
        let ld = r.log_derivative(z);
        assert!((ld - d / v).norm() < 1e-12 * ld.norm());
    }
}
