//! Rotation numbers of the indifferent fixed points of nu_zeta and their
//! continued fractions, with per-quotient certification.
//!
//! A zero ordinate gamma maps to the rotation angle through
//! theta = (1/pi) arctan(1/(2 gamma)); equivalently the multiplier at the
//! fixed point 1/2 + i gamma is e^{2 pi i theta}. Quotients of theta are
//! extremely sensitive to the input, so the expansion runs on an exact
//! rational enclosure [theta_lo, theta_hi] and only the common prefix of the
//! two endpoint expansions is certified.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::extended::{bf_to_f64, bf_to_rational, ExtCtx};
use crate::special::zeta::T_MAX;
use crate::zeros::{zeros_up_to_n, ZeroRecord, ZerosError};

#[derive(Debug, Error)]
pub enum RotationError {
    #[error("input interval certifies no quotients (too wide)")]
    IntervalTooWide,
    #[error("zero n = {0} is not available at the requested precision")]
    ZeroUnavailable(u32),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Zeros(#[from] ZerosError),
}

/// Rotation number of the indifferent fixed point at 1/2 + i gamma.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RotationNumber {
    pub theta: f64,
    pub gamma: f64,
    pub precision_digits: u32,
}

/// theta = (1/pi) arctan(1/(2 gamma)), with the multiplier identity
/// e^{2 pi i theta} = 1 - 1/(1/2 + gamma i) checked on the way out.
pub fn gamma_to_theta(gamma: f64, precision_digits: u32) -> Result<RotationNumber, RotationError> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(RotationError::InvalidInput(format!(
            "gamma must be positive and finite, got {gamma}"
        )));
    }
    let theta = (1.0 / (2.0 * gamma)).atan() / std::f64::consts::PI;
    let lhs = Complex64::new(0.0, 2.0 * std::f64::consts::PI * theta).exp();
    let rhs = Complex64::new(1.0, 0.0) - 1.0 / Complex64::new(0.5, gamma);
    if (lhs - rhs).norm() > 1e-13 {
        return Err(RotationError::InvalidInput(format!(
            "multiplier identity violated by {:e}",
            (lhs - rhs).norm()
        )));
    }
    Ok(RotationNumber {
        theta,
        gamma,
        precision_digits,
    })
}

/// Partial quotients with a certification prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContinuedFractionExpansion {
    pub quotients: Vec<u64>,
    pub certified_count: usize,
    pub source_precision_digits: u32,
}

impl ContinuedFractionExpansion {
    pub fn certified(&self) -> &[u64] {
        &self.quotients[..self.certified_count.min(self.quotients.len())]
    }

    /// Bounded-type diagnostics over the certified prefix.
    pub fn certified_max(&self) -> Option<u64> {
        self.certified().iter().copied().max()
    }

    pub fn certified_mean(&self) -> Option<f64> {
        let c = self.certified();
        if c.is_empty() {
            None
        } else {
            Some(c.iter().map(|&a| a as f64).sum::<f64>() / c.len() as f64)
        }
    }
}

/// Exact continued fraction of a rational in (0, 1):
/// x = 1/(a1 + 1/(a2 + ...)). Terminates at the exact expansion or max_terms.
fn cf_expand(x: &BigRational, max_terms: usize) -> Vec<u64> {
    let mut p = x.numer().clone();
    let mut q = x.denom().clone();
    let mut out = Vec::new();
    while !p.is_zero() && out.len() < max_terms {
        let a = &q / &p;
        let rem = &q - &a * &p;
        match a.to_u64() {
            Some(v) => out.push(v),
            None => break, // astronomically large quotient; stop expanding
        }
        q = p;
        p = rem;
    }
    out
}

/// Convergents p_k/q_k of [0; a1, a2, ...].
pub fn convergents(quotients: &[u64]) -> Vec<(num_bigint::BigInt, num_bigint::BigInt)> {
    use num_bigint::BigInt;
    let mut h_prev = BigInt::one(); // h_{-1}
    let mut h = BigInt::zero(); // h_0
    let mut k_prev = BigInt::zero(); // k_{-1}
    let mut k = BigInt::one(); // k_0
    let mut out = Vec::with_capacity(quotients.len());
    for &a in quotients {
        let a = BigInt::from(a);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        out.push((h.clone(), k.clone()));
    }
    out
}

/// Interval continued fraction: expand both endpoints, certify the common
/// prefix, and fill the tail from the midpoint. Errors when nothing can be
/// certified.
pub fn continued_fraction(
    lo: &BigRational,
    hi: &BigRational,
    max_terms: usize,
    source_precision_digits: u32,
) -> Result<ContinuedFractionExpansion, RotationError> {
    if !(lo > &BigRational::zero() && lo <= hi && hi < &BigRational::one()) {
        return Err(RotationError::InvalidInput(
            "need 0 < lo <= hi < 1".to_string(),
        ));
    }
    let a = cf_expand(lo, max_terms);
    let b = cf_expand(hi, max_terms);
    let mut certified = 0;
    while certified < a.len() && certified < b.len() && a[certified] == b[certified] {
        certified += 1;
    }
    if lo == hi {
        certified = a.len();
    }
    if certified == 0 {
        return Err(RotationError::IntervalTooWide);
    }
    let mid = (lo + hi) / BigRational::from_integer(2.into());
    let mut quotients = cf_expand(&mid, max_terms);
    if lo == hi {
        quotients = a;
    }
    let certified_count = certified.min(quotients.len());
    Ok(ContinuedFractionExpansion {
        quotients,
        certified_count,
        source_precision_digits,
    })
}

/// f64 convenience wrapper: the endpoints convert exactly (every f64 is a
/// dyadic rational).
pub fn continued_fraction_f64(
    lo: f64,
    hi: f64,
    max_terms: usize,
    source_precision_digits: u32,
) -> Result<ContinuedFractionExpansion, RotationError> {
    let lo_r = BigRational::from_float(lo)
        .ok_or_else(|| RotationError::InvalidInput("non-finite lo".into()))?;
    let hi_r = BigRational::from_float(hi)
        .ok_or_else(|| RotationError::InvalidInput("non-finite hi".into()))?;
    continued_fraction(&lo_r, &hi_r, max_terms, source_precision_digits)
}

/// One assembled row of the rotation-number table.
#[derive(Debug, Clone, Serialize)]
pub struct Table1Row {
    pub n: u32,
    pub gamma_f64: f64,
    pub theta_f64: f64,
    /// gamma and theta rendered at the requested precision
    pub gamma_str: String,
    pub theta_str: String,
    pub cf: ContinuedFractionExpansion,
}

/// Full pipeline for several rows, sharing one zero scan and one
/// extended-precision context: zeros -> gamma_to_theta -> continued_fraction.
pub fn table1_rows(
    rows: &[u32],
    digits: u32,
    max_terms: usize,
) -> Result<Vec<Table1Row>, RotationError> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let n_max = *rows.iter().max().unwrap();
    if rows.iter().any(|&n| n == 0) {
        return Err(RotationError::InvalidInput("rows are 1-based".into()));
    }
    // f64 seeds; ~649 zeros fit below T_MAX
    let seeds = match zeros_up_to_n(n_max, 8) {
        Ok(s) => s,
        Err(ZerosError::InvalidRange { .. }) => {
            return Err(RotationError::ZeroUnavailable(n_max))
        }
        Err(e) => return Err(e.into()),
    };
    if (seeds.len() as u32) < n_max {
        return Err(RotationError::ZeroUnavailable(n_max));
    }
    let mut ctx = ExtCtx::new(digits + 10);
    let mut out = Vec::with_capacity(rows.len());
    for &n in rows {
        out.push(row_from_seed(&mut ctx, &seeds[(n - 1) as usize], digits, max_terms)?);
    }
    Ok(out)
}

/// Single row (spec-level operation); see `table1_rows` for the batched form.
pub fn table1_row(n: u32, digits: u32, max_terms: usize) -> Result<Table1Row, RotationError> {
    Ok(table1_rows(&[n], digits, max_terms)?.pop().unwrap())
}

fn row_from_seed(
    ctx: &mut ExtCtx,
    seed: &ZeroRecord,
    digits: u32,
    max_terms: usize,
) -> Result<Table1Row, RotationError> {
    let n = seed.index;
    if seed.gamma > T_MAX {
        return Err(RotationError::ZeroUnavailable(n));
    }
    let ez = ctx.refine_zero(n, seed.gamma);
    let err = bf_to_f64(&ez.err);
    let gamma_f64 = bf_to_f64(&ez.gamma);
    if err > gamma_f64 * 10f64.powi(-(digits as i32)) {
        return Err(RotationError::ZeroUnavailable(n));
    }
    let (th_lo, th_hi) = ctx.theta_interval(&ez);
    let lo = bf_to_rational(&th_lo)
        .ok_or_else(|| RotationError::InvalidInput("theta_lo not finite".into()))?;
    let hi = bf_to_rational(&th_hi)
        .ok_or_else(|| RotationError::InvalidInput("theta_hi not finite".into()))?;
    let cf = continued_fraction(&lo, &hi, max_terms, digits)?;
    let theta_mid = ctx.theta(&ez.gamma.clone());
    Ok(Table1Row {
        n,
        gamma_f64,
        theta_f64: bf_to_f64(&theta_mid),
        gamma_str: ctx.format_decimal(&ez.gamma.clone(), digits),
        theta_str: ctx.format_decimal(&theta_mid, digits),
        cf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn theta_for_table_rows_matches_printed_values() {
        // gamma values at the table's print precision reproduce the printed thetas
        let cases = [
            (14.134725, 0.0112552, 5e-8),
            (21.022040, 0.00756943, 5e-9),
            (25.010858, 0.00636259, 5e-9),
            (30.424876, 0.00523061, 5e-9),
        ];
        for (g, th, tol) in cases {
            let r = gamma_to_theta(g, 6).unwrap();
            assert!(
                (r.theta - th).abs() < tol,
                "theta({g}) = {} vs printed {th}",
                r.theta
            );
        }
    }

    #[test]
    fn theta_of_half_is_quarter() {
        // gamma = 1/(2 tan(pi theta)) with theta = 1/4 gives tan(pi/4) = 1,
        // gamma = 1/2; so theta(1/2) = (1/pi) arctan(1) = 1/4 exactly
        let r = gamma_to_theta(0.5, 12).unwrap();
        assert!((r.theta - 0.25).abs() < 1e-15);
    }

    #[test]
    fn inverse_consistency() {
        for &g in &[14.134725, 49.7738, 236.524, 0.37] {
            let r = gamma_to_theta(g, 12).unwrap();
            let back = 1.0 / (2.0 * (std::f64::consts::PI * r.theta).tan());
            assert!(
                (back - g).abs() / g < 1e-10,
                "round trip {g} -> {back}"
            );
        }
    }

    #[test]
    fn cf_of_exact_half_is_two() {
        let cf = continued_fraction_f64(0.5, 0.5, 10, 17).unwrap();
        assert_eq!(cf.quotients, vec![2]);
        assert_eq!(cf.certified_count, 1);
    }

    #[test]
    fn cf_of_golden_ratio_is_all_ones() {
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let cf = continued_fraction_f64(phi - 1e-13, phi + 1e-13, 30, 15).unwrap();
        assert!(cf.certified_count >= 10, "certified {}", cf.certified_count);
        for &a in cf.certified() {
            assert_eq!(a, 1);
        }
    }

    #[test]
    fn interval_straddling_half_certifies_nothing() {
        let r = continued_fraction_f64(0.49, 0.51, 10, 2);
        assert!(matches!(r, Err(RotationError::IntervalTooWide)));
    }

    #[test]
    fn table_rows_1_to_4_match_printed_quotients() {
        let rows = table1_rows(&[1, 2, 3, 4], 40, 30).unwrap();
        let expected: [&[u64]; 4] = [
            &[88, 1, 5, 1, 1, 2, 2, 5, 2, 15],
            &[132, 9, 14, 1, 1, 1, 2, 1, 52, 1],
            &[157, 5, 1, 12, 3, 1, 1, 1, 1, 2],
            &[191, 5, 2, 15, 3, 2, 2, 7, 2, 1],
        ];
        for (row, exp) in rows.iter().zip(expected) {
            assert!(
                row.cf.certified_count >= 10,
                "row {} certified only {}",
                row.n,
                row.cf.certified_count
            );
            assert_eq!(&row.cf.certified()[..10], exp, "row {}", row.n);
        }
        // theta monotonically decreasing across rows
        for w in rows.windows(2) {
            assert!(w[0].theta_f64 > w[1].theta_f64);
        }
    }

    #[test]
    fn table_rows_10_and_100_match_printed_quotients() {
        let rows = table1_rows(&[10, 100], 40, 30).unwrap();
        assert_eq!(&rows[0].cf.certified()[..5], &[312, 1, 2, 1, 48]);
        assert_eq!(&rows[1].cf.certified()[..5], &[1486, 7, 1, 4, 1]);
        assert!((rows[1].theta_f64 - 0.00067289).abs() < 5e-9);
    }

    #[test]
    fn convergent_bound_holds() {
        // the bound |x - p_k/q_k| < 1/q_k^2 is checked in exact arithmetic
        // against the dyadic rational x that was actually expanded
        let rows = table1_rows(&[1], 40, 25).unwrap();
        let x = BigRational::from_float(rows[0].theta_f64).unwrap();
        let cf = continued_fraction(&x, &x, 25, 17).unwrap();
        for (p, q) in convergents(&cf.quotients) {
            let approx = BigRational::new(p, q.clone());
            let err = (&x - &approx).abs();
            let bound = BigRational::new(1.into(), &q * &q);
            assert!(err < bound, "convergent bound violated at q = {q}");
        }
    }

    #[test]
    fn certification_soundness_under_lower_precision() {
        let hi = table1_rows(&[1], 34, 40).unwrap().pop().unwrap();
        let lo = table1_rows(&[1], 32, 40).unwrap().pop().unwrap();
        assert!(lo.cf.certified_count <= hi.cf.certified_count);
        let k = lo.cf.certified_count;
        assert_eq!(&lo.cf.certified()[..k], &hi.cf.quotients[..k]);
    }
}
