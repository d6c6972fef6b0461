//! Software extended-precision path: complex arithmetic over `astro_float`
//! big floats, an Euler-Maclaurin zeta evaluator at arbitrary precision, and
//! critical-line zero refinement to tens of digits. Only the continued
//! fraction certification pipeline needs this; everything else runs on f64.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, WORD_BIT_SIZE};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::special::zeta::T_MAX;

const RM: RoundingMode = RoundingMode::ToEven;

/// Extended-precision context: precision, constants cache, Bernoulli-based
/// Euler-Maclaurin coefficients and a log table.
pub struct ExtCtx {
    /// mantissa bits
    pub p: usize,
    pub decimal_digits: u32,
    cc: Consts,
    /// B_{2k}/(2k)! for k = 1..=k_max
    em_coeff: Vec<BigFloat>,
    k_max: usize,
    ln_cache: Vec<BigFloat>,
    pi: BigFloat,
}

/// Complex number over BigFloat.
#[derive(Debug, Clone)]
pub struct BigC {
    pub re: BigFloat,
    pub im: BigFloat,
}

/// A zero ordinate refined at extended precision, with a rigorous-in-spirit
/// enclosure half-width.
#[derive(Debug, Clone)]
pub struct ExtZero {
    pub index: u32,
    pub gamma: BigFloat,
    pub err: BigFloat,
    pub residual_log2: f64,
}

fn bernoulli_em_coeffs(k_max: usize) -> Vec<(BigInt, BigInt)> {
    // Bernoulli numbers by the classical recurrence, exact rationals
    let mut b: Vec<BigRational> = Vec::with_capacity(2 * k_max + 1);
    b.push(BigRational::one());
    for m in 1..=(2 * k_max) {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate().take(m) {
            acc += BigRational::from(binom.clone()) * bj;
            // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from(BigInt::from(m + 1)));
    }
    let mut out = Vec::with_capacity(k_max);
    let mut fact = BigInt::one();
    for i in 1..=2 * k_max {
        fact *= BigInt::from(i);
        if i % 2 == 0 {
            let k = i / 2;
            let c = &b[2 * k];
            out.push((c.numer().clone(), c.denom().clone() * &fact));
        }
    }
    out
}

impl ExtCtx {
    pub fn new(decimal_digits: u32) -> Self {
        let p = ((decimal_digits as f64) * 3.33).ceil() as usize + 64;
        let k_max = p / 4 + 10;
        let mut cc = Consts::new().expect("constants cache");
        let pi = cc.pi(p, RM);
        let em_coeff = bernoulli_em_coeffs(k_max)
            .into_iter()
            .map(|(n, d)| {
                let nf = Self::bigint_to_bf(&n, p, &mut cc);
                let df = Self::bigint_to_bf(&d, p, &mut cc);
                nf.div(&df, p, RM)
            })
            .collect();
        ExtCtx {
            p,
            decimal_digits,
            cc,
            em_coeff,
            k_max,
            ln_cache: vec![BigFloat::from_f64(0.0, p)],
            pi,
        }
    }

    fn bigint_to_bf(n: &BigInt, p: usize, cc: &mut Consts) -> BigFloat {
        BigFloat::parse(&n.to_string(), Radix::Dec, p, RM, cc)
    }

    pub fn bf(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    pub fn pi(&self) -> BigFloat {
        self.pi.clone()
    }

    fn ln_n(&mut self, n: usize) -> BigFloat {
        while self.ln_cache.len() <= n {
            let k = self.ln_cache.len();
            let v = BigFloat::from_f64(k as f64, self.p).ln(self.p, RM, &mut self.cc);
            self.ln_cache.push(v);
        }
        self.ln_cache[n].clone()
    }

    // -- complex helpers ---------------------------------------------------

    pub fn c(&self, re: f64, im: f64) -> BigC {
        BigC {
            re: self.bf(re),
            im: self.bf(im),
        }
    }

    pub fn c_from(&self, re: BigFloat, im: BigFloat) -> BigC {
        BigC { re, im }
    }

    pub fn c_add(&self, a: &BigC, b: &BigC) -> BigC {
        BigC {
            re: a.re.add(&b.re, self.p, RM),
            im: a.im.add(&b.im, self.p, RM),
        }
    }

    pub fn c_sub(&self, a: &BigC, b: &BigC) -> BigC {
        BigC {
            re: a.re.sub(&b.re, self.p, RM),
            im: a.im.sub(&b.im, self.p, RM),
        }
    }

    pub fn c_mul(&self, a: &BigC, b: &BigC) -> BigC {
        let rr = a.re.mul(&b.re, self.p, RM);
        let ii = a.im.mul(&b.im, self.p, RM);
        let ri = a.re.mul(&b.im, self.p, RM);
        let ir = a.im.mul(&b.re, self.p, RM);
        BigC {
            re: rr.sub(&ii, self.p, RM),
            im: ri.add(&ir, self.p, RM),
        }
    }

    pub fn c_div(&self, a: &BigC, b: &BigC) -> BigC {
        let den = b
            .re
            .mul(&b.re, self.p, RM)
            .add(&b.im.mul(&b.im, self.p, RM), self.p, RM);
        let rr = a.re.mul(&b.re, self.p, RM);
        let ii = a.im.mul(&b.im, self.p, RM);
        let ir = a.im.mul(&b.re, self.p, RM);
        let ri = a.re.mul(&b.im, self.p, RM);
        BigC {
            re: rr.add(&ii, self.p, RM).div(&den, self.p, RM),
            im: ir.sub(&ri, self.p, RM).div(&den, self.p, RM),
        }
    }

    pub fn c_scale(&self, a: &BigC, s: &BigFloat) -> BigC {
        BigC {
            re: a.re.mul(s, self.p, RM),
            im: a.im.mul(s, self.p, RM),
        }
    }

    pub fn c_neg(&self, a: &BigC) -> BigC {
        BigC {
            re: a.re.neg(),
            im: a.im.neg(),
        }
    }

    /// exp(a) = e^(re) (cos im + i sin im)
    pub fn c_exp(&mut self, a: &BigC) -> BigC {
        let r = a.re.exp(self.p, RM, &mut self.cc);
        let cos = a.im.cos(self.p, RM, &mut self.cc);
        let sin = a.im.sin(self.p, RM, &mut self.cc);
        BigC {
            re: r.mul(&cos, self.p, RM),
            im: r.mul(&sin, self.p, RM),
        }
    }

    pub fn c_abs_f64(&self, a: &BigC) -> f64 {
        let re = bf_to_f64(&a.re);
        let im = bf_to_f64(&a.im);
        re.hypot(im)
    }

    // -- Euler-Maclaurin zeta ----------------------------------------------

    fn plan(&self, t_abs: f64) -> (usize, usize) {
        let k = self.k_max - 1;
        let n = ((t_abs + 2.0 * k as f64 + 10.0) * 0.6366).ceil() as usize;
        (n.max(24), k)
    }

    /// zeta(s) and zeta'(s) by Euler-Maclaurin at full context precision.
    /// Valid for Re s >= 0.25 (all we need: the critical line).
    pub fn zeta_pair(&mut self, s: &BigC) -> (BigC, BigC) {
        let t_abs = bf_to_f64(&s.im).abs();
        let (n_cut, k_corr) = self.plan(t_abs);
        let p = self.p;

        let neg_s = self.c_neg(s);
        let mut sum = self.c(1.0, 0.0);
        let mut dsum = self.c(0.0, 0.0);
        for n in 2..n_cut {
            let ln_n = self.ln_n(n);
            let w = self.c_scale(&neg_s, &ln_n);
            let term = self.c_exp(&w);
            sum = self.c_add(&sum, &term);
            let dterm = self.c_scale(&term, &ln_n);
            dsum = self.c_sub(&dsum, &dterm);
        }

        let ln_ncut = self.ln_n(n_cut);
        let w = self.c_scale(&neg_s, &ln_ncut);
        let npow = self.c_exp(&w); // N^-s
        let half = self.bf(0.5);
        let half_npow = self.c_scale(&npow, &half);
        sum = self.c_add(&sum, &half_npow);
        let d_half = self.c_scale(&half_npow, &ln_ncut);
        dsum = self.c_sub(&dsum, &d_half);

        let nf = self.bf(n_cut as f64);
        let n1ms = self.c_scale(&npow, &nf); // N^(1-s)
        let one = self.c(1.0, 0.0);
        let sm1 = self.c_sub(s, &one);
        let pole_term = self.c_div(&n1ms, &sm1);
        sum = self.c_add(&sum, &pole_term);
        let dp1 = self.c_scale(&pole_term, &ln_ncut);
        dsum = self.c_sub(&dsum, &dp1);
        let sm1_sq = self.c_mul(&sm1, &sm1);
        let dp2 = self.c_div(&n1ms, &sm1_sq);
        dsum = self.c_sub(&dsum, &dp2);

        // corrections c_k * P_k(s) * N^(1-s-2k)
        let inv_n = nf.reciprocal(p, RM);
        let inv_n2 = inv_n.mul(&inv_n, p, RM);
        let mut pk = s.clone(); // rising product
        let mut dpk = self.c(1.0, 0.0); // derivative of rising product
        let mut npow_corr = self.c_scale(&npow, &inv_n); // N^(-s-1)
        for k in 1..=k_corr {
            let ck = self.em_coeff[k - 1].clone();
            let a = self.c_mul(&pk, &npow_corr);
            let term = self.c_scale(&a, &ck);
            sum = self.c_add(&sum, &term);
            // d/ds: c_k (P' - P ln N) N^(1-s-2k)
            let pln = self.c_scale(&pk, &ln_ncut);
            let diff = self.c_sub(&dpk, &pln);
            let b = self.c_mul(&diff, &npow_corr);
            let dterm = self.c_scale(&b, &ck);
            dsum = self.c_add(&dsum, &dterm);

            // early exit once the term is far below 2^-p of the accumulated value
            if k >= 6 {
                let t_mag = self.c_abs_f64(&term).log2();
                let s_mag = self.c_abs_f64(&sum).abs().max(1e-300).log2();
                if t_mag < s_mag - (self.p as f64) - 8.0 {
                    break;
                }
            }

            // advance P, P' over (s + 2k-1)(s + 2k)
            for j in (2 * k - 1)..(2 * k + 1) {
                let f = self.c_add(s, &self.c(j as f64, 0.0));
                let a = self.c_mul(&dpk, &f);
                dpk = self.c_add(&a, &pk);
                pk = self.c_mul(&pk, &f);
            }
            npow_corr = self.c_scale(&npow_corr, &inv_n2);
        }
        (sum, dsum)
    }

    /// Newton-refine a critical-line zero from an f64 seed ordinate.
    /// Returns the ordinate and an enclosure half-width.
    pub fn refine_zero(&mut self, index: u32, seed_gamma: f64) -> ExtZero {
        assert!(seed_gamma > 0.0 && seed_gamma <= T_MAX);
        let mut t = self.bf(seed_gamma);
        let mut last_step_log2 = 0.0f64;
        let mut residual_log2 = 0.0f64;
        let stop_log2 = -((self.p as f64) - 8.0);
        for _ in 0..24 {
            let s = BigC {
                re: self.bf(0.5),
                im: t.clone(),
            };
            let (v, d) = self.zeta_pair(&s);
            residual_log2 = self.c_abs_f64(&v).max(1e-300).log2();
            // h'(t) = i zeta'(1/2 + it); Newton step on t is Re(v / (i d))
            let i_d = BigC {
                re: d.im.neg(),
                im: d.re.clone(),
            };
            let q = self.c_div(&v, &i_d);
            t = t.sub(&q.re, self.p, RM);
            let step_mag = bf_to_f64(&q.re).abs().max(1e-300);
            last_step_log2 = step_mag.log2() - bf_to_f64(&t).abs().log2();
            if last_step_log2 < stop_log2 {
                break;
            }
        }
        // enclosure: a safe multiple of the final Newton step plus the working
        // precision floor
        let gamma_f64 = bf_to_f64(&t);
        let step_abs = 2f64.powf(last_step_log2) * gamma_f64.abs();
        let floor = gamma_f64.abs() * 2f64.powi(-(self.p as i32) + 8);
        let err = self.bf(16.0 * step_abs + floor);
        ExtZero {
            index,
            gamma: t,
            err,
            residual_log2,
        }
    }

    /// theta = atan(1/(2 gamma)) / pi at context precision.
    pub fn theta(&mut self, gamma: &BigFloat) -> BigFloat {
        let two_gamma = gamma.mul(&self.bf(2.0), self.p, RM);
        let x = two_gamma.reciprocal(self.p, RM);
        let at = x.atan(self.p, RM, &mut self.cc);
        at.div(&self.pi.clone(), self.p, RM)
    }

    /// [theta_lo, theta_hi] from a gamma enclosure; theta is decreasing in
    /// gamma, endpoints inflated by a few ulps for the atan/pi roundings.
    pub fn theta_interval(&mut self, z: &ExtZero) -> (BigFloat, BigFloat) {
        let g_lo = z.gamma.sub(&z.err, self.p, RM);
        let g_hi = z.gamma.add(&z.err, self.p, RM);
        let th_hi_raw = self.theta(&g_lo);
        let th_lo_raw = self.theta(&g_hi);
        let eps = self.bf(1.0).add(&bf_pow2(-(self.p as i32) + 6, self.p), self.p, RM);
        let th_hi = th_hi_raw.mul(&eps, self.p, RM);
        let eps_dn = self.bf(2.0).sub(&eps, self.p, RM); // 1 - 2^(-p+6)
        let th_lo = th_lo_raw.mul(&eps_dn, self.p, RM);
        (th_lo, th_hi)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn format_decimal(&mut self, x: &BigFloat, digits: u32) -> String {
        let s = x
            .format(Radix::Dec, RM, &mut self.cc)
            .unwrap_or_else(|_| "nan".into());
        trim_decimal(&s, digits)
    }
}

fn bf_pow2(e: i32, p: usize) -> BigFloat {
    BigFloat::from_f64(1.0, p).mul(&BigFloat::from_f64(2f64.powi(e), p), p, RM)
}

/// Truncate the mantissa of a decimal scientific string to `digits`
/// significant digits (rendering only; no rounding correctness needed).
fn trim_decimal(s: &str, digits: u32) -> String {
    if let Some(epos) = s.find(['e', 'E']) {
        let (mant, exp) = s.split_at(epos);
        let mut out = String::new();
        let mut count = 0;
        for ch in mant.chars() {
            if ch.is_ascii_digit() {
                if count >= digits {
                    continue;
                }
                count += 1;
            }
            out.push(ch);
        }
        format!("{out}{exp}")
    } else {
        s.to_string()
    }
}

/// Exact conversion BigFloat -> rational (mantissa times power of two).
pub fn bf_to_rational(x: &BigFloat) -> Option<BigRational> {
    if x.is_zero() {
        return Some(BigRational::zero());
    }
    if x.is_nan() || x.is_inf() {
        return None;
    }
    let (words, _n, sign, exp, _inexact) = x.as_raw_parts()?;
    let mut bytes = Vec::with_capacity(words.len() * (WORD_BIT_SIZE / 8));
    for w in words {
        bytes.extend_from_slice(&w.to_le_bytes());
    }
    let mant = BigUint::from_bytes_le(&bytes);
    let mant_bits = (words.len() * WORD_BIT_SIZE) as i64;
    let shift = exp as i64 - mant_bits;
    let mut num = BigInt::from(mant);
    if sign == Sign::Neg {
        num = -num;
    }
    Some(if shift >= 0 {
        BigRational::from(num << shift as usize)
    } else {
        BigRational::new(num, BigInt::one() << ((-shift) as usize))
    })
}

/// Round-to-nearest f64 through the exact rational value.
pub fn bf_to_f64(x: &BigFloat) -> f64 {
    match bf_to_rational(x) {
        Some(r) => rational_to_f64(&r),
        None => {
            if x.is_inf_pos() {
                f64::INFINITY
            } else if x.is_inf_neg() {
                f64::NEG_INFINITY
            } else {
                f64::NAN
            }
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn rational_conversion_round_trips() {
        let ctx = ExtCtx::new(30);
        for &x in &[3.0, 0.15625, -7.25, 1e-3_f64.to_bits() as f64, 14.134725] {
            let bf = ctx.bf(x);
            let r = bf_to_rational(&bf).unwrap();
            assert_eq!(rational_to_f64(&r), x, "round trip {x}");
            assert_eq!(bf_to_f64(&bf), x);
        }
    }

    #[test]
    fn bernoulli_coefficients_match_f64_table() {
        let c = bernoulli_em_coeffs(6);
        let expect = [
            8.333333333333333e-2,
            -1.388888888888889e-3,
            3.306878306878307e-5,
            -8.267195767195768e-7,
            2.08767569878681e-8,
            -5.284190138687493e-10,
        ];
        for (i, (n, d)) in c.iter().enumerate() {
            let v = BigRational::new(n.clone(), d.clone()).to_f64().unwrap();
            assert!(
                (v - expect[i]).abs() <= expect[i].abs() * 1e-14,
                "coefficient {i}: {v} vs {}",
                expect[i]
            );
        }
    }

    #[test]
    fn ext_zeta_matches_f64_path() {
        let mut ctx = ExtCtx::new(30);
        for &(re, im) in &[(0.5, 14.0), (0.5, 30.4), (2.0, 1.0), (0.5, 49.8)] {
            let s = ctx.c(re, im);
            let (v, d) = ctx.zeta_pair(&s);
            let f64v = crate::special::zeta::zeta(Complex64::new(re, im), 1e-13).unwrap();
            let dv = (Complex64::new(bf_to_f64(&v.re), bf_to_f64(&v.im)) - f64v.value).norm();
            let dd =
                (Complex64::new(bf_to_f64(&d.re), bf_to_f64(&d.im)) - f64v.derivative).norm();
            assert!(dv < 1e-11, "value mismatch {dv} at ({re},{im})");
            assert!(dd < 1e-9, "derivative mismatch {dd} at ({re},{im})");
        }
    }

    #[test]
    fn ext_zeta_cross_precision_agreement() {
        let mut a = ExtCtx::new(30);
        let mut b = ExtCtx::new(45);
        let sa = a.c(0.5, 21.022039638771555);
        let sb = b.c(0.5, 21.022039638771555);
        let (va, _) = a.zeta_pair(&sa);
        let (vb, _) = b.zeta_pair(&sb);
        // agreement to (nearly) the smaller precision
        let diff = va.re.sub(&vb.re, a.p, RM);
        let scale = bf_to_f64(&va.re).abs().max(1e-3);
        assert!(
            bf_to_f64(&diff).abs() / scale < 2f64.powi(-(a.p as i32) + 12),
            "cross-precision diff {}",
            bf_to_f64(&diff)
        );
    }

    #[test]
    fn refine_first_zero_to_thirty_digits() {
        let mut ctx = ExtCtx::new(40);
        let z = ctx.refine_zero(1, 14.134725141734693);
        let g = bf_to_f64(&z.gamma);
        assert!((g - 14.134725141734693).abs() < 1e-12);
        // residual at the refined point must be far below f64 resolution
        assert!(
            z.residual_log2 < -100.0,
            "residual_log2 = {}",
            z.residual_log2
        );
        assert!(bf_to_f64(&z.err) < 1e-30, "err = {}", bf_to_f64(&z.err));
    }

    #[test]
    fn theta_matches_f64_formula() {
        let mut ctx = ExtCtx::new(30);
        let g = ctx.bf(14.134725141734693);
        let th = ctx.theta(&g);
        let expect = (1.0 / (2.0 * 14.134725141734693f64)).atan() / std::f64::consts::PI;
        assert!((bf_to_f64(&th) - expect).abs() < 1e-15);
    }
}
