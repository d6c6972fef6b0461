//! Locating non-trivial zeros 1/2 + i gamma_n on the critical line.
//!
//! Sign changes of the Hardy Z function bracket the zeros; each bracket is
//! refined by Newton iteration on t -> zeta(1/2 + i t). The count of zeros
//! found over a range is cross-checked against the argument-principle winding
//! of zeta over the rectangle [0,1] x [t_lo, t_hi]; a mismatch is reported as
//! `MissedZeroSuspected`, never silently dropped.

use num_complex::Complex64;
use rayon::prelude::*;
use std::io::{BufRead, Write};
use std::path::Path;
use thiserror::Error;

use crate::contour::{winding_rectangle, ContourError};
use crate::special::gamma::log_gamma;
use crate::special::zeta::{zeta, T_MAX};
use crate::special::SpecialError;
use crate::Rect;

/// Default scan step; below half the minimal zero gap at desk heights.
pub const DEFAULT_GRID_STEP: f64 = 0.05;

const LN_PI: f64 = 1.144_729_885_849_400_2;
const ZETA_TARGET: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ZerosError {
    #[error("range [{t_lo}, {t_hi}] invalid: need 0 <= t_lo < t_hi <= {t_max}", t_max = T_MAX)]
    InvalidRange { t_lo: f64, t_hi: f64 },
    #[error("target digits {0} out of the double-precision range 1..=14")]
    InvalidDigits(u32),
    #[error(
        "argument-principle count {expected} != {found} sign changes in [{t_lo}, {t_hi}]: \
         a multiple zero or off-line zero is suspected"
    )]
    MissedZeroSuspected {
        expected: i64,
        found: usize,
        t_lo: f64,
        t_hi: f64,
    },
    #[error("zero cache format error at line {line}: {msg}")]
    FormatError { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Eval(#[from] SpecialError),
    #[error(transparent)]
    Contour(#[from] ContourError),
    #[error("Hardy Z self-check failed at t = {t}: |Im| = {imag:e}")]
    SelfCheckFailed { t: f64, imag: f64 },
}

/// How a record was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Method {
    #[serde(rename = "sign-bracket+refine")]
    SignBracketRefine,
    #[serde(rename = "imported")]
    Imported,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::SignBracketRefine => "sign-bracket+refine",
            Method::Imported => "imported",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "sign-bracket+refine" => Some(Method::SignBracketRefine),
            "imported" => Some(Method::Imported),
            _ => None,
        }
    }
}

/// One certified zero ordinate. `gamma` is stored rounded to
/// `precision_digits` significant digits (so the CSV round-trip is exact) and
/// `residual` is |zeta(1/2 + i gamma)| at that stored value.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ZeroRecord {
    pub index: u32,
    pub gamma: f64,
    pub precision_digits: u32,
    pub residual: f64,
    pub method: Method,
}

impl ZeroRecord {
    /// The zero as a point on the critical line.
    pub fn point(&self) -> Complex64 {
        Complex64::new(0.5, self.gamma)
    }
}

/// Residuals |zeta(1/2 + i t_k)| over the Newton refinement of one bracket.
#[derive(Debug, Clone, Default)]
pub struct RefinementLog {
    pub residuals: Vec<f64>,
}

impl RefinementLog {
    /// True when the tail of the iteration contracts at least quadratically:
    /// for the last three residuals above the rounding floor,
    /// r2 <= 10 * r1^3 / r0^2 (log-convexity of exponent-doubling with slack).
    pub fn is_quadratic(&self) -> bool {
        let above: Vec<f64> = self
            .residuals
            .iter()
            .copied()
            .filter(|r| *r > 1e-11)
            .collect();
        if above.len() < 3 {
            return true; // converged too fast to sample three points
        }
        let r0 = above[above.len() - 3];
        let r1 = above[above.len() - 2];
        let r2 = above[above.len() - 1];
        r2 <= 10.0 * r1 * (r1 / r0) * (r1 / r0)
    }
}

/// Riemann-Siegel theta: Im log Gamma(1/4 + i t/2) - (t/2) ln pi, on the
/// continuous branch of the right half-plane.
pub fn rs_theta(t: f64) -> f64 {
    log_gamma(Complex64::new(0.25, t / 2.0)).im - 0.5 * t * LN_PI
}

/// Hardy Z(t) = e^{i theta(t)} zeta(1/2 + it), real for real t. The imaginary
/// part of the computed product must stay below 1e-9 (self-check).
pub fn hardy_z(t: f64) -> Result<f64, ZerosError> {
    if t.abs() > T_MAX {
        return Err(ZerosError::InvalidRange { t_lo: -T_MAX, t_hi: t });
    }
    let z = zeta(Complex64::new(0.5, t), ZETA_TARGET)?;
    let theta = rs_theta(t);
    let rot = Complex64::new(0.0, theta).exp();
    let w = rot * z.value;
    if w.im.abs() >= 1e-9 {
        return Err(ZerosError::SelfCheckFailed { t, imag: w.im.abs() });
    }
    Ok(w.re)
}

/// Newton refinement of a bracketed zero. Returns the refined ordinate, an
/// estimate of correct significant digits, and the residual log.
pub fn refine_zero(mut lo: f64, mut hi: f64, max_iter: usize) -> Result<(f64, u32, RefinementLog), ZerosError> {
    let mut log = RefinementLog::default();
    // a few bisection steps to seed Newton safely
    let mut z_lo = hardy_z(lo)?;
    for _ in 0..6 {
        if hi - lo < 1e-3 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let z_mid = hardy_z(mid)?;
        if (z_lo < 0.0) == (z_mid < 0.0) {
            lo = mid;
            z_lo = z_mid;
        } else {
            hi = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    let mut last_step = hi - lo;
    let mut small_steps = 0;
    for _ in 0..max_iter {
        let v = zeta(Complex64::new(0.5, t), ZETA_TARGET)?;
        log.residuals.push(v.value.norm());
        let h_prime = Complex64::new(0.0, 1.0) * v.derivative;
        let step = (v.value / h_prime).re;
        if !step.is_finite() {
            break;
        }
        t -= step;
        last_step = step.abs();
        if last_step < 1e-15 * t.abs().max(1.0) {
            small_steps += 1;
            if small_steps >= 2 {
                break;
            }
        } else {
            small_steps = 0;
        }
    }
    let final_residual = zeta(Complex64::new(0.5, t), ZETA_TARGET)?.value.norm();
    log.residuals.push(final_residual);
    let est = -(last_step + t.abs() * 1e-16).log10();
    let digits = est.floor().clamp(1.0, 14.0) as u32;
    Ok((t, digits, log))
}

/// Round to `digits` significant decimal digits through the printed form, so
/// the in-memory value and the CSV cell agree bit for bit.
pub fn round_sig(x: f64, digits: u32) -> f64 {
    format!("{:.*e}", digits.saturating_sub(1) as usize, x)
        .parse()
        .unwrap()
}

fn scan_brackets(t_lo: f64, t_hi: f64, step: f64) -> Result<Vec<(f64, f64)>, ZerosError> {
    let n = ((t_hi - t_lo) / step).ceil() as usize + 1;
    let ts: Vec<f64> = (0..=n).map(|i| t_lo + (i as f64) * step).collect();
    let zs: Vec<f64> = ts
        .par_iter()
        .map(|&t| hardy_z(t.min(t_hi)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut brackets = Vec::new();
    for i in 0..n {
        if (zs[i] < 0.0) != (zs[i + 1] < 0.0) {
            brackets.push((ts[i], ts[i + 1].min(t_hi)));
        }
    }
    Ok(brackets)
}

/// Shift an ordinate within `[lo_limit, hi_limit]` until |Z| is comfortably
/// away from zero, so a counting rectangle never passes through a zero.
fn clean_ordinate(start: f64, lo_limit: f64, hi_limit: f64) -> Result<f64, ZerosError> {
    let mut best = start;
    let mut best_val = hardy_z(start)?.abs();
    let mut offset = 0.011;
    while best_val < 0.05 && offset < 0.35 {
        for cand in [start - offset, start + offset] {
            if cand >= lo_limit && cand <= hi_limit {
                let v = hardy_z(cand)?.abs();
                if v > best_val {
                    best = cand;
                    best_val = v;
                }
            }
        }
        offset += 0.011;
    }
    Ok(best)
}

fn count_zeros_in(lo: f64, hi: f64) -> Result<i64, ZerosError> {
    if hi <= lo {
        return Ok(0);
    }
    let zeta_fn = |z: Complex64| zeta(z, 1e-10).map(|v| v.value);
    let rect = Rect::new(0.0, 1.0, lo, hi);
    Ok(winding_rectangle(&zeta_fn, rect, 0.15)?)
}

/// Scan [t_lo, t_hi] for critical-line zeros, refine each to at least
/// `target_digits` significant digits, cross-check the count by the argument
/// principle, and return records sorted by gamma.
pub fn find_zeros(t_lo: f64, t_hi: f64, target_digits: u32) -> Result<Vec<ZeroRecord>, ZerosError> {
    if !(0.0..T_MAX).contains(&t_lo) || t_hi <= t_lo || t_hi > T_MAX {
        return Err(ZerosError::InvalidRange { t_lo, t_hi });
    }
    if !(1..=14).contains(&target_digits) {
        return Err(ZerosError::InvalidDigits(target_digits));
    }
    // margin so that the counting rectangle can sit on "clean" ordinates
    let scan_lo = (t_lo - 0.4).max(0.0);
    let scan_hi = (t_hi + 0.4).min(T_MAX);

    let mut step = DEFAULT_GRID_STEP;
    let mut last_found = 0usize;
    let mut last_expected = 0i64;
    for _attempt in 0..3 {
        let brackets = scan_brackets(scan_lo, scan_hi, step)?;
        let refined: Vec<(f64, u32, RefinementLog)> = brackets
            .par_iter()
            .map(|&(a, b)| refine_zero(a, b, 30))
            .collect::<Result<Vec<_>, _>>()?;
        let mut gammas: Vec<(f64, u32)> = refined.iter().map(|(g, d, _)| (*g, *d)).collect();
        gammas.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        gammas.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-9);

        // counting rectangle: clean endpoints containing the scanned band,
        // bottom clipped above the pole of zeta
        let bottom = if scan_lo < 13.0 {
            2.0
        } else {
            clean_ordinate(scan_lo, scan_lo - 0.4, scan_lo + 0.4)?
        };
        let top = clean_ordinate(scan_hi, scan_hi - 0.4, scan_hi + 0.4)?;
        let in_rect: Vec<(f64, u32)> = gammas
            .iter()
            .copied()
            .filter(|(g, _)| *g > bottom && *g < top)
            .collect();
        let expected = if top <= 14.0 {
            0
        } else {
            count_zeros_in(bottom, top)?
        };
        if expected == in_rect.len() as i64 {
            let n_below = if bottom <= 14.0 {
                0
            } else {
                count_zeros_in(2.0, bottom)?
            };
            let mut records = Vec::new();
            for (pos, (g, d)) in in_rect.iter().enumerate() {
                let digits = (*d).max(target_digits).min(14);
                if digits < target_digits {
                    return Err(ZerosError::Eval(SpecialError::AccuracyUnreachable {
                        requested: 10f64.powi(-(target_digits as i32)),
                        achieved: 10f64.powi(-(*d as i32)),
                    }));
                }
                let gamma = round_sig(*g, digits);
                let residual = zeta(Complex64::new(0.5, gamma), ZETA_TARGET)?.value.norm();
                records.push(ZeroRecord {
                    index: (n_below as u32) + (pos as u32) + 1,
                    gamma,
                    precision_digits: digits,
                    residual,
                    method: Method::SignBracketRefine,
                });
            }
            records.retain(|r| r.gamma >= t_lo && r.gamma <= t_hi);
            return Ok(records);
        }
        last_found = in_rect.len();
        last_expected = expected;
        step /= 4.0;
    }
    Err(ZerosError::MissedZeroSuspected {
        expected: last_expected,
        found: last_found,
        t_lo,
        t_hi,
    })
}

/// Find at least the first `n` zeros (by scanning upward in chunks) and return
/// exactly records 1..=n.
pub fn zeros_up_to_n(n: u32, target_digits: u32) -> Result<Vec<ZeroRecord>, ZerosError> {
    // Riemann-von Mangoldt estimate inverted, with margin
    let mut t_hi = 30.0_f64;
    loop {
        let est = (t_hi / (2.0 * std::f64::consts::PI)) * (t_hi / (2.0 * std::f64::consts::PI * std::f64::consts::E)).ln();
        if est > n as f64 + 4.0 || t_hi >= T_MAX {
            break;
        }
        t_hi *= 1.3;
    }
    let records = find_zeros(0.0, t_hi.min(T_MAX), target_digits)?;
    if (records.len() as u32) < n {
        return Err(ZerosError::MissedZeroSuspected {
            expected: n as i64,
            found: records.len(),
            t_lo: 0.0,
            t_hi,
        });
    }
    Ok(records.into_iter().take(n as usize).collect())
}

const CSV_HEADER: &str = "index,gamma,precision_digits,residual,method";

/// Write records as UTF-8 CSV with LF endings; gammas carry
/// `precision_digits` significant digits.
pub fn store_zeros<P: AsRef<Path>>(path: P, records: &[ZeroRecord]) -> Result<(), ZerosError> {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{:.*e},{},{:e},{}\n",
            r.index,
            r.precision_digits.saturating_sub(1) as usize,
            r.gamma,
            r.precision_digits,
            r.residual,
            r.method.as_str()
        ));
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(out.as_bytes())?;
    Ok(())
}

/// Read a CSV zero cache, validating the header, field syntax, and the
/// strictly-increasing gamma/index invariants.
pub fn load_zeros<P: AsRef<Path>>(path: P) -> Result<Vec<ZeroRecord>, ZerosError> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut records: Vec<ZeroRecord> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if i == 0 {
            if line.trim_end() != CSV_HEADER {
                return Err(ZerosError::FormatError {
                    line: lineno,
                    msg: format!("expected header '{CSV_HEADER}'"),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(ZerosError::FormatError {
                line: lineno,
                msg: format!("expected 5 fields, got {}", fields.len()),
            });
        }
        let parse_err = |what: &str| ZerosError::FormatError {
            line: lineno,
            msg: format!("bad {what}"),
        };
        let index: u32 = fields[0].parse().map_err(|_| parse_err("index"))?;
        let gamma: f64 = fields[1].parse().map_err(|_| parse_err("gamma"))?;
        let precision_digits: u32 = fields[2].parse().map_err(|_| parse_err("precision_digits"))?;
        let residual: f64 = fields[3].parse().map_err(|_| parse_err("residual"))?;
        let method = Method::parse(fields[4]).ok_or_else(|| parse_err("method"))?;
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(parse_err("gamma (must be finite and positive)"));
        }
        if !(residual < 1e-8) {
            return Err(ZerosError::FormatError {
                line: lineno,
                msg: format!("residual {residual:e} violates the < 1e-8 invariant"),
            });
        }
        if let Some(prev) = records.last() {
            if gamma <= prev.gamma {
                return Err(ZerosError::FormatError {
                    line: lineno,
                    msg: format!("gamma {gamma} not strictly increasing"),
                });
            }
            if index <= prev.index {
                return Err(ZerosError::FormatError {
                    line: lineno,
                    msg: format!("index {index} not strictly increasing"),
                });
            }
        }
        records.push(ZeroRecord {
            index,
            gamma,
            precision_digits,
            residual,
            method,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hardy_z_at_zero_is_zeta_half() {
        // oracle: direct zeta evaluation at s = 1/2
        let oracle = zeta(Complex64::new(0.5, 0.0), 1e-13).unwrap().value.re;
        let z0 = hardy_z(0.0).unwrap();
        assert!((z0 - oracle).abs() < 1e-12);
        assert!((z0 + 1.4603545).abs() < 1e-6);
    }

    #[test]
    fn hardy_z_vanishes_at_first_zero() {
        let z = hardy_z(14.134725).unwrap();
        assert!(z.abs() < 1e-5, "Z(14.134725) = {z}");
    }

    #[test]
    fn hardy_z_sign_change_brackets_second_zero() {
        // no zero between gamma_1 and gamma_2, so Z keeps its sign there...
        let a = hardy_z(14.2).unwrap();
        let b = hardy_z(21.0).unwrap();
        assert!((a < 0.0) == (b < 0.0), "Z(14.2)={a}, Z(21.0)={b}");
        // ...and flips exactly across gamma_2 = 21.0220
        let c = hardy_z(21.1).unwrap();
        assert!((b < 0.0) != (c < 0.0), "Z(21.0)={b}, Z(21.1)={c}");
    }

    #[test]
    fn theta_is_odd() {
        for &t in &[1.0, 10.0, 50.0] {
            assert!((rs_theta(t) + rs_theta(-t)).abs() < 1e-10);
        }
        assert!(rs_theta(0.0).abs() < 1e-14);
    }

    #[test]
    fn first_four_zeros_match_printed_table() {
        let rec = find_zeros(10.0, 32.0, 6).unwrap();
        assert_eq!(rec.len(), 4);
        let printed = [14.1347, 21.0220, 25.0109, 30.4249];
        for (r, p) in rec.iter().zip(printed) {
            assert!(
                (r.gamma - p).abs() < 5e-5,
                "gamma {} vs printed {p}",
                r.gamma
            );
            assert!(r.residual < 1e-8);
        }
        assert_eq!(rec[0].index, 1);
        assert_eq!(rec[3].index, 4);
    }

    #[test]
    fn no_zeros_below_ten() {
        let rec = find_zeros(0.0, 10.0, 6).unwrap();
        assert!(rec.is_empty());
    }

    #[test]
    fn tenth_zero_near_49_77() {
        // [45, 52] holds gamma_9 = 48.0052 and gamma_10 = 49.7738
        let rec = find_zeros(45.0, 52.0, 6).unwrap();
        assert_eq!(rec.len(), 2);
        let tenth = rec.iter().find(|r| r.index == 10).expect("index 10 present");
        assert!((tenth.gamma - 49.7738).abs() < 5e-5);
    }

    #[test]
    fn ten_zeros_below_fifty() {
        let rec = find_zeros(0.0, 50.0, 6).unwrap();
        assert_eq!(rec.len(), 10);
        for w in rec.windows(2) {
            assert!(w[0].gamma < w[1].gamma);
        }
    }

    #[test]
    fn refinement_is_quadratic() {
        let (_, _, log) = refine_zero(14.0, 14.3, 30).unwrap();
        assert!(
            log.is_quadratic(),
            "residual log not quadratic: {:?}",
            log.residuals
        );
    }

    #[test]
    fn csv_round_trip_identity() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("zeros.csv");
        let rec = find_zeros(10.0, 32.0, 6).unwrap();
        store_zeros(&path, &rec).unwrap();
        let back = load_zeros(&path).unwrap();
        assert_eq!(rec, back);
        // idempotent second round trip, byte-identical file
        let bytes1 = std::fs::read(&path).unwrap();
        store_zeros(&path, &back).unwrap();
        let bytes2 = std::fs::read(&path).unwrap();
        assert_eq!(bytes1, bytes2);
    }

    #[test]
    fn csv_rejects_decreasing_gammas() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(
            &path,
            "index,gamma,precision_digits,residual,method\n\
             1,2.10220e1,6,1e-9,sign-bracket+refine\n\
             2,1.41347e1,6,1e-9,sign-bracket+refine\n",
        )
        .unwrap();
        match load_zeros(&path) {
            Err(ZerosError::FormatError { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected FormatError, got {other:?}"),
        }
    }

    #[test]
    fn csv_header_only_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        std::fs::write(&path, "index,gamma,precision_digits,residual,method\n").unwrap();
        assert!(load_zeros(&path).unwrap().is_empty());
    }

    #[test]
    fn csv_rejects_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad2.csv");
        std::fs::write(&path, "wrong,header\n").unwrap();
        assert!(matches!(
            load_zeros(&path),
            Err(ZerosError::FormatError { line: 1, .. })
        ));
    }
}
