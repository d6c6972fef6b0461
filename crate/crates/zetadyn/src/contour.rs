//! Winding numbers along rectangles and circles by adaptive argument tracking.
//!
//! The argument increment between consecutive samples is kept below pi/2 by
//! recursive bisection, so the total change of arg f divided by 2 pi is the
//! exact winding number (zeros minus poles inside) as long as f has no zero on
//! the path itself.

use num_complex::Complex64;
use thiserror::Error;

use crate::special::SpecialError;
use crate::Rect;

#[derive(Debug, Error)]
pub enum ContourError {
    #[error("function appears to vanish on the contour near {0}")]
    ZeroOnPath(Complex64),
    #[error("winding total {0} is not close to an integer")]
    NonIntegerWinding(f64),
    #[error(transparent)]
    Eval(#[from] SpecialError),
}

const MAX_DEPTH: u32 = 48;

fn arg_delta<F>(
    f: &F,
    a: Complex64,
    b: Complex64,
    fa: Complex64,
    fb: Complex64,
    depth: u32,
) -> Result<f64, ContourError>
where
    F: Fn(Complex64) -> Result<Complex64, SpecialError>,
{
    if fa.norm_sqr() == 0.0 || !fa.is_finite() {
        return Err(ContourError::ZeroOnPath(a));
    }
    if fb.norm_sqr() == 0.0 || !fb.is_finite() {
        return Err(ContourError::ZeroOnPath(b));
    }
    let d = (fb / fa).arg();
    if d.abs() <= std::f64::consts::FRAC_PI_2 {
        return Ok(d);
    }
    if depth >= MAX_DEPTH {
        return Err(ContourError::ZeroOnPath(a));
    }
    let mid = 0.5 * (a + b);
    let fm = f(mid)?;
    Ok(arg_delta(f, a, mid, fa, fm, depth + 1)? + arg_delta(f, mid, b, fm, fb, depth + 1)?)
}

/// Total change of arg f along the polyline through `pts` divided by 2 pi.
fn winding_polyline<F>(f: &F, pts: &[Complex64]) -> Result<i64, ContourError>
where
    F: Fn(Complex64) -> Result<Complex64, SpecialError>,
{
    let vals: Vec<Complex64> = pts
        .iter()
        .map(|&z| f(z))
        .collect::<Result<Vec<_>, _>>()?;
    let mut total = 0.0;
    for i in 0..pts.len() - 1 {
        total += arg_delta(f, pts[i], pts[i + 1], vals[i], vals[i + 1], 0)?;
    }
    let w = total / (2.0 * std::f64::consts::PI);
    let rounded = w.round();
    if (w - rounded).abs() > 0.05 {
        return Err(ContourError::NonIntegerWinding(w));
    }
    Ok(rounded as i64)
}

/// Winding of f around the counterclockwise boundary of `rect`: the number of
/// zeros minus poles inside. `step_hint` controls the initial sample spacing.
pub fn winding_rectangle<F>(f: &F, rect: Rect, step_hint: f64) -> Result<i64, ContourError>
where
    F: Fn(Complex64) -> Result<Complex64, SpecialError>,
{
    let mut pts = Vec::new();
    let corners = [
        Complex64::new(rect.re_lo, rect.im_lo),
        Complex64::new(rect.re_hi, rect.im_lo),
        Complex64::new(rect.re_hi, rect.im_hi),
        Complex64::new(rect.re_lo, rect.im_hi),
        Complex64::new(rect.re_lo, rect.im_lo),
    ];
    for w in corners.windows(2) {
        let (a, b) = (w[0], w[1]);
        let len = (b - a).norm();
        let n = ((len / step_hint).ceil() as usize).max(8);
        for i in 0..n {
            pts.push(a + (b - a) * (i as f64 / n as f64));
        }
    }
    pts.push(corners[0]);
    winding_polyline(f, &pts)
}

/// Winding of f around a counterclockwise circle: zeros minus poles inside.
pub fn winding_circle<F>(
    f: &F,
    center: Complex64,
    radius: f64,
    initial_nodes: usize,
) -> Result<i64, ContourError>
where
    F: Fn(Complex64) -> Result<Complex64, SpecialError>,
{
    let n = initial_nodes.max(16);
    let mut pts = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let phi = 2.0 * std::f64::consts::PI * (i as f64) / (n as f64);
        pts.push(center + radius * Complex64::new(phi.cos(), phi.sin()));
    }
    winding_polyline(f, &pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn circle_counts_polynomial_roots() {
        // f(z) = z^3 (z - 5): three zeros at 0 inside radius 1
        let f = |z: Complex64| Ok(z * z * z * (z - c(5.0, 0.0)));
        assert_eq!(winding_circle(&f, c(0.0, 0.0), 1.0, 32).unwrap(), 3);
        // both roots inside radius 6
        assert_eq!(winding_circle(&f, c(0.0, 0.0), 6.0, 32).unwrap(), 4);
    }

    #[test]
    fn poles_count_negative() {
        let f = |z: Complex64| Ok(1.0 / (z * z));
        assert_eq!(winding_circle(&f, c(0.0, 0.0), 0.5, 32).unwrap(), -2);
    }

    #[test]
    fn rectangle_counts_shifted_root() {
        let f = |z: Complex64| Ok(z - c(0.5, 0.5));
        let inside = Rect::new(0.0, 1.0, 0.0, 1.0);
        let outside = Rect::new(2.0, 3.0, 0.0, 1.0);
        assert_eq!(winding_rectangle(&f, inside, 0.1).unwrap(), 1);
        assert_eq!(winding_rectangle(&f, outside, 0.1).unwrap(), 0);
    }

    #[test]
    fn zero_on_path_detected() {
        let f = |z: Complex64| Ok(z - c(1.0, 0.0));
        let r = winding_circle(&f, c(0.0, 0.0), 1.0, 32);
        assert!(matches!(r, Err(ContourError::ZeroOnPath(_))));
    }
}
