//! Fixed-point dynamics of nu-maps and relaxed Newton maps.
//!
//! For a meromorphic g, the nu-map is nu_g(z) = z - g(z)/(z g'(z)) and the
//! relaxed Newton map is N_g(z) = z - kappa g(z)/g'(z) with |kappa - 1| < 1.
//! Zeros and poles of g are exactly the fixed points (away from 0 for nu);
//! multipliers and holomorphic indices come in closed form from the order:
//!
//!   nu,     zero of order m:  lambda = 1 - 1/(m alpha),  iota =  m alpha
//!   nu,     pole of order m:  lambda = 1 + 1/(m alpha),  iota = -m alpha
//!   newton, zero of order m:  lambda = 1 - kappa/m,      iota =  m/kappa
//!   newton, pole of order m:  lambda = 1 + kappa/m,      iota = -m/kappa
//!
//! and the contour integral (1/2 pi i) oint dz/(z - f(z)) is the independent
//! oracle for iota.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contour::{winding_circle, ContourError};
use crate::serde_util::{ser_complex, ser_complex_opt};
use crate::special::{AnalyticFunction, SpecialError};
use crate::zeros::ZeroRecord;
use crate::Rect;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("map has a pole at the requested point")]
    MapPole,
    #[error("{0} is not a fixed point of the requested map")]
    NotAFixedPoint(Complex64),
    #[error("could not determine the order of the zero/pole at {0}")]
    OrderUndetermined(Complex64),
    #[error("quadrature did not stabilize under node doubling (|delta| = {delta:e})")]
    QuadratureNonConvergent { delta: f64 },
    #[error("kappa = {0} violates |kappa - 1| < 1")]
    InvalidKappa(Complex64),
    #[error("rh-audit supports the zeta, xi, eta and chi family members, not {0}")]
    UnsupportedFunction(String),
    #[error(transparent)]
    Eval(#[from] SpecialError),
    #[error(transparent)]
    Contour(#[from] ContourError),
}

/// Which fixed-point dynamics to build from g.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Nu,
    Newton {
        #[serde(with = "crate::serde_util::complex")]
        kappa: Complex64,
    },
}

impl MapKind {
    pub fn nu() -> Self {
        MapKind::Nu
    }

    /// Relaxed Newton map; requires |kappa - 1| < 1.
    pub fn newton(kappa: Complex64) -> Result<Self, DynamicsError> {
        if (kappa - Complex64::new(1.0, 0.0)).norm() >= 1.0 {
            return Err(DynamicsError::InvalidKappa(kappa));
        }
        Ok(MapKind::Newton { kappa })
    }

    /// Traditional Newton map, kappa = 1.
    pub fn newton_classic() -> Self {
        MapKind::Newton {
            kappa: Complex64::new(1.0, 0.0),
        }
    }

    pub fn label(&self) -> String {
        match self {
            MapKind::Nu => "nu".into(),
            MapKind::Newton { kappa } => format!("newton(kappa={kappa})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Zero,
    Pole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Attracting,
    Indifferent,
    Repelling,
}

/// Everything the toolkit knows about one fixed point.
#[derive(Debug, Clone, Serialize)]
pub struct FixedPointReport {
    #[serde(serialize_with = "ser_complex")]
    pub alpha: Complex64,
    pub source: Source,
    pub order: u32,
    #[serde(serialize_with = "ser_complex")]
    pub lambda: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub iota_closed: Complex64,
    #[serde(serialize_with = "ser_complex_opt")]
    pub iota_quad: Option<Complex64>,
    pub class: Classification,
    /// |lambda| - 1, signed.
    pub margin: f64,
    /// Numerical error bound the classification respects; ties inside the
    /// bound are reported indifferent.
    #[serde(skip)]
    pub margin_error: f64,
}

/// Apply nu_g or N_{g,kappa} at z. At zeros/poles of g the point is fixed; a
/// pole of the map itself (z = 0 for nu, critical points of g) is `MapPole`.
pub fn apply_map(
    g: &AnalyticFunction,
    kind: MapKind,
    z: Complex64,
) -> Result<Complex64, DynamicsError> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(DynamicsError::Eval(SpecialError::NonFinite));
    }
    if kind == MapKind::Nu && z == Complex64::new(0.0, 0.0) {
        // nu_g(0) = 1/m at a zero of order m, -1/m at a pole (not fixed);
        // without a zero or pole at 0 the map has a pole there.
        let m = signed_order_at_origin(g)?;
        return if m != 0 {
            Ok(Complex64::new(1.0 / (m as f64), 0.0))
        } else {
            Err(DynamicsError::MapPole)
        };
    }
    let log_deriv = match g.log_derivative(z) {
        Ok(l) => l,
        // at a pole of g the nu/Newton step collapses to zero: z is fixed
        Err(SpecialError::PoleAt1) | Err(SpecialError::PoleHit(_)) => {
            return Ok(z);
        }
        Err(e) => return Err(DynamicsError::Eval(e)),
    };
    if !log_deriv.is_finite() {
        // exact zero or pole of g: fixed point
        return Ok(z);
    }
    let step = match kind {
        MapKind::Nu => 1.0 / (z * log_deriv),
        MapKind::Newton { kappa } => kappa / log_deriv,
    };
    let out = z - step;
    if !out.is_finite() {
        return Err(DynamicsError::MapPole);
    }
    Ok(out)
}

fn signed_order_at_origin(g: &AnalyticFunction) -> Result<i64, DynamicsError> {
    let origin = Complex64::new(0.0, 0.0);
    for (p, m) in g.declared_poles() {
        if p == origin {
            return Ok(-(m as i64));
        }
    }
    let probe = Rect::new(-1e-6, 1e-6, -1e-6, 1e-6);
    for (z, m) in g.declared_zeros_in(probe) {
        if z.norm() < 1e-9 {
            return Ok(m as i64);
        }
    }
    let v = g.eval(origin, 1e-10)?;
    if v.value.norm() > 1e-7 {
        return Ok(0);
    }
    signed_order(g, origin, 1e-4)
}

/// Signed order of g at alpha (positive = zero, negative = pole) by the
/// argument-principle winding of g around a small circle.
pub fn signed_order(
    g: &AnalyticFunction,
    alpha: Complex64,
    radius: f64,
) -> Result<i64, DynamicsError> {
    let f = |z: Complex64| g.eval(z, 1e-10).map(|v| v.value);
    let w = winding_circle(&f, alpha, radius, 64)?;
    Ok(w)
}

/// Options for `fixed_point_report`.
#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub order_hint: Option<u32>,
    /// Absolute uncertainty of the alpha location (drives the classification
    /// margin and the order-probe radius).
    pub location_error: f64,
    pub with_quadrature: bool,
    pub quad_radius: Option<f64>,
    pub quad_nodes: usize,
    /// Other fixed points, used to keep the quadrature circle clear.
    pub nearby: Vec<Complex64>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            order_hint: None,
            location_error: 1e-12,
            with_quadrature: false,
            quad_radius: None,
            quad_nodes: 256,
            nearby: Vec::new(),
        }
    }
}

/// Closed-form multiplier/index/classification for the fixed point of the
/// chosen map at a zero or pole of g.
pub fn fixed_point_report(
    g: &AnalyticFunction,
    kind: MapKind,
    alpha: Complex64,
    opts: &ReportOptions,
) -> Result<FixedPointReport, DynamicsError> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(DynamicsError::Eval(SpecialError::NonFinite));
    }
    if kind == MapKind::Nu && alpha.norm() == 0.0 {
        return Err(DynamicsError::NotAFixedPoint(alpha));
    }

    // source and order: declared metadata first, then a winding probe
    let declared_pole = g
        .declared_poles()
        .into_iter()
        .find(|(p, _)| (p - alpha).norm() <= 1e-9 + opts.location_error);
    let (source, order) = if let Some((_, m)) = declared_pole {
        (Source::Pole, m)
    } else {
        // verify alpha is (numerically) a zero or pole: |g/g'| is the distance
        // scale to the nearest one
        let dist = match g.log_derivative(alpha) {
            Ok(l) if l.is_finite() => (1.0 / l).norm(),
            // infinite log-derivative or a pole error means we are exactly on it
            _ => 0.0,
        };
        let tol = (1e-6 * (1.0 + alpha.norm())).max(20.0 * opts.location_error);
        if dist > tol {
            return Err(DynamicsError::NotAFixedPoint(alpha));
        }
        let radius = (10.0 * opts.location_error).max(1e-3);
        let m = match opts.order_hint {
            Some(h) => {
                // hint fixes the magnitude; the winding sign still decides zero vs pole
                let w = signed_order(g, alpha, radius)?;
                if w == 0 {
                    return Err(DynamicsError::NotAFixedPoint(alpha));
                }
                if w < 0 {
                    -(h as i64)
                } else {
                    h as i64
                }
            }
            None => {
                let w = signed_order(g, alpha, radius)?;
                if w == 0 {
                    return Err(DynamicsError::NotAFixedPoint(alpha));
                }
                w
            }
        };
        if m > 0 {
            (Source::Zero, m as u32)
        } else {
            (Source::Pole, (-m) as u32)
        }
    };

    let mf = order as f64;
    let (lambda, iota, dlambda_dalpha) = match (kind, source) {
        (MapKind::Nu, Source::Zero) => (
            Complex64::new(1.0, 0.0) - 1.0 / (mf * alpha),
            mf * alpha,
            1.0 / (mf * alpha.norm_sqr()),
        ),
        (MapKind::Nu, Source::Pole) => (
            Complex64::new(1.0, 0.0) + 1.0 / (mf * alpha),
            -mf * alpha,
            1.0 / (mf * alpha.norm_sqr()),
        ),
        (MapKind::Newton { kappa }, Source::Zero) => (
            Complex64::new(1.0, 0.0) - kappa / mf,
            mf / kappa,
            0.0,
        ),
        (MapKind::Newton { kappa }, Source::Pole) => (
            Complex64::new(1.0, 0.0) + kappa / mf,
            -mf / kappa,
            0.0,
        ),
    };

    let margin = lambda.norm() - 1.0;
    let margin_error = opts.location_error * dlambda_dalpha + 4e-16 * (1.0 + lambda.norm());
    let class = if margin > margin_error {
        Classification::Repelling
    } else if margin < -margin_error {
        Classification::Attracting
    } else {
        Classification::Indifferent
    };

    let iota_quad = if opts.with_quadrature {
        let f = |z: Complex64| apply_map(g, kind, z);
        let r0 = opts.quad_radius.unwrap_or(0.25 * (1.0 + alpha.norm()).min(2.0));
        let mut others = opts.nearby.clone();
        others.extend(g.declared_poles().iter().map(|(p, _)| *p));
        others.retain(|p| (p - alpha).norm() > 1e-9);
        let r = clear_radius(alpha, r0, &others);
        Some(index_quadrature(&f, alpha, r, opts.quad_nodes)?)
    } else {
        None
    };

    Ok(FixedPointReport {
        alpha,
        source,
        order,
        lambda,
        iota_closed: iota,
        iota_quad,
        class,
        margin,
        margin_error,
    })
}

/// Shrink r until every point in `others` is at least 3r away.
pub fn clear_radius(alpha: Complex64, mut r: f64, others: &[Complex64]) -> f64 {
    loop {
        let ok = others.iter().all(|p| (p - alpha).norm() >= 3.0 * r);
        if ok || r < 1e-6 {
            return r;
        }
        r *= 0.5;
    }
}

/// Holomorphic index by trapezoidal contour quadrature of
/// (1/2 pi i) oint dz / (z - f(z)) on a circle around alpha.
///
/// The trapezoid rule on equispaced nodes converges exponentially for analytic
/// integrands; node doubling must move the result by less than 1e-8 or the
/// quadrature is rejected.
pub fn index_quadrature<F>(
    f: &F,
    alpha: Complex64,
    radius: f64,
    nodes: usize,
) -> Result<Complex64, DynamicsError>
where
    F: Fn(Complex64) -> Result<Complex64, DynamicsError>,
{
    let coarse = quad_pass(f, alpha, radius, nodes.max(16))?;
    let fine = quad_pass(f, alpha, radius, nodes.max(16) * 2)?;
    let delta = (fine - coarse).norm();
    if delta > 1e-8 * fine.norm().max(1.0) {
        return Err(DynamicsError::QuadratureNonConvergent { delta });
    }
    Ok(fine)
}

fn quad_pass<F>(
    f: &F,
    alpha: Complex64,
    radius: f64,
    n: usize,
) -> Result<Complex64, DynamicsError>
where
    F: Fn(Complex64) -> Result<Complex64, DynamicsError>,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let phi = 2.0 * std::f64::consts::PI * (j as f64) / (n as f64);
        let e = Complex64::new(phi.cos(), phi.sin());
        let z = alpha + radius * e;
        let integrand = match f(z) {
            Ok(v) => {
                let den = z - v;
                if den.norm_sqr() == 0.0 {
                    return Err(DynamicsError::NotAFixedPoint(z));
                }
                e / den
            }
            // a pole of the map sends the integrand 1/(z - f) to zero
            Err(DynamicsError::MapPole) => Complex64::new(0.0, 0.0),
            Err(e) => return Err(e),
        };
        acc += integrand;
    }
    Ok(acc * radius / (n as f64))
}

/// Orbit termination condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitOutcome {
    Converged {
        target: usize,
        iterations: u32,
    },
    /// The orbit stalled at a point not in the target list (discovered
    /// attractor candidate).
    Settled {
        #[serde(serialize_with = "ser_complex")]
        point: Complex64,
        iterations: u32,
    },
    Escaped {
        iterations: u32,
    },
    Pole {
        iterations: u32,
    },
    Exhausted,
}

#[derive(Debug, Clone)]
pub struct Orbit {
    /// Visited points (z0 first); populated only when `record` is on.
    pub points: Vec<Complex64>,
    pub outcome: OrbitOutcome,
}

#[derive(Debug, Clone)]
pub struct OrbitOptions {
    pub max_iter: u32,
    pub escape_radius: f64,
    pub conv_tol: f64,
    pub record: bool,
    /// Leaving this region counts as escape (keeps zeta-family evaluation
    /// inside its supported domain). None = only the escape radius applies.
    pub eval_guard: Option<Rect>,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            max_iter: 200,
            escape_radius: 1e6,
            conv_tol: 1e-9,
            record: false,
            eval_guard: None,
        }
    }
}

/// Default evaluation guard for the zeta family (Euler-Maclaurin domain).
pub fn default_guard(g: &AnalyticFunction) -> Option<Rect> {
    match g {
        AnalyticFunction::Zeta
        | AnalyticFunction::Eta
        | AnalyticFunction::Xi
        | AnalyticFunction::Chi { .. } => Some(Rect::new(-140.0, 600.0, -990.0, 990.0)),
        _ => None,
    }
}

/// Iterate the map from z0 until convergence to one of `targets` (distance
/// below conv_tol plus step collapse, confirmed twice), settlement at an
/// unlisted point, escape, a pole hit, or iteration exhaustion.
pub fn orbit(
    g: &AnalyticFunction,
    kind: MapKind,
    z0: Complex64,
    targets: &[Complex64],
    opts: &OrbitOptions,
) -> Result<Orbit, DynamicsError> {
    if !z0.re.is_finite() || !z0.im.is_finite() {
        return Err(DynamicsError::Eval(SpecialError::NonFinite));
    }
    let mut points = Vec::new();
    if opts.record {
        points.push(z0);
    }
    let nearest = |z: Complex64| -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, t) in targets.iter().enumerate() {
            let d = (z - t).norm();
            if d < opts.conv_tol && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        best.map(|(i, _)| i)
    };

    // zero-step convergence: already on a target and the map does not move us
    if let Some(t) = nearest(z0) {
        if let Ok(z1) = apply_map(g, kind, z0) {
            if (z1 - z0).norm() < opts.conv_tol / 10.0 {
                return Ok(Orbit {
                    points,
                    outcome: OrbitOutcome::Converged {
                        target: t,
                        iterations: 0,
                    },
                });
            }
        }
    }

    let mut z = z0;
    let mut confirm: Option<usize> = None;
    let mut settle = 0u32;
    for iter in 1..=opts.max_iter {
        let z_next = match apply_map(g, kind, z) {
            Ok(v) => v,
            Err(DynamicsError::MapPole) => {
                return Ok(Orbit {
                    points,
                    outcome: OrbitOutcome::Pole { iterations: iter },
                })
            }
            // leaving the supported evaluation domain counts as escape
            Err(DynamicsError::Eval(SpecialError::AccuracyUnreachable { .. }))
            | Err(DynamicsError::Eval(SpecialError::OverflowDomain { .. })) => {
                return Ok(Orbit {
                    points,
                    outcome: OrbitOutcome::Escaped { iterations: iter },
                })
            }
            Err(e) => return Err(e),
        };
        if opts.record {
            points.push(z_next);
        }
        if z_next.norm() > opts.escape_radius
            || opts.eval_guard.is_some_and(|r| !r.contains(z_next))
        {
            return Ok(Orbit {
                points,
                outcome: OrbitOutcome::Escaped { iterations: iter },
            });
        }
        let step = (z_next - z).norm();
        let near = nearest(z_next);
        if let Some(ti) = near {
            if step < opts.conv_tol / 10.0 {
                if confirm == Some(ti) {
                    return Ok(Orbit {
                        points,
                        outcome: OrbitOutcome::Converged {
                            target: ti,
                            iterations: iter,
                        },
                    });
                }
                confirm = Some(ti);
            } else {
                confirm = None;
            }
            settle = 0;
        } else {
            confirm = None;
            if step < opts.conv_tol / 10.0 {
                settle += 1;
                if settle >= 2 {
                    return Ok(Orbit {
                        points,
                        outcome: OrbitOutcome::Settled {
                            point: z_next,
                            iterations: iter,
                        },
                    });
                }
            } else {
                settle = 0;
            }
        }
        z = z_next;
    }
    Ok(Orbit {
        points,
        outcome: OrbitOutcome::Exhausted,
    })
}

/// Numerical witness for the topological characterization of an attracting
/// fixed point: a radius r with max_{|z-alpha|=r} |f(z) - alpha| < r (strict,
/// with slack delta). Returns (r, delta) for the first radius that works.
pub fn attracting_disk_witness<F>(f: &F, alpha: Complex64, r0: f64) -> Option<(f64, f64)>
where
    F: Fn(Complex64) -> Result<Complex64, DynamicsError>,
{
    let mut r = r0;
    for _ in 0..30 {
        let mut max_d = 0.0f64;
        let mut ok = true;
        for j in 0..360 {
            let phi = 2.0 * std::f64::consts::PI * (j as f64) / 360.0;
            let z = alpha + r * Complex64::new(phi.cos(), phi.sin());
            match f(z) {
                Ok(v) => max_d = max_d.max((v - alpha).norm()),
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && max_d < r * (1.0 - 1e-3) {
            return Some((r, 1.0 - max_d / r));
        }
        r *= 0.6;
        if r < 1e-9 {
            break;
        }
    }
    None
}

/// Per-zero line of the RH audit.
#[derive(Debug, Clone, Serialize)]
pub struct RHEntry {
    pub n: u32,
    #[serde(serialize_with = "ser_complex")]
    pub alpha: Complex64,
    pub class: Classification,
    pub re_iota: f64,
    /// |Re iota - 1/2|
    pub dist_half: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RHSummary {
    ConsistentWithRhSimplicity,
    AttractingFixedPointFound(#[serde(serialize_with = "ser_complex")] Complex64),
    Inconclusive(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct RHVerdict {
    pub function: String,
    pub map: String,
    pub entries: Vec<RHEntry>,
    /// Fixed points audited outside the critical strip (pole of zeta, trivial
    /// zeros) plus the extra chi zero.
    pub off_strip: Vec<FixedPointReport>,
    pub summary: RHSummary,
}

/// Audit the fixed points of nu_g (or N_g) at the cached zeros, plus the
/// closed-form fixed points off the strip, and summarize per the
/// attracting/indifferent trichotomy.
pub fn rh_audit(
    records: &[ZeroRecord],
    g: &AnalyticFunction,
    kind: MapKind,
) -> Result<RHVerdict, DynamicsError> {
    match g {
        AnalyticFunction::Zeta
        | AnalyticFunction::Xi
        | AnalyticFunction::Eta
        | AnalyticFunction::Chi { .. } => {}
        other => return Err(DynamicsError::UnsupportedFunction(other.name())),
    }
    if records.is_empty() {
        return Err(DynamicsError::NotAFixedPoint(Complex64::new(0.0, 0.0)));
    }

    let mut entries = Vec::new();
    let mut in_strip_reports: Vec<(u32, FixedPointReport)> = Vec::new();
    for r in records {
        let alpha = r.point();
        let loc_err = r.gamma * 10f64.powi(-(r.precision_digits as i32));
        let opts = ReportOptions {
            location_error: loc_err,
            ..ReportOptions::default()
        };
        let rep = fixed_point_report(g, kind, alpha, &opts)?;
        entries.push(RHEntry {
            n: r.index,
            alpha,
            class: rep.class,
            re_iota: rep.iota_closed.re,
            dist_half: (rep.iota_closed.re - 0.5).abs(),
        });
        in_strip_reports.push((r.index, rep));
    }

    // off-strip / extra fixed points in closed form
    let mut off_strip = Vec::new();
    let strip = |z: Complex64| z.re > 0.0 && z.re < 1.0;
    match g {
        AnalyticFunction::Zeta => {
            off_strip.push(fixed_point_report(
                g,
                kind,
                Complex64::new(1.0, 0.0),
                &ReportOptions::default(),
            )?);
            for k in 1..=10 {
                off_strip.push(fixed_point_report(
                    g,
                    kind,
                    Complex64::new(-2.0 * k as f64, 0.0),
                    &ReportOptions {
                        order_hint: Some(1),
                        ..ReportOptions::default()
                    },
                )?);
            }
        }
        AnalyticFunction::Eta => {
            for k in 1..=10 {
                off_strip.push(fixed_point_report(
                    g,
                    kind,
                    Complex64::new(-2.0 * k as f64, 0.0),
                    &ReportOptions {
                        order_hint: Some(1),
                        ..ReportOptions::default()
                    },
                )?);
            }
        }
        AnalyticFunction::Chi { m, a } => {
            for k in 1..=10 {
                off_strip.push(fixed_point_report(
                    g,
                    kind,
                    Complex64::new(-2.0 * k as f64, 0.0),
                    &ReportOptions {
                        order_hint: Some(1),
                        ..ReportOptions::default()
                    },
                )?);
            }
            let chi_rep = fixed_point_report(
                g,
                kind,
                *a,
                &ReportOptions {
                    order_hint: Some(*m),
                    ..ReportOptions::default()
                },
            )?;
            if strip(*a) {
                in_strip_reports.push((0, chi_rep.clone()));
                entries.push(RHEntry {
                    n: 0,
                    alpha: *a,
                    class: chi_rep.class,
                    re_iota: chi_rep.iota_closed.re,
                    dist_half: (chi_rep.iota_closed.re - 0.5).abs(),
                });
            }
            off_strip.push(chi_rep);
        }
        AnalyticFunction::Xi => {}
        _ => unreachable!(),
    }

    let mut summary = RHSummary::ConsistentWithRhSimplicity;
    for (_, rep) in &in_strip_reports {
        if !strip(rep.alpha) {
            continue;
        }
        match rep.class {
            Classification::Attracting => {
                summary = RHSummary::AttractingFixedPointFound(rep.alpha);
                break;
            }
            Classification::Repelling => {
                summary = RHSummary::Inconclusive(format!(
                    "repelling fixed point inside the strip at {}; its reflection \
                     1-alpha would be attracting",
                    rep.alpha
                ));
                break;
            }
            Classification::Indifferent => {
                if rep.margin_error > 1e-4 {
                    summary = RHSummary::Inconclusive(format!(
                        "classification margin {:.1e} too coarse at {}",
                        rep.margin_error, rep.alpha
                    ));
                    break;
                }
            }
        }
    }

    Ok(RHVerdict {
        function: g.name(),
        map: kind.label(),
        entries,
        off_strip,
        summary,
    })
}

/// Convenience closure builder for quadrature and rendering.
pub fn map_fn<'a>(
    g: &'a AnalyticFunction,
    kind: MapKind,
) -> impl Fn(Complex64) -> Result<Complex64, DynamicsError> + 'a {
    move |z| apply_map(g, kind, z)
}
