//! Command-line front end: zero scanning, fixed-point classification, index
//! comparison, rotation-number tables, RH audits, and basin rendering.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use zetadyn::config::{parse_precision, Config, PrecisionMode};
use zetadyn::dynamics::{fixed_point_report, rh_audit, MapKind, ReportOptions};
use zetadyn::render::{emit_image, render, Palette, PixelOutcome, RenderSpec};
use zetadyn::rotation::table1_rows;
use zetadyn::special::AnalyticFunction;
use zetadyn::zeros::{find_zeros, load_zeros, store_zeros, zeros_up_to_n, Method, ZeroRecord};
use zetadyn::Rect;

#[derive(Parser)]
#[command(
    name = "zetadyn",
    about = "Complex dynamics of the Riemann zeta family: zeros, fixed-point indices, rotation numbers, basin renders",
    version
)]
struct Cli {
    /// Config file (key = value lines; see README for keys)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cache directory (overrides config file and ZETADYN_CACHE_DIR)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Cap worker threads
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Precision mode: binary64 or extended:<digits>
    #[arg(long, global = true)]
    precision: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a t-range for critical-line zeros, refine, print and cache them
    Zeros(ZerosArgs),
    /// Fixed-point report (multiplier, index, classification) as JSON
    Classify(ClassifyArgs),
    /// Closed-form vs contour-quadrature index comparison
    Index(IndexArgs),
    /// Rotation numbers and certified continued fractions per zero
    Cfrac(CfracArgs),
    /// Audit fixed points at cached zeros against the RH trichotomy
    RhAudit(RhAuditArgs),
    /// Render a convergence-basin raster (PPM/PNG + JSON sidecar)
    Render(RenderArgs),
}

#[derive(Args)]
struct ZerosArgs {
    /// t-range LO:HI
    #[arg(long)]
    range: String,
    /// Target significant digits (1..=14)
    #[arg(long, default_value_t = 12)]
    digits: u32,
    /// Also write the records to this CSV path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Aligned text table instead of JSON
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// zeta | xi | eta | cosh | chi
    #[arg(long)]
    function: String,
    /// nu | newton
    #[arg(long)]
    map: String,
    /// kappa for newton maps, as RE[,IM]
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    kappa: String,
    /// chi order m
    #[arg(long, default_value_t = 1)]
    chi_m: u32,
    /// chi extra zero location a, as RE[,IM]
    #[arg(long, allow_hyphen_values = true)]
    chi_a: Option<String>,
    /// Fixed point location RE[,IM]
    #[arg(long, conflicts_with = "all_cached", allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Report every zero in the cache
    #[arg(long)]
    all_cached: bool,
    /// Zero/pole order hint
    #[arg(long)]
    order_hint: Option<u32>,
    /// Also compute the quadrature index
    #[arg(long)]
    quadrature: bool,
}

#[derive(Args)]
struct IndexArgs {
    #[arg(long)]
    function: String,
    #[arg(long)]
    map: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    kappa: String,
    #[arg(long, default_value_t = 1)]
    chi_m: u32,
    #[arg(long, allow_hyphen_values = true)]
    chi_a: Option<String>,
    /// Fixed point location RE[,IM]
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Contour radius (auto-shrunk default)
    #[arg(long)]
    radius: Option<f64>,
    /// Quadrature nodes (doubled once for the stability check)
    #[arg(long, default_value_t = 256)]
    nodes: usize,
}

#[derive(Args)]
struct CfracArgs {
    /// Zero index range A:B (1-based, inclusive)
    #[arg(long)]
    rows: String,
    /// Working decimal digits (>= 17 certifies deep prefixes)
    #[arg(long)]
    digits: Option<u32>,
    /// Partial quotients to emit
    #[arg(long, default_value_t = 50)]
    max_terms: usize,
    /// Aligned text instead of CSV
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct RhAuditArgs {
    #[arg(long)]
    function: String,
    #[arg(long)]
    map: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    kappa: String,
    #[arg(long, default_value_t = 1)]
    chi_m: u32,
    #[arg(long, allow_hyphen_values = true)]
    chi_a: Option<String>,
    /// Zero index range A:B (1-based, inclusive)
    #[arg(long)]
    zeros: String,
    /// Stripe-scan grid for newton maps, WxH
    #[arg(long, default_value = "200x200")]
    stripe_size: String,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, required_unless_present = "spec_file")]
    function: Option<String>,
    #[arg(long, required_unless_present = "spec_file")]
    map: Option<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    kappa: String,
    #[arg(long, default_value_t = 1)]
    chi_m: u32,
    #[arg(long, allow_hyphen_values = true)]
    chi_a: Option<String>,
    /// Region RELO:REHI:IMLO:IMHI
    #[arg(long, required_unless_present = "spec_file", allow_hyphen_values = true)]
    region: Option<String>,
    /// Raster size WxH
    #[arg(long, required_unless_present = "spec_file")]
    size: Option<String>,
    #[arg(long)]
    max_iter: Option<u32>,
    #[arg(long)]
    conv_tol: Option<f64>,
    #[arg(long)]
    escape_radius: Option<f64>,
    /// Seed convergence targets from the zero cache and declared zeros
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    targets_from_cache: bool,
    /// Re-render an exact spec from a JSON sidecar
    #[arg(long)]
    spec_file: Option<PathBuf>,
    /// Overlay the orbit of this seed point, RE[,IM]
    #[arg(long, allow_hyphen_values = true)]
    orbit: Option<String>,
    #[arg(long, default_value_t = 5000)]
    orbit_iters: u32,
    /// Output image (.ppm or .png); sidecar written alongside
    #[arg(long, default_value = "render.ppm")]
    out: PathBuf,
}

fn main() -> ExitCode {
    // die quietly when stdout is a closed pipe (e.g. `zetadyn ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = Config::load(cli.config.as_deref())?;
    if let Some(dir) = cli.cache_dir {
        cfg.cache_dir = dir;
    }
    if let Some(t) = cli.threads {
        cfg.threads = Some(t);
    }
    if let Some(p) = &cli.precision {
        cfg.precision = parse_precision(p).ok_or_else(|| format!("bad --precision '{p}'"))?;
        cfg.validate()?;
    }
    if let Some(t) = cfg.threads {
        // ignore failure when a pool is already installed
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match cli.command {
        Command::Zeros(a) => cmd_zeros(&cfg, a),
        Command::Classify(a) => cmd_classify(&cfg, a),
        Command::Index(a) => cmd_index(&cfg, a),
        Command::Cfrac(a) => cmd_cfrac(&cfg, a),
        Command::RhAudit(a) => cmd_rh_audit(&cfg, a),
        Command::Render(a) => cmd_render(&cfg, a),
    }
}

// ---- parsing helpers -------------------------------------------------------

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let err = || format!("expected RE or RE,IM; got '{s}'");
    match parts.as_slice() {
        [re] => Ok(Complex64::new(re.trim().parse().map_err(|_| err())?, 0.0)),
        [re, im] => Ok(Complex64::new(
            re.trim().parse().map_err(|_| err())?,
            im.trim().parse().map_err(|_| err())?,
        )),
        _ => Err(err()),
    }
}

fn parse_range_f64(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got '{s}'"))?;
    Ok((
        a.parse().map_err(|_| format!("bad number '{a}'"))?,
        b.parse().map_err(|_| format!("bad number '{b}'"))?,
    ))
}

fn parse_range_u32(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected A:B, got '{s}'"))?;
    let (a, b): (u32, u32) = (
        a.parse().map_err(|_| format!("bad index '{a}'"))?,
        b.parse().map_err(|_| format!("bad index '{b}'"))?,
    );
    if a == 0 || b < a {
        return Err(format!("need 1 <= A <= B, got {a}:{b}"));
    }
    Ok((a, b))
}

fn parse_region(s: &str) -> Result<Rect, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err(format!("expected RELO:REHI:IMLO:IMHI, got '{s}'"));
    }
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
    let nums = nums.map_err(|_| format!("bad region '{s}'"))?;
    let rect = Rect::new(nums[0], nums[1], nums[2], nums[3]);
    if !rect.is_valid() {
        return Err(format!("degenerate region '{s}'"));
    }
    Ok(rect)
}

fn parse_size(s: &str) -> Result<(u32, u32), String> {
    let (w, h) = s
        .split_once('x')
        .ok_or_else(|| format!("expected WxH, got '{s}'"))?;
    Ok((
        w.parse().map_err(|_| format!("bad width '{w}'"))?,
        h.parse().map_err(|_| format!("bad height '{h}'"))?,
    ))
}

fn build_function(
    name: &str,
    chi_m: u32,
    chi_a: Option<&str>,
) -> Result<AnalyticFunction, String> {
    match name {
        "zeta" => Ok(AnalyticFunction::Zeta),
        "xi" => Ok(AnalyticFunction::Xi),
        "eta" => Ok(AnalyticFunction::Eta),
        "cosh" => Ok(AnalyticFunction::Cosh),
        "chi" => {
            let a =
                parse_complex(chi_a.ok_or_else(|| "chi requires --chi-a".to_string())?)?;
            Ok(AnalyticFunction::Chi { m: chi_m, a })
        }
        other => Err(format!(
            "unknown function '{other}' (zeta, xi, eta, cosh, chi)"
        )),
    }
}

fn build_map(map: &str, kappa: &str) -> Result<MapKind, String> {
    match map {
        "nu" => Ok(MapKind::Nu),
        "newton" => {
            let k = parse_complex(kappa)?;
            MapKind::newton(k).map_err(|e| e.to_string())
        }
        other => Err(format!("unknown map '{other}' (nu, newton)")),
    }
}

// ---- cache helpers ---------------------------------------------------------

fn merge_into_cache(cfg: &Config, new: &[ZeroRecord]) -> Result<(), Box<dyn std::error::Error>> {
    std::fs::create_dir_all(&cfg.cache_dir)?;
    let path = cfg.zero_cache_path();
    let mut by_index: BTreeMap<u32, ZeroRecord> = BTreeMap::new();
    if path.exists() {
        for r in load_zeros(&path)? {
            by_index.insert(r.index, r);
        }
    }
    for r in new {
        by_index.insert(r.index, r.clone());
    }
    let merged: Vec<ZeroRecord> = by_index.into_values().collect();
    store_zeros(&path, &merged)?;
    Ok(())
}

/// Load enough zeros to cover index `n_hi`, extending the cache if needed.
fn ensure_zeros(cfg: &Config, n_hi: u32) -> Result<Vec<ZeroRecord>, Box<dyn std::error::Error>> {
    let path = cfg.zero_cache_path();
    if path.exists() {
        let cached = load_zeros(&path)?;
        if cached.len() as u32 >= n_hi
            && cached
                .iter()
                .take(n_hi as usize)
                .enumerate()
                .all(|(i, r)| r.index == i as u32 + 1)
        {
            return Ok(cached);
        }
    }
    let recs = zeros_up_to_n(n_hi, 12)?;
    merge_into_cache(cfg, &recs)?;
    Ok(recs)
}

// ---- subcommands -----------------------------------------------------------

fn cmd_zeros(cfg: &Config, a: ZerosArgs) -> Result<(), Box<dyn std::error::Error>> {
    let (lo, hi) = parse_range_f64(&a.range)?;
    let recs = find_zeros(lo, hi, a.digits)?;
    merge_into_cache(cfg, &recs)?;
    if let Some(out) = &a.out {
        store_zeros(out, &recs)?;
    }
    if a.pretty {
        println!(
            "{:>6} {:>20} {:>7} {:>12} {}",
            "index", "gamma", "digits", "residual", "method"
        );
        for r in &recs {
            println!(
                "{:>6} {:>20} {:>7} {:>12.3e} {}",
                r.index,
                format!(
                    "{:.*}",
                    (r.precision_digits as usize).saturating_sub(2),
                    r.gamma
                ),
                r.precision_digits,
                r.residual,
                match r.method {
                    Method::SignBracketRefine => "sign-bracket+refine",
                    Method::Imported => "imported",
                }
            );
        }
    } else {
        println!("{}", serde_json::to_string_pretty(&recs)?);
    }
    Ok(())
}

fn cmd_classify(cfg: &Config, a: ClassifyArgs) -> Result<(), Box<dyn std::error::Error>> {
    let g = build_function(&a.function, a.chi_m, a.chi_a.as_deref())?;
    let kind = build_map(&a.map, &a.kappa)?;
    let opts = ReportOptions {
        order_hint: a.order_hint,
        with_quadrature: a.quadrature,
        ..ReportOptions::default()
    };
    if a.all_cached {
        let recs = load_zeros(cfg.zero_cache_path())?;
        let mut reports = Vec::new();
        for r in &recs {
            let o = ReportOptions {
                location_error: r.gamma * 10f64.powi(-(r.precision_digits as i32)),
                ..opts.clone()
            };
            reports.push(fixed_point_report(&g, kind, r.point(), &o)?);
        }
        println!("{}", serde_json::to_string_pretty(&reports)?);
    } else {
        let alpha =
            parse_complex(a.alpha.as_deref().ok_or("need --alpha or --all-cached")?)?;
        let report = fixed_point_report(&g, kind, alpha, &opts)?;
        println!("{}", serde_json::to_string_pretty(&report)?);
    }
    Ok(())
}

fn cmd_index(_cfg: &Config, a: IndexArgs) -> Result<(), Box<dyn std::error::Error>> {
    let g = build_function(&a.function, a.chi_m, a.chi_a.as_deref())?;
    let kind = build_map(&a.map, &a.kappa)?;
    let alpha = parse_complex(&a.alpha)?;
    let opts = ReportOptions {
        with_quadrature: true,
        quad_radius: a.radius,
        quad_nodes: a.nodes,
        ..ReportOptions::default()
    };
    let report = fixed_point_report(&g, kind, alpha, &opts)?;
    let quad = report.iota_quad.expect("quadrature requested");
    let diff = (report.iota_closed - quad).norm();
    let out = serde_json::json!({
        "alpha": [alpha.re, alpha.im],
        "iota_closed": [report.iota_closed.re, report.iota_closed.im],
        "iota_quad": [quad.re, quad.im],
        "abs_difference": diff,
        "nodes": a.nodes,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn cmd_cfrac(cfg: &Config, a: CfracArgs) -> Result<(), Box<dyn std::error::Error>> {
    let (n_lo, n_hi) = parse_range_u32(&a.rows)?;
    let digits = a.digits.unwrap_or(match cfg.precision {
        PrecisionMode::Extended(d) => d,
        PrecisionMode::Binary64 => 30,
    });
    let rows: Vec<u32> = (n_lo..=n_hi).collect();
    let table = table1_rows(&rows, digits, a.max_terms)?;
    if a.pretty {
        for row in &table {
            let quots = format_quotients(&row.cf.quotients, row.cf.certified_count, " ");
            println!(
                "n={:<5} gamma={}  theta={}\n  quotients: {}\n  certified: {}  max: {}  mean: {:.2}",
                row.n,
                row.gamma_str,
                row.theta_str,
                quots,
                row.cf.certified_count,
                row.cf.certified_max().unwrap_or(0),
                row.cf.certified_mean().unwrap_or(0.0),
            );
        }
    } else {
        println!("n,gamma,theta,quotients,certified_count,certified_max,certified_mean");
        for row in &table {
            println!(
                "{},{},{},{},{},{},{}",
                row.n,
                row.gamma_str,
                row.theta_str,
                format_quotients(&row.cf.quotients, row.cf.certified_count, ";"),
                row.cf.certified_count,
                row.cf.certified_max().unwrap_or(0),
                row.cf.certified_mean().unwrap_or(0.0),
            );
        }
    }
    Ok(())
}

fn format_quotients(quotients: &[u64], certified: usize, sep: &str) -> String {
    quotients
        .iter()
        .enumerate()
        .map(|(i, q)| {
            if i < certified {
                q.to_string()
            } else {
                format!("?{q}")
            }
        })
        .collect::<Vec<_>>()
        .join(sep)
}

fn cmd_rh_audit(cfg: &Config, a: RhAuditArgs) -> Result<(), Box<dyn std::error::Error>> {
    let g = build_function(&a.function, a.chi_m, a.chi_a.as_deref())?;
    let kind = build_map(&a.map, &a.kappa)?;
    let (n_lo, n_hi) = parse_range_u32(&a.zeros)?;
    let all = ensure_zeros(cfg, n_hi)?;
    let slice: Vec<ZeroRecord> = all[(n_lo - 1) as usize..n_hi as usize].to_vec();
    let verdict = rh_audit(&slice, &g, kind)?;

    let stripe = if let MapKind::Newton { .. } = kind {
        let (w, h) = parse_size(&a.stripe_size)?;
        let im_hi = slice.last().map(|r| r.gamma + 2.0).unwrap_or(50.0);
        Some(stripe_scan(&g, kind, im_hi, w, h, &all, cfg)?)
    } else {
        None
    };

    if a.pretty {
        println!("function: {}   map: {}", verdict.function, verdict.map);
        for e in &verdict.entries {
            println!(
                "  n={:<5} alpha={:.6}+{:.6}i  class={:?}  Re iota={:.9}  |Re iota - 1/2|={:.2e}",
                e.n, e.alpha.re, e.alpha.im, e.class, e.re_iota, e.dist_half
            );
        }
        println!("summary: {:?}", verdict.summary);
        if let Some(s) = &stripe {
            println!("stripe scan: {s}");
        }
    } else {
        let mut json = serde_json::to_value(&verdict)?;
        if let Some(s) = stripe {
            json["stripe_scan"] = serde_json::Value::String(s);
        }
        println!("{}", serde_json::to_string_pretty(&json)?);
    }
    Ok(())
}

/// Coarse Theorem-6.3 style scan: render the Newton map over the stripe
/// 1/2 < Re z < 1 and report whether any convergence target sits inside it.
fn stripe_scan(
    g: &AnalyticFunction,
    kind: MapKind,
    im_hi: f64,
    w: u32,
    h: u32,
    zeros: &[ZeroRecord],
    cfg: &Config,
) -> Result<String, Box<dyn std::error::Error>> {
    let region = Rect::new(0.5, 1.0, 0.0, im_hi);
    let mut spec = RenderSpec::new(g.clone(), kind, region, w, h);
    spec.known_targets = default_targets(g, region, zeros);
    let raster = render(&spec, cfg.render_budget)?;
    let mut in_stripe: Vec<Complex64> = Vec::new();
    for px in &raster.pixels {
        if let PixelOutcome::Converged(t) = px.outcome {
            let target = raster.targets[t as usize];
            if target.re > 0.5 + 1e-6 && target.re < 1.0 && !in_stripe.contains(&target) {
                in_stripe.push(target);
            }
        }
    }
    Ok(if in_stripe.is_empty() {
        "no attracting target inside the stripe 1/2 < Re z < 1 (consistent)".to_string()
    } else {
        format!("targets inside the stripe: {in_stripe:?}")
    })
}

/// Known convergence targets: cached zeros (and conjugates) near the region,
/// plus the function's declared zeros.
fn default_targets(g: &AnalyticFunction, region: Rect, zeros: &[ZeroRecord]) -> Vec<Complex64> {
    let pad = 30.0;
    let wide = Rect::new(
        region.re_lo - pad,
        region.re_hi + pad,
        region.im_lo - pad,
        region.im_hi + pad,
    );
    let mut targets: Vec<Complex64> = Vec::new();
    for r in zeros {
        for point in [r.point(), Complex64::new(0.5, -r.gamma)] {
            if wide.contains(point) {
                targets.push(point);
            }
        }
    }
    for (z, _) in g.declared_zeros_in(wide) {
        targets.push(z);
    }
    targets.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    targets.dedup_by(|a, b| (*a - *b).norm() < 1e-12);
    targets
}

fn cmd_render(cfg: &Config, a: RenderArgs) -> Result<(), Box<dyn std::error::Error>> {
    let spec = if let Some(path) = &a.spec_file {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str::<RenderSpec>(&text)?
    } else {
        let g = build_function(
            a.function.as_deref().expect("required unless spec-file"),
            a.chi_m,
            a.chi_a.as_deref(),
        )?;
        let kind = build_map(a.map.as_deref().expect("required"), &a.kappa)?;
        let region = parse_region(a.region.as_deref().expect("required"))?;
        let (w, h) = parse_size(a.size.as_deref().expect("required"))?;
        let mut spec = RenderSpec::new(g.clone(), kind, region, w, h);
        if let Some(m) = a.max_iter {
            spec.max_iter = m;
        }
        spec.conv_tol = a.conv_tol.unwrap_or(cfg.conv_tol);
        if let Some(e) = a.escape_radius {
            spec.escape_radius = e;
        }
        if a.targets_from_cache {
            let cache = cfg.zero_cache_path();
            let zeros = if cache.exists() {
                load_zeros(&cache)?
            } else {
                Vec::new()
            };
            spec.known_targets = default_targets(&g, region, &zeros);
        }
        spec
    };
    let raster = render(&spec, cfg.render_budget)?;

    let overlay = if let Some(seed) = &a.orbit {
        let z0 = parse_complex(seed)?;
        let opts = zetadyn::dynamics::OrbitOptions {
            max_iter: a.orbit_iters,
            conv_tol: spec.conv_tol,
            record: true,
            eval_guard: zetadyn::dynamics::default_guard(&spec.function),
            ..zetadyn::dynamics::OrbitOptions::default()
        };
        zetadyn::dynamics::orbit(&spec.function, spec.kind, z0, &raster.targets, &opts)?.points
    } else {
        Vec::new()
    };

    emit_image(&raster, &Palette::default(), &a.out, &overlay)?;

    let mut counts = BTreeMap::new();
    for px in &raster.pixels {
        let key = match px.outcome {
            PixelOutcome::Converged(_) => "converged",
            PixelOutcome::Escaped => "escaped",
            PixelOutcome::Pole => "pole",
            PixelOutcome::Exhausted => "exhausted",
        };
        *counts.entry(key).or_insert(0u64) += 1;
    }
    let info = serde_json::json!({
        "out": a.out,
        "sidecar": a.out.with_extension(format!(
            "{}.json",
            a.out.extension().and_then(|e| e.to_str()).unwrap_or("ppm")
        )),
        "width": raster.spec.width,
        "height": raster.spec.height,
        "targets": raster.targets.len(),
        "pixel_outcomes": counts,
        "overlay_points": overlay.len(),
    });
    println!("{}", serde_json::to_string_pretty(&info)?);
    Ok(())
}
