//! Command-line front end: config-driven solves with CSV/JSON artifacts,
//! region geometry reports, invariant check suites, and node-doubling
//! convergence studies.
//!
//! Exit codes: 0 success, 1 check-suite failure, 2 validation error,
//! 3 tolerance or convergence failure.

use clap::{Parser, Subcommand};
use utmfrac_cli::config::RunConfig;
use utmfrac_cli::output;
use num_complex::Complex64;
use serde::Serialize;
use utmfrac::solve::{solve_with, FieldGrid};
use utmfrac::suites::{run_all, run_suite, SuiteKind};
use utmfrac::verify::{gr_report, pde_residual};
use utmfrac::Error as CoreError;

#[derive(Parser)]
#[command(name = "utmfrac", version, about = "Contour-integral solver for fractional diffusion on the half-line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the problem described by a JSON config; writes a field CSV and
    /// a report JSON.
    Solve { config: String },
    /// Emit the region geometry (sectors of D+, contour rays, rotation
    /// factor) for an order alpha.
    Regions {
        alpha: f64,
        /// Write the JSON here as well as to stdout.
        #[arg(long)]
        out: Option<String>,
        /// Write a plot-ready contour polyline CSV (ray_id, re, im).
        #[arg(long)]
        polyline: Option<String>,
    },
    /// Run a named invariant suite: fraccalc | geometry | transforms | utm | all.
    Check { suite: String },
    /// Re-solve with nodes_per_ray doubled per level and report the
    /// observed convergence order.
    Converge {
        config: String,
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
}

fn main() {
    if let Ok(threads) = std::env::var("UTMFRAC_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let (code, reason) = classify(&e);
            eprintln!("{}", serde_json::json!({ "code": code, "reason": reason }));
            code
        }
    };
    std::process::exit(code);
}

fn verbose() -> bool {
    std::env::var("UTMFRAC_QUIET").map(|v| v == "0").unwrap_or(true)
}

/// Map error chains onto the exit-code contract.
fn classify(e: &anyhow::Error) -> (i32, String) {
    for cause in e.chain() {
        if let Some(core) = cause.downcast_ref::<CoreError>() {
            return match core {
                CoreError::ToleranceNotMet { .. } | CoreError::OverflowGuard(_) => (3, format!("{e:#}")),
                _ => (2, format!("{e:#}")),
            };
        }
    }
    (2, format!("{e:#}"))
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Solve { config } => cmd_solve(&config),
        Command::Regions { alpha, out, polyline } => cmd_regions(alpha, out.as_deref(), polyline.as_deref()),
        Command::Check { suite } => cmd_check(&suite),
        Command::Converge { config, levels } => cmd_converge(&config, levels),
    }
}

#[derive(Serialize)]
struct QuadReport {
    r_max: f64,
    eps_rot: f64,
    nodes_per_ray: usize,
    k_max: f64,
    eps_rel: f64,
}

#[derive(Serialize)]
struct SolveReport {
    gr_residual_max: f64,
    gr_residual_median: f64,
    pde_residual_rel: f64,
    runtime_s: f64,
    quadrature: QuadReport,
    warnings: Vec<String>,
}

fn cmd_solve(path: &str) -> anyhow::Result<i32> {
    let started = std::time::Instant::now();
    let cfg = RunConfig::load(path)?;
    let spec = cfg.problem()?;
    let opts = cfg.solve_options()?;
    let (xs, ts) = cfg.grid_points()?;
    let field = solve_with(&spec, opts)?;
    for w in field.warnings() {
        eprintln!("warning: {w}");
    }
    if verbose() {
        eprintln!("solving on {} x {} grid points", xs.len(), ts.len());
    }
    let grid = field.eval_grid(&xs, &ts)?;
    if let Some(gate) = cfg.output.max_err_est {
        if let Some(p) = grid.points.iter().find(|p| p.err_est > gate) {
            return Err(CoreError::ToleranceNotMet { requested: gate, achieved: p.err_est }.into());
        }
    }

    // residual diagnostics
    let (gr_max, gr_median) = if cfg.report.gr_samples > 0 {
        let ks = gr_samples(cfg.report.gr_samples);
        let t_probe = [spec.horizon / 4.0, spec.horizon / 2.0];
        let rep = gr_report(&field, &ks, &t_probe)?;
        (rep.max_relative, rep.median_relative)
    } else {
        (0.0, 0.0)
    };
    let pde_rel = if cfg.report.pde_residual {
        let (pxs, pts) = interior_probe(&xs, &ts, spec.horizon);
        if pxs.is_empty() || pts.is_empty() {
            0.0
        } else {
            pde_residual(&field, &pxs, &pts)?.relative
        }
    } else {
        0.0
    };

    output::write_field_csv(&cfg.output.field_path, &grid)?;
    let report = SolveReport {
        gr_residual_max: gr_max,
        gr_residual_median: gr_median,
        pde_residual_rel: pde_rel,
        runtime_s: started.elapsed().as_secs_f64(),
        quadrature: QuadReport {
            r_max: field.r_max(),
            eps_rot: spec.contour.eps_rot,
            nodes_per_ray: spec.contour.nodes_per_ray,
            k_max: spec.quad.k_max,
            eps_rel: spec.quad.eps_rel,
        },
        warnings: field.warnings().to_vec(),
    };
    output::write_atomic(&cfg.output.report_path, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    if verbose() {
        eprintln!(
            "field -> {} report -> {} ({:.1}s)",
            cfg.output.field_path, cfg.output.report_path, report.runtime_s
        );
    }
    Ok(0)
}

/// Lower-half-plane sample set for the report diagnostics.
fn gr_samples(n: usize) -> Vec<Complex64> {
    let n = n.max(2);
    (0..n)
        .map(|i| {
            let frac = i as f64 / (n - 1) as f64;
            let re = -1.2 + 2.4 * frac;
            let im = -0.1 - 1.9 * ((i * 7 % n) as f64 / n as f64);
            Complex64::new(re, im)
        })
        .collect()
}

/// Interior (x, t) probe points for the PDE residual: clear of the wall,
/// the initial time, and the horizon.
fn interior_probe(xs: &[f64], ts: &[f64], horizon: f64) -> (Vec<f64>, Vec<f64>) {
    let pxs: Vec<f64> = xs.iter().cloned().filter(|&x| x >= 0.25).take(4).collect();
    let pts: Vec<f64> = ts
        .iter()
        .cloned()
        .filter(|&t| t >= 0.02 && t <= horizon * 0.9)
        .take(2)
        .collect();
    (pxs, pts)
}

#[derive(Serialize)]
struct RegionsReport {
    alpha: f64,
    sectors: Vec<[f64; 2]>,
    gamma_rays: Vec<f64>,
    nu: Vec<f64>,
}

fn cmd_regions(alpha: f64, out: Option<&str>, polyline: Option<&str>) -> anyhow::Result<i32> {
    let sectors = utmfrac::region::dplus_sectors(alpha)?;
    let nu = utmfrac::region::nu_candidates(alpha)?;
    let gamma_rays = if alpha > 1.5 {
        let (u, l) = utmfrac::region::exact_ray_angles(alpha);
        vec![u, l]
    } else {
        vec![]
    };
    let report = RegionsReport {
        alpha,
        sectors: sectors.sectors().iter().map(|&(lo, hi)| [lo, hi]).collect(),
        gamma_rays,
        nu: nu.first().map(|m| vec![m.factor.re, m.factor.im]).unwrap_or_default(),
    };
    let text = serde_json::to_string_pretty(&report)? + "\n";
    print!("{text}");
    if let Some(path) = out {
        output::write_atomic(path, &text)?;
    }
    if let Some(path) = polyline {
        let mut csv = String::from("ray_id,re,im\n");
        if alpha > 1.5 {
            let contour = utmfrac::region::gamma_contour(alpha, 10.0, 0.0, 64)?;
            let split = contour.nodes().len() / 2;
            for (i, k) in contour.nodes().iter().enumerate() {
                let ray = usize::from(i >= split);
                csv.push_str(&format!("{ray},{},{}\n", k.re, k.im));
            }
        }
        output::write_atomic(path, &csv)?;
    }
    Ok(0)
}

fn cmd_check(suite: &str) -> anyhow::Result<i32> {
    let reports = match suite {
        "fraccalc" => vec![run_suite(SuiteKind::Fraccalc)],
        "geometry" => vec![run_suite(SuiteKind::Geometry)],
        "transforms" => vec![run_suite(SuiteKind::Transforms)],
        "utm" => vec![run_suite(SuiteKind::Utm)],
        "all" => run_all(),
        other => anyhow::bail!("unknown suite {other:?} (expected fraccalc | geometry | transforms | utm | all)"),
    };
    let mut failing = Vec::new();
    for rep in &reports {
        for item in &rep.items {
            println!(
                "{} {}::{} measured={:.6e} threshold={:.6e}",
                if item.pass { "PASS" } else { "FAIL" },
                rep.suite,
                item.name,
                item.measured,
                item.threshold
            );
            if !item.pass {
                failing.push(format!("{}::{}", rep.suite, item.name));
            }
        }
    }
    if failing.is_empty() {
        Ok(0)
    } else {
        eprintln!("{}", serde_json::json!({ "code": 1, "failing": failing }));
        Ok(1)
    }
}

#[derive(Serialize)]
struct ConvergeReport {
    nodes_per_ray: Vec<usize>,
    differences: Vec<f64>,
    observed_order: serde_json::Value,
}

fn cmd_converge(path: &str, levels: usize) -> anyhow::Result<i32> {
    if levels < 3 {
        anyhow::bail!("converge needs at least 3 levels");
    }
    let cfg = RunConfig::load(path)?;
    let spec = cfg.problem()?;
    let opts = cfg.solve_options()?;
    let (xs, ts) = cfg.grid_points()?;
    let mut grids: Vec<FieldGrid> = Vec::new();
    let mut npr_levels = Vec::new();
    for level in 0..=levels {
        let mut s = spec.clone();
        s.contour.nodes_per_ray = spec.contour.nodes_per_ray << level;
        npr_levels.push(s.contour.nodes_per_ray);
        let field = solve_with(&s, opts)?;
        grids.push(field.eval_grid(&xs, &ts)?);
        if verbose() {
            eprintln!("level {level}: nodes_per_ray = {}", s.contour.nodes_per_ray);
        }
    }
    let scale = grids
        .last()
        .unwrap()
        .points
        .iter()
        .map(|p| p.value.norm())
        .fold(0.0f64, f64::max);
    let diffs: Vec<f64> = grids
        .windows(2)
        .map(|w| {
            w[0].points
                .iter()
                .zip(&w[1].points)
                .map(|(a, b)| (a.value - b.value).norm())
                .fold(0.0f64, f64::max)
        })
        .collect();
    let floor = 1e-12 * (1.0 + scale);
    let mut order: Option<f64> = None;
    let mut converged = false;
    for w in diffs.windows(2) {
        if w[1] <= floor {
            converged = true;
            break;
        }
        order = Some((w[0] / w[1]).log2());
    }
    let observed = if converged || diffs.iter().all(|&d| d <= floor) {
        serde_json::Value::String("inf".into())
    } else {
        serde_json::json!(order.unwrap_or(f64::NAN))
    };
    let report = ConvergeReport {
        nodes_per_ray: npr_levels,
        differences: diffs.clone(),
        observed_order: observed.clone(),
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    let ok = converged
        || diffs.iter().all(|&d| d <= floor)
        || order.map(|p| p >= 1.0).unwrap_or(false);
    if ok {
        Ok(0)
    } else {
        eprintln!(
            "{}",
            serde_json::json!({ "code": 3, "reason": "observed order below 1", "order": observed })
        );
        Ok(3)
    }
}
