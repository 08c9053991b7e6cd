//! JSON run configuration and its mapping onto the solver types.

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use utmfrac::functions::FunctionHandle;
use utmfrac::problem::{BcKind, BoundaryCondition, ContourParams, ProblemSpec};
use utmfrac::solve::SolveOptions;
use utmfrac::transform::QuadratureSpec;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub alpha: f64,
    #[serde(rename = "A")]
    pub coef: f64,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub q0: FamilySpec,
    pub bc: BcSpec,
    pub grid: GridSpec,
    #[serde(default)]
    pub quadrature: QuadSpec,
    pub output: OutputSpec,
    #[serde(default)]
    pub report: ReportSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub family: String,
    pub lambda: Option<f64>,
    pub p: Option<f64>,
    pub value: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BcSpec {
    pub kind: String,
    pub h: FamilySpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// [x0, x1, n]
    pub x: (f64, f64, usize),
    /// [t0, t1, m]
    pub t: (f64, f64, usize),
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct QuadSpec {
    pub eps_rel: Option<f64>,
    pub r_max: Option<f64>,
    pub k_max: Option<f64>,
    pub eps_rot: Option<f64>,
    pub nodes_per_ray: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub field_path: String,
    pub report_path: String,
    /// Optional per-point error-estimate gate; exceeding it exits with the
    /// tolerance code.
    pub max_err_est: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportSpec {
    /// Lower-half-plane sample count for the global-relation report
    /// (0 skips it).
    pub gr_samples: usize,
    pub pde_residual: bool,
}

impl Default for ReportSpec {
    fn default() -> Self {
        Self { gr_samples: 12, pde_residual: true }
    }
}

impl RunConfig {
    pub fn load(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let cfg: RunConfig = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
        Ok(cfg)
    }

    pub fn initial_data(&self) -> Result<FunctionHandle> {
        family_handle(&self.q0, self.horizon, false)
    }

    pub fn boundary_data(&self) -> Result<FunctionHandle> {
        family_handle(&self.bc.h, self.horizon, true)
    }

    pub fn problem(&self) -> Result<ProblemSpec> {
        let kind = match self.bc.kind.as_str() {
            "frac_dirichlet" => BcKind::FracDirichlet,
            "frac_neumann" => BcKind::FracNeumann,
            other => bail!("unknown bc kind {other:?} (expected frac_dirichlet | frac_neumann)"),
        };
        let mut quad = QuadratureSpec::default();
        if let Some(v) = self.quadrature.eps_rel {
            quad.eps_rel = v;
        }
        if let Some(v) = self.quadrature.k_max {
            quad.k_max = v;
        }
        let mut contour = ContourParams { r_max: self.quadrature.r_max, ..ContourParams::default() };
        if let Some(v) = self.quadrature.eps_rot {
            contour.eps_rot = v;
        }
        if let Some(v) = self.quadrature.nodes_per_ray {
            contour.nodes_per_ray = v;
        }
        Ok(ProblemSpec {
            coef: self.coef,
            alpha: self.alpha,
            horizon: self.horizon,
            initial: self.initial_data()?,
            bc: BoundaryCondition { kind, data: self.boundary_data()? },
            quad,
            contour,
        })
    }

    pub fn solve_options(&self) -> Result<SolveOptions> {
        let (xs, ts) = self.grid_points()?;
        let x_max = xs.iter().cloned().fold(0.0f64, f64::max);
        let x_min = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let t_min = ts.iter().cloned().fold(f64::INFINITY, f64::min);
        Ok(SolveOptions {
            x_osc_cap: x_max.max(1.0),
            x_min_hint: x_min.max(1e-3),
            t_min_hint: t_min.max(1e-4),
            ..SolveOptions::default()
        })
    }

    pub fn grid_points(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let xs = linspace(self.grid.x)?;
        let ts = linspace(self.grid.t)?;
        if xs.iter().any(|&x| x < 0.0) {
            bail!("grid x values must be >= 0");
        }
        if ts.iter().any(|&t| !(t > 0.0 && t <= self.horizon)) {
            bail!("grid t values must lie in (0, T]");
        }
        Ok((xs, ts))
    }
}

fn linspace((a, b, n): (f64, f64, usize)) -> Result<Vec<f64>> {
    if n == 0 {
        bail!("grid needs at least one point");
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail too
    if !(b > a) {
        bail!("grid range must be increasing, got [{a}, {b}]");
    }
    Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())
}

fn family_handle(spec: &FamilySpec, horizon: f64, time_signal: bool) -> Result<FunctionHandle> {
    let lam = spec.lambda;
    let handle = match spec.family.as_str() {
        "zero" => FunctionHandle::zero(),
        "exp_decay" => {
            FunctionHandle::exp_decay(lam.ok_or_else(|| anyhow!("exp_decay needs lambda"))?)?
        }
        "poly_exp" if !time_signal => FunctionHandle::poly_exp(
            spec.p.ok_or_else(|| anyhow!("poly_exp needs p"))?,
            lam.ok_or_else(|| anyhow!("poly_exp needs lambda"))?,
        )?,
        "gaussian_x" if !time_signal => {
            FunctionHandle::gaussian_x(lam.ok_or_else(|| anyhow!("gaussian_x needs lambda"))?)?
        }
        "constant" if time_signal => FunctionHandle::constant(
            spec.value.ok_or_else(|| anyhow!("constant needs value"))?,
            horizon,
        )?,
        other => bail!(
            "unknown {} family {other:?}",
            if time_signal { "boundary-data" } else { "initial-data" }
        ),
    };
    Ok(handle)
}
