//! The solver pipeline: real-axis inversion integral plus the deformed
//! boundary-contour integral, with the unknown boundary transform
//! eliminated through symbol-preserving rotations of the global relation.
//!
//! Branch handling. With the principal branch, arg(ik) wraps past pi on the
//! upper contour ray, so a single rotation e^{-2 pi i/alpha} preserves the
//! symbol only on the lower ray; the upper ray needs the conjugate rotation
//! e^{+2 pi i/alpha} (both coincide at alpha = 2). The rotated global
//! relation also carries the term e^{w(k)t} q^(rho k, t). Its contour
//! integral vanishes identically at alpha = 2 but not at fractional orders,
//! so instead of dropping it the solver retains it and resolves the
//! resulting fixed point by iteration: the map is a contraction with factor
//! about sin(|pi - 2 pi/alpha|/2), well below 1 on the whole solve range.

use crate::error::{Error, Result};
use crate::functions::SampledFunction;
use crate::problem::{BcKind, ProblemSpec};
use crate::quadrature::PanelRule;
use crate::region::{exact_ray_angles, gamma_contour, nu_candidates, Contour, ContourRay};
use crate::symbol::FractionalSymbol;
use crate::transform::{damped_time_transform, half_fourier, half_fourier_sampled};
use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// How the unknown boundary transform is eliminated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EliminationRule {
    /// Branch-matched rotations: e^{-2 pi i/alpha} on the lower ray,
    /// e^{+2 pi i/alpha} on the upper ray. Exact identities on both rays.
    PerRay,
    /// The single rotation e^{-2 pi i/alpha} on both rays. Kept for
    /// comparison runs; identical to PerRay at alpha = 2, inconsistent on
    /// the upper ray otherwise.
    SingleNu,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub elimination: EliminationRule,
    /// Keep the rotated-relation term e^{w t} q^(rho k, t) and resolve it by
    /// fixed-point iteration instead of discarding it.
    pub retain_transformed_term: bool,
    pub max_fixed_point_iters: usize,
    pub fixed_point_tol: f64,
    /// Sample count of the x-slice carried through the fixed point.
    pub slice_points: usize,
    /// Largest x the real-axis rule must resolve oscillations for.
    pub x_osc_cap: f64,
    /// Hints for the automatic radial truncation.
    pub x_min_hint: f64,
    pub t_min_hint: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            elimination: EliminationRule::PerRay,
            retain_transformed_term: true,
            max_fixed_point_iters: 40,
            fixed_point_tol: 1e-10,
            slice_points: 1280,
            x_osc_cap: 4.0,
            x_min_hint: 0.05,
            t_min_hint: 1e-3,
        }
    }
}

/// One evaluated field point.
#[derive(Debug, Clone, Copy)]
pub struct PointValue {
    pub value: Complex64,
    pub err_est: f64,
}

#[derive(Debug, Clone)]
pub struct FieldGrid {
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
    /// Row-major in t then x: index = it * xs.len() + ix.
    pub points: Vec<PointValue>,
}

/// Radial truncation from the a-priori decay bound
/// |e^{ikx - w(k)t}| <= e^{-r sin(theta) x - A sin(alpha eps) r^alpha t}:
/// smallest radius with bound <= 1e-10 at the hinted (x, t), capped at 200.
pub fn auto_r_max(alpha: f64, coef: f64, eps_rot: f64, x_min: f64, t_min: f64) -> f64 {
    let (upper, lower) = exact_ray_angles(alpha);
    let s_x = (lower - eps_rot).sin().min((upper + eps_rot).sin()).max(1e-3);
    let s_w = (alpha * eps_rot).sin().max(0.0);
    let bound = |r: f64| (-r * s_x * x_min - coef * s_w * r.powf(alpha) * t_min).exp();
    let mut r = 8.0f64;
    while r < 200.0 && bound(r) > 1e-10 {
        r *= 1.25;
    }
    r.min(200.0)
}

struct TimeCache {
    /// Damped boundary transforms G_beta(k_j, t) at contour nodes.
    g_hi: Option<Vec<Complex64>>,
    g_lo: Option<Vec<Complex64>>,
    /// Converged q^(rho_j k_j, t) at contour nodes.
    qhat_hi: Option<Vec<Complex64>>,
    qhat_lo: Option<Vec<Complex64>>,
    /// sup |q^(rho k)| |k|^2 over the cached nodes: the 1/k^2 tail scale of
    /// the retained term beyond r_max.
    qhat_tail_scale: f64,
    fixed_point_iters: usize,
    fixed_point_defect: f64,
}

/// Evaluator for the solved field, with cached transforms at the fixed
/// quadrature nodes. Evaluation is reentrant; values are deterministic for
/// a fixed problem and node count regardless of thread schedule.
pub struct SolutionField {
    spec: ProblemSpec,
    opts: SolveOptions,
    warnings: Vec<String>,
    contour: Contour,
    axis: PanelRule,
    r_max: f64,
    // axis caches
    axis_w_hi: Vec<Complex64>,
    axis_w_lo: Vec<Complex64>,
    axis_q0_hi: Vec<Complex64>,
    axis_q0_lo: Vec<Complex64>,
    // contour caches (parallel to contour nodes)
    cont_w_hi: Vec<Complex64>,
    cont_w_lo: Vec<Complex64>,
    cont_rot_hi: Vec<Complex64>,
    cont_rot_lo: Vec<Complex64>,
    cont_q0rot_hi: Vec<Complex64>,
    cont_q0rot_lo: Vec<Complex64>,
    cont_acoef_hi: Vec<Complex64>,
    cont_acoef_lo: Vec<Complex64>,
    cont_bcoef_hi: Vec<Complex64>,
    cont_bcoef_lo: Vec<Complex64>,
    boundary_zero: bool,
    slice_span: f64,
    times: Mutex<BTreeMap<u64, Arc<TimeCache>>>,
}

pub fn solve(spec: &ProblemSpec) -> Result<SolutionField> {
    solve_with(spec, SolveOptions::default())
}

pub fn solve_with(spec: &ProblemSpec, opts: SolveOptions) -> Result<SolutionField> {
    let warnings = spec.validate()?;
    let symbol = FractionalSymbol::monomial(spec.coef, spec.alpha)?;
    if nu_candidates(spec.alpha)?.is_empty() {
        return Err(Error::NoValidNu { alpha: spec.alpha });
    }
    let r_max = spec.contour.r_max.unwrap_or_else(|| {
        auto_r_max(spec.alpha, spec.coef, spec.contour.eps_rot, opts.x_min_hint, opts.t_min_hint)
    });
    let contour = gamma_contour(spec.alpha, r_max, spec.contour.eps_rot, spec.contour.nodes_per_ray)?;

    // Real-axis rule: fixed panel width sized for the oscillation cap, with
    // the per-panel order scaling alongside the contour resolution.
    let axis_order = (spec.contour.nodes_per_ray / 10).clamp(6, 96);
    let axis_width = (11.0 / opts.x_osc_cap).clamp(0.2, 2.0);
    let axis = PanelRule::uniform(-spec.quad.k_max, spec.quad.k_max, axis_width, axis_order);

    let eval_w = |k: Complex64| symbol.eval(k);
    let mut axis_w_hi = Vec::with_capacity(axis.nodes_hi().len());
    let mut axis_q0_hi = Vec::with_capacity(axis.nodes_hi().len());
    for &k in axis.nodes_hi() {
        let kc = Complex64::new(k, 0.0);
        axis_w_hi.push(eval_w(kc)?);
        axis_q0_hi.push(half_fourier(&spec.initial, kc, &spec.quad)?);
    }
    let mut axis_w_lo = Vec::with_capacity(axis.nodes_lo().len());
    let mut axis_q0_lo = Vec::with_capacity(axis.nodes_lo().len());
    for &k in axis.nodes_lo() {
        let kc = Complex64::new(k, 0.0);
        axis_w_lo.push(eval_w(kc)?);
        axis_q0_lo.push(half_fourier(&spec.initial, kc, &spec.quad)?);
    }

    let shift = TWO_PI / spec.alpha;
    let nu = Complex64::from_polar(1.0, -shift);
    let mu = Complex64::from_polar(1.0, shift);
    let rot_for = |ray: ContourRay| match (opts.elimination, ray) {
        (EliminationRule::SingleNu, _) | (EliminationRule::PerRay, ContourRay::Lower) => nu,
        (EliminationRule::PerRay, ContourRay::Upper) => mu,
    };

    type SideCaches = (Vec<Complex64>, Vec<Complex64>, Vec<Complex64>, Vec<Complex64>, Vec<Complex64>);
    let build_side = |nodes: &[Complex64], rays: &[ContourRay]| -> Result<SideCaches> {
        let mut w_v = Vec::with_capacity(nodes.len());
        let mut rot_v = Vec::with_capacity(nodes.len());
        let mut q0rot = Vec::with_capacity(nodes.len());
        let mut acoef = Vec::with_capacity(nodes.len());
        let mut bcoef = Vec::with_capacity(nodes.len());
        for (&k, &ray) in nodes.iter().zip(rays) {
            let rho = rot_for(ray);
            let w = eval_w(k)?;
            let q0r = half_fourier(&spec.initial, rho * k, &spec.quad)?;
            let (a, b) = match spec.bc.kind {
                // g_true = a q0^(rho k) + b F_beta - a e^{w t} q^(rho k, t)
                BcKind::FracDirichlet => {
                    (Complex64::new(1.0, 0.0), Complex64::new(0.0, spec.coef) * k * (1.0 - rho))
                }
                BcKind::FracNeumann => {
                    let inv = 1.0 / rho;
                    (inv, spec.coef * (1.0 - inv))
                }
            };
            w_v.push(w);
            rot_v.push(rho);
            q0rot.push(q0r);
            acoef.push(a);
            bcoef.push(b);
        }
        Ok((w_v, rot_v, q0rot, acoef, bcoef))
    };

    let (cont_w_hi, cont_rot_hi, cont_q0rot_hi, cont_acoef_hi, cont_bcoef_hi) =
        build_side(contour.nodes(), contour.rays())?;
    let (cont_w_lo, cont_rot_lo, cont_q0rot_lo, cont_acoef_lo, cont_bcoef_lo) =
        build_side(contour.nodes_lo(), contour.rays_lo())?;

    let boundary_zero = spec.bc.data.is_zero();
    let delta = spec.initial.decay_rate();
    let slice_span = (40.0 / delta).clamp(24.0, 64.0).max(48.0);

    Ok(SolutionField {
        spec: spec.clone(),
        opts,
        warnings,
        contour,
        axis,
        r_max,
        axis_w_hi,
        axis_w_lo,
        axis_q0_hi,
        axis_q0_lo,
        cont_w_hi,
        cont_w_lo,
        cont_rot_hi,
        cont_rot_lo,
        cont_q0rot_hi,
        cont_q0rot_lo,
        cont_acoef_hi,
        cont_acoef_lo,
        cont_bcoef_hi,
        cont_bcoef_lo,
        boundary_zero,
        slice_span,
        times: Mutex::new(BTreeMap::new()),
    })
}

impl SolutionField {
    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn contour(&self) -> &Contour {
        &self.contour
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Whether the rotated-relation term is active for this problem.
    fn retain_active(&self) -> bool {
        self.opts.retain_transformed_term && self.spec.alpha != 2.0
    }

    fn time_key(t: f64) -> u64 {
        t.to_bits()
    }

    fn time_cache(&self, t: f64) -> Result<Arc<TimeCache>> {
        if let Some(c) = self.times.lock().unwrap().get(&Self::time_key(t)) {
            return Ok(c.clone());
        }
        let cache = Arc::new(self.build_time_cache(t)?);
        self.times.lock().unwrap().insert(Self::time_key(t), cache.clone());
        Ok(cache)
    }

    fn build_time_cache(&self, t: f64) -> Result<TimeCache> {
        let beta_h = |w: &Complex64| damped_time_transform(&self.spec.bc.data, *w, t, &self.spec.quad);
        let (g_hi, g_lo) = if self.boundary_zero {
            (None, None)
        } else {
            let hi: Result<Vec<_>> = self.cont_w_hi.iter().map(beta_h).collect();
            let lo: Result<Vec<_>> = self.cont_w_lo.iter().map(beta_h).collect();
            (Some(hi?), Some(lo?))
        };
        if !self.retain_active() {
            return Ok(TimeCache {
                g_hi,
                g_lo,
                qhat_hi: None,
                qhat_lo: None,
                qhat_tail_scale: 0.0,
                fixed_point_iters: 0,
                fixed_point_defect: 0.0,
            });
        }

        // Fixed point for the retained rotated-relation term: iterate the
        // x-slice q(., t) |-> base + (1/2pi) sum_j w_j a_j e^{i k_j x} q^(rho_j k_j).
        let n = self.opts.slice_points.max(64);
        let xs: Vec<f64> = (0..=n).map(|i| self.slice_span * i as f64 / n as f64).collect();
        let base: Vec<Complex64> = xs
            .iter()
            .map(|&x| self.eval_parts(x, t, g_hi.as_deref(), g_lo.as_deref(), None, None).0 / TWO_PI)
            .collect();
        // phase matrix e^{i k_j x_m} for the update sum
        let nodes = self.contour.nodes();
        let weights = self.contour.weights();
        let mut phase = vec![Complex64::default(); nodes.len() * xs.len()];
        for (j, &k) in nodes.iter().enumerate() {
            for (m, &x) in xs.iter().enumerate() {
                phase[j * xs.len() + m] = (Complex64::new(0.0, 1.0) * k * x).exp();
            }
        }
        let mut slice = base.clone();
        let mut qhat_hi = vec![Complex64::default(); nodes.len()];
        let mut iters = 0;
        let mut defect = f64::INFINITY;
        for it in 0..self.opts.max_fixed_point_iters {
            iters = it + 1;
            let sampled = SampledFunction::new(xs.clone(), slice.clone())?;
            for (j, q) in qhat_hi.iter_mut().enumerate() {
                *q = half_fourier_sampled(&sampled, self.cont_rot_hi[j] * nodes[j]);
            }
            let mut next = base.clone();
            for j in 0..nodes.len() {
                let coef = weights[j] * self.cont_acoef_hi[j] * qhat_hi[j] / TWO_PI;
                let row = &phase[j * xs.len()..(j + 1) * xs.len()];
                for (v, ph) in next.iter_mut().zip(row) {
                    *v += coef * ph;
                }
            }
            defect = slice
                .iter()
                .zip(&next)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            let scale = next.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
            slice = next;
            if defect <= self.opts.fixed_point_tol * (1.0 + scale) {
                break;
            }
        }
        let sampled = SampledFunction::new(xs, slice)?;
        for (j, q) in qhat_hi.iter_mut().enumerate() {
            *q = half_fourier_sampled(&sampled, self.cont_rot_hi[j] * nodes[j]);
        }
        let qhat_lo: Vec<Complex64> = self
            .contour
            .nodes_lo()
            .iter()
            .enumerate()
            .map(|(j, &k)| half_fourier_sampled(&sampled, self.cont_rot_lo[j] * k))
            .collect();
        let qhat_tail_scale = qhat_hi
            .iter()
            .zip(nodes)
            .map(|(q, k)| q.norm() * k.norm_sqr())
            .fold(0.0f64, f64::max);
        Ok(TimeCache {
            g_hi,
            g_lo,
            qhat_hi: Some(qhat_hi),
            qhat_lo: Some(qhat_lo),
            qhat_tail_scale,
            fixed_point_iters: iters,
            fixed_point_defect: defect,
        })
    }

    /// Raw high/low sums of both integrals (axis, contour), without the
    /// 1/2pi normalization.
    #[allow(clippy::too_many_arguments)]
    fn eval_parts(
        &self,
        x: f64,
        t: f64,
        g_hi: Option<&[Complex64]>,
        g_lo: Option<&[Complex64]>,
        qhat_hi: Option<&[Complex64]>,
        qhat_lo: Option<&[Complex64]>,
    ) -> (Complex64, Complex64, Complex64, Complex64) {
        let i = Complex64::new(0.0, 1.0);
        let axis_sum = |nodes: &[f64], weights: &[f64], wv: &[Complex64], q0: &[Complex64]| {
            let mut acc = Complex64::default();
            for idx in 0..nodes.len() {
                let k = nodes[idx];
                let e = (i * k * x - wv[idx] * t).exp();
                acc += weights[idx] * e * q0[idx];
            }
            acc
        };
        let axis_hi = axis_sum(self.axis.nodes_hi(), self.axis.weights_hi(), &self.axis_w_hi, &self.axis_q0_hi);
        let axis_lo = axis_sum(self.axis.nodes_lo(), self.axis.weights_lo(), &self.axis_w_lo, &self.axis_q0_lo);

        let cont_sum = |nodes: &[Complex64],
                        weights: &[Complex64],
                        wv: &[Complex64],
                        q0rot: &[Complex64],
                        acoef: &[Complex64],
                        bcoef: &[Complex64],
                        g: Option<&[Complex64]>,
                        qh: Option<&[Complex64]>| {
            let mut acc = Complex64::default();
            for idx in 0..nodes.len() {
                let damp = (-wv[idx] * t).exp();
                let mut integrand = acoef[idx] * damp * q0rot[idx];
                if let Some(g) = g {
                    integrand += bcoef[idx] * g[idx];
                }
                if let Some(qh) = qh {
                    integrand -= acoef[idx] * qh[idx];
                }
                acc += weights[idx] * (i * nodes[idx] * x).exp() * integrand;
            }
            acc
        };
        let cont_hi = cont_sum(
            self.contour.nodes(),
            self.contour.weights(),
            &self.cont_w_hi,
            &self.cont_q0rot_hi,
            &self.cont_acoef_hi,
            &self.cont_bcoef_hi,
            g_hi,
            qhat_hi,
        );
        let cont_lo = cont_sum(
            self.contour.nodes_lo(),
            self.contour.weights_lo(),
            &self.cont_w_lo,
            &self.cont_q0rot_lo,
            &self.cont_acoef_lo,
            &self.cont_bcoef_lo,
            g_lo,
            qhat_lo,
        );
        (axis_hi - cont_hi, axis_lo - cont_lo, axis_hi, cont_hi)
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<PointValue> {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!("evaluation needs x >= 0, got {x}")));
        }
        if !(t > 0.0 && t <= self.spec.horizon) {
            return Err(Error::Domain(format!(
                "evaluation needs 0 < t <= {}, got {t}",
                self.spec.horizon
            )));
        }
        let cache = self.time_cache(t)?;
        let (hi, lo, _, _) = self.eval_parts(
            x,
            t,
            cache.g_hi.as_deref(),
            cache.g_lo.as_deref(),
            cache.qhat_hi.as_deref(),
            cache.qhat_lo.as_deref(),
        );
        let value = hi / TWO_PI;
        let embedded = (hi - lo).norm() / TWO_PI;
        let mut tail = self.tail_bound(x, t);
        if cache.qhat_tail_scale > 0.0 {
            // The retained term decays only like 1/k^2 along the rays, so
            // its truncation at r_max dominates the budget for fractional
            // orders: direct tail at this x plus the bias it leaves in the
            // cached transforms (the flat 0.02 share, calibrated on
            // rotation-robustness runs).
            let (upper, lower) = exact_ray_angles(self.spec.alpha);
            let eps = self.spec.contour.eps_rot;
            let s_x = (lower - eps).sin().min((upper + eps).sin()).max(1e-3);
            tail += cache.qhat_tail_scale / (std::f64::consts::PI * self.r_max)
                * (0.02 + 1.0 / (1.0 + x * s_x * self.r_max));
        }
        let err_est = embedded + tail + 1e-9 * (1.0 + value.norm());
        if !value.is_finite() {
            return Err(Error::NonFinite { where_: format!("field evaluation at ({x}, {t})") });
        }
        Ok(PointValue { value, err_est })
    }

    /// Crude certified truncation tails of both integrals.
    fn tail_bound(&self, x: f64, t: f64) -> f64 {
        let alpha = self.spec.alpha;
        let a = self.spec.coef;
        let k_max = self.spec.quad.k_max;
        // axis: |q0^| <= amp/delta beyond the cutoff, damped by Re w t
        let q0_bound = (self.spec.initial.decay_amp() / self.spec.initial.decay_rate())
            / (1.0 + k_max * k_max);
        let cos_margin = (alpha * std::f64::consts::FRAC_PI_2).cos().abs();
        let axis_damp = (-a * cos_margin * k_max.powf(alpha) * t).exp();
        let axis_scale = 1.0 / (a * cos_margin * alpha * k_max.powf(alpha - 1.0) * t + x + 0.1);
        let axis_tail = 2.0 * q0_bound * axis_damp * axis_scale.min(2.0 * k_max);
        // contour: e^{ikx} and e^{-Re w t} decay at r_max
        let (upper, lower) = exact_ray_angles(alpha);
        let eps = self.spec.contour.eps_rot;
        let s_x = (lower - eps).sin().min((upper + eps).sin()).max(1e-3);
        let s_w = (alpha * eps).sin().max(0.0);
        let r = self.r_max;
        let cont_damp = (-r * s_x * x - a * s_w * r.powf(alpha) * t).exp();
        let cont_scale = 1.0 / (s_x * x + a * s_w * alpha * r.powf(alpha - 1.0) * t + 1e-3);
        let cont_bound = (self.spec.initial.decay_amp() / self.spec.initial.decay_rate())
            / (1.0 + r * r);
        let cont_tail = 2.0 * cont_bound * cont_damp * cont_scale.min(r);
        (axis_tail + cont_tail) / TWO_PI
    }

    /// Build the per-time caches (boundary transforms, retained-term fixed
    /// points) for a set of times, in parallel. Purely a warm-up: values are
    /// identical whether or not this runs first.
    pub fn prewarm(&self, ts: &[f64]) -> Result<()> {
        ts.par_iter().try_for_each(|&t| self.time_cache(t).map(|_| ()))
    }

    /// Evaluate on a grid, row-major in t then x, parallel over points.
    pub fn eval_grid(&self, xs: &[f64], ts: &[f64]) -> Result<FieldGrid> {
        self.prewarm(ts)?;
        let points: Result<Vec<PointValue>> = ts
            .par_iter()
            .flat_map(|&t| xs.par_iter().map(move |&x| (x, t)))
            .map(|(x, t)| self.eval(x, t))
            .collect();
        Ok(FieldGrid { xs: xs.to_vec(), ts: ts.to_vec(), points: points? })
    }

    /// Diagnostics of the most recent fixed-point solve at time t.
    pub fn fixed_point_report(&self, t: f64) -> Option<(usize, f64)> {
        self.times
            .lock()
            .unwrap()
            .get(&Self::time_key(t))
            .map(|c| (c.fixed_point_iters, c.fixed_point_defect))
    }

    /// Dense solution slice at fixed t (used by the residual verifiers).
    pub fn slice_at(&self, t: f64, x_max: f64, n: usize) -> Result<SampledFunction> {
        let xs: Vec<f64> = (0..=n).map(|i| x_max * i as f64 / n as f64).collect();
        let cache = self.time_cache(t)?;
        let vals: Vec<Complex64> = xs
            .iter()
            .map(|&x| {
                self.eval_parts(
                    x,
                    t,
                    cache.g_hi.as_deref(),
                    cache.g_lo.as_deref(),
                    cache.qhat_hi.as_deref(),
                    cache.qhat_lo.as_deref(),
                )
                .0 / TWO_PI
            })
            .collect();
        SampledFunction::new(xs, vals)
    }
}

/// Closed-form check oracle for the classical case: alpha = 2, A > 0,
/// q0(x) = x e^{-lam x^2}, homogeneous Dirichlet data. Odd extension under
/// the heat kernel gives q(x,t) = x (1+4 A lam t)^{-3/2} e^{-lam x^2/(1+4 A lam t)}.
pub fn heat_oracle(lam: f64, coef: f64, x: f64, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain(format!("heat oracle needs t >= 0, got {t}")));
    }
    if !(lam > 0.0 && coef > 0.0) {
        return Err(Error::Domain("heat oracle needs lam > 0 and A > 0".into()));
    }
    let s = 1.0 + 4.0 * coef * lam * t;
    Ok(x * s.powf(-1.5) * (-lam * x * x / s).exp())
}
