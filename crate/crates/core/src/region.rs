//! Region geometry for the monomial symbol: the domain D+ where the
//! boundary integral lives, the V-shaped contour along its boundary with a
//! small rotation into the decay region, and the symbol-preserving rotation
//! maps used to eliminate unknown boundary data.

use crate::error::{Error, Result};
use crate::quadrature::PanelRule;
use crate::symbol::FractionalSymbol;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Union of open angular sectors {theta_lo < arg k < theta_hi} in the upper
/// half plane.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorRegion {
    sectors: Vec<(f64, f64)>,
}

impl SectorRegion {
    pub fn empty() -> Self {
        Self { sectors: vec![] }
    }

    pub fn new(sectors: Vec<(f64, f64)>) -> Result<Self> {
        let mut prev_hi = 0.0f64;
        for &(lo, hi) in &sectors {
            if !(lo < hi) || !(lo > 0.0) || !(hi < PI) {
                return Err(Error::Validation(format!("bad sector ({lo}, {hi})")));
            }
            if lo < prev_hi {
                return Err(Error::Validation("sectors must be sorted and disjoint".into()));
            }
            prev_hi = hi;
        }
        Ok(Self { sectors })
    }

    pub fn is_empty(&self) -> bool {
        self.sectors.is_empty()
    }

    pub fn sectors(&self) -> &[(f64, f64)] {
        &self.sectors
    }

    pub fn contains_angle(&self, theta: f64) -> bool {
        self.sectors.iter().any(|&(lo, hi)| theta > lo && theta < hi)
    }
}

/// Exact boundary-ray angles of D+ for the monomial symbol,
/// (upper, lower) = ((3 alpha - 3) pi / 2 alpha, (3 - alpha) pi / 2 alpha).
/// For alpha <= 3/2 the two coincide or cross and D+ is empty.
pub fn exact_ray_angles(alpha: f64) -> (f64, f64) {
    let upper = (3.0 * alpha - 3.0) * PI / (2.0 * alpha);
    let lower = (3.0 - alpha) * PI / (2.0 * alpha);
    (upper, lower)
}

/// D+ = {Im k > 0, Re w(k) < 0} for the monomial symbol, as a sector list.
///
/// Covers 1 < alpha < 5/2 (single sector for alpha in (3/2, 5/2), empty for
/// alpha in (1, 3/2]); other orders are an unsupported-range error.
pub fn dplus_sectors(alpha: f64) -> Result<SectorRegion> {
    if !(alpha > 1.0 && alpha < 2.5) {
        return Err(Error::UnsupportedRange(format!(
            "sector description covers alpha in (1, 5/2), got {alpha}"
        )));
    }
    if alpha <= 1.5 {
        return Ok(SectorRegion::empty());
    }
    let (upper, lower) = exact_ray_angles(alpha);
    SectorRegion::new(vec![(lower, upper)])
}

/// Pointwise membership test for D+ = {Im k > 0, Re w(k) < 0}; valid for
/// arbitrary symbols (region exploration by sampling).
pub fn dplus_indicator(w: &FractionalSymbol, k: Complex64) -> Result<bool> {
    if k.im <= 0.0 {
        return Ok(false);
    }
    let wk = w.eval_lenient(k)?;
    Ok(wk.re < 0.0)
}

/// Symbol-preserving rotation nu(k) = e^{2 pi i n / alpha} k.
#[derive(Debug, Clone, Copy)]
pub struct NuMap {
    pub rotation: i32,
    pub factor: Complex64,
    /// Orders for which this rotation maps the exact contour rays into the
    /// open lower half plane: (7/5, 7/3).
    pub window: (f64, f64),
}

impl NuMap {
    pub fn apply(&self, k: Complex64) -> Complex64 {
        self.factor * k
    }
}

/// The usable rotation maps for the monomial symbol at this order.
///
/// Only n = -1 can work; it is returned exactly when both rotated exact-ray
/// angles land in (-pi, 0). Direct angle arithmetic puts that window at
/// alpha in (7/5, 7/3). (The source derivation prints the condition as
/// "alpha > 7/3", which contradicts both its own later assumption
/// 2 < alpha < 7/3 and the angle computation; the computed window is used.)
pub fn nu_candidates(alpha: f64) -> Result<Vec<NuMap>> {
    if !(alpha > 1.0 && alpha < 2.5) {
        return Err(Error::UnsupportedRange(format!(
            "rotation maps computed for alpha in (1, 5/2), got {alpha}"
        )));
    }
    let (upper, lower) = exact_ray_angles(alpha);
    let shift = 2.0 * PI / alpha;
    let ru = upper - shift;
    let rl = lower - shift;
    let in_window = ru > -PI && ru < 0.0 && rl > -PI && rl < 0.0;
    if !in_window {
        return Ok(vec![]);
    }
    let factor = Complex64::from_polar(1.0, -shift);
    Ok(vec![NuMap { rotation: -1, factor, window: (1.4, 7.0 / 3.0) }])
}

/// Oriented V-contour in the upper half plane with fixed quadrature nodes:
/// descends the upper ray from r_max to 0, then ascends the lower ray.
/// Radial panels are geometrically graded toward the origin; each panel
/// carries a Gauss-Legendre pair (full and half order) for error estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourRay {
    Upper,
    Lower,
}

#[derive(Debug, Clone)]
pub struct Contour {
    theta_upper: f64,
    theta_lower: f64,
    r_max: f64,
    eps_rot: f64,
    nodes_hi: Vec<Complex64>,
    weights_hi: Vec<Complex64>,
    rays_hi: Vec<ContourRay>,
    nodes_lo: Vec<Complex64>,
    weights_lo: Vec<Complex64>,
    rays_lo: Vec<ContourRay>,
}

impl Contour {
    /// Build from explicit ray angles without symbol checks (test and
    /// plotting use); `r_lo > 0` truncates the tip.
    pub fn from_rays(
        theta_upper: f64,
        theta_lower: f64,
        r_lo: f64,
        r_max: f64,
        nodes_per_ray: usize,
    ) -> Result<Self> {
        if !(r_max > r_lo) || r_lo < 0.0 {
            return Err(Error::Geometry(format!("bad radial span ({r_lo}, {r_max}]")));
        }
        let rule = if r_lo == 0.0 {
            let smallest = (r_max / 256.0).min(0.5);
            let panels = radial_panel_count(r_max, smallest);
            PanelRule::radial(r_max, smallest, per_panel_order(nodes_per_ray, panels))
        } else {
            let width = (r_max - r_lo) / 8.0;
            PanelRule::uniform(r_lo, r_max, width, per_panel_order(nodes_per_ray, 8))
        };
        let mut c = Self {
            theta_upper,
            theta_lower,
            r_max,
            eps_rot: 0.0,
            nodes_hi: vec![],
            weights_hi: vec![],
            rays_hi: vec![],
            nodes_lo: vec![],
            weights_lo: vec![],
            rays_lo: vec![],
        };
        c.assemble(&rule);
        Ok(c)
    }

    fn assemble(&mut self, rule: &PanelRule) {
        let dir_u = Complex64::from_polar(1.0, self.theta_upper);
        let dir_l = Complex64::from_polar(1.0, self.theta_lower);
        // Descending upper ray: traversal opposite to increasing r.
        for (&r, &w) in rule.nodes_hi().iter().zip(rule.weights_hi()).rev() {
            self.nodes_hi.push(dir_u * r);
            self.weights_hi.push(-dir_u * w);
            self.rays_hi.push(ContourRay::Upper);
        }
        for (&r, &w) in rule.nodes_hi().iter().zip(rule.weights_hi()) {
            self.nodes_hi.push(dir_l * r);
            self.weights_hi.push(dir_l * w);
            self.rays_hi.push(ContourRay::Lower);
        }
        for (&r, &w) in rule.nodes_lo().iter().zip(rule.weights_lo()).rev() {
            self.nodes_lo.push(dir_u * r);
            self.weights_lo.push(-dir_u * w);
            self.rays_lo.push(ContourRay::Upper);
        }
        for (&r, &w) in rule.nodes_lo().iter().zip(rule.weights_lo()) {
            self.nodes_lo.push(dir_l * r);
            self.weights_lo.push(dir_l * w);
            self.rays_lo.push(ContourRay::Lower);
        }
    }

    pub fn ray_angles(&self) -> (f64, f64) {
        (self.theta_upper, self.theta_lower)
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn eps_rot(&self) -> f64 {
        self.eps_rot
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes_hi
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights_hi
    }

    pub fn nodes_lo(&self) -> &[Complex64] {
        &self.nodes_lo
    }

    pub fn weights_lo(&self) -> &[Complex64] {
        &self.weights_lo
    }

    /// Ray membership of each high-order node.
    pub fn rays(&self) -> &[ContourRay] {
        &self.rays_hi
    }

    pub fn rays_lo(&self) -> &[ContourRay] {
        &self.rays_lo
    }
}

fn radial_panel_count(r_max: f64, smallest: f64) -> usize {
    let mut count = 1;
    let mut r = r_max;
    while r / 2.0 > smallest {
        r /= 2.0;
        count += 1;
    }
    count + 1
}

fn per_panel_order(nodes_per_ray: usize, panels: usize) -> usize {
    (nodes_per_ray / panels.max(1)).clamp(2, 192)
}

/// The deformed integration contour for the monomial problem: the exact
/// boundary rays of D+, each rotated by `eps_rot` into the adjacent region
/// {Im k > 0, Re w(k) > 0} where the integrand decays exponentially.
///
/// Every node is asserted to satisfy Im k > 0 and Re w >= 0 (strictly
/// positive when eps_rot > 0) at construction.
pub fn gamma_contour(alpha: f64, r_max: f64, eps_rot: f64, nodes_per_ray: usize) -> Result<Contour> {
    if !(alpha > 1.5 && alpha < 2.5) {
        return Err(Error::UnsupportedRange(format!(
            "V-contour exists for alpha in (3/2, 5/2), got {alpha}"
        )));
    }
    if !(r_max > 0.0) {
        return Err(Error::Geometry(format!("r_max must be positive, got {r_max}")));
    }
    let (upper, lower) = exact_ray_angles(alpha);
    let max_rot = 0.5 * (PI - upper).min(lower);
    if eps_rot < 0.0 || eps_rot >= max_rot {
        return Err(Error::Geometry(format!(
            "eps_rot = {eps_rot} outside [0, {max_rot:.4}) for alpha = {alpha}"
        )));
    }
    let theta_upper = upper + eps_rot;
    let theta_lower = lower - eps_rot;
    let mut contour = Contour::from_rays(theta_upper, theta_lower, 0.0, r_max, nodes_per_ray)?;
    contour.eps_rot = eps_rot;
    let w = FractionalSymbol::monomial(1.0, alpha)?;
    for &k in contour.nodes().iter().chain(contour.nodes_lo()) {
        if !(k.im > 0.0) {
            return Err(Error::Geometry(format!("contour node {k} left the upper half plane")));
        }
        let re_w = w.eval_lenient(k)?.re;
        let floor = if eps_rot > 0.0 { 0.0 } else { -1e-10 * (1.0 + re_w.abs()) };
        if re_w <= floor {
            return Err(Error::Geometry(format!(
                "contour node {k} violates Re(w) > 0 (Re w = {re_w:.3e})"
            )));
        }
    }
    Ok(contour)
}
