//! Problem definition and validation for the monomial model equation
//! q_t = A d^alpha q / dx^alpha on x > 0, t in (0, T].

use crate::error::{Error, Result};
use crate::fractional::DifferintegralConfig;
use crate::functions::{ClosedForm, FunctionHandle};
use crate::region::exact_ray_angles;
use crate::symbol::monomial_admissible;
use crate::transform::{differintegral_trace, QuadratureSpec};

/// Which boundary differintegral is prescribed at x = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcKind {
    /// Prescribes D^{alpha-2} q(0, t) (the classical Dirichlet datum at
    /// alpha = 2).
    FracDirichlet,
    /// Prescribes D^{alpha-1} q(0, t) (classical Neumann at alpha = 2).
    FracNeumann,
}

impl BcKind {
    pub fn prescribed_order(&self, alpha: f64) -> f64 {
        match self {
            BcKind::FracDirichlet => alpha - 2.0,
            BcKind::FracNeumann => alpha - 1.0,
        }
    }
}

/// Exactly one boundary datum: its kind and the signal h on [0, T].
#[derive(Debug, Clone)]
pub struct BoundaryCondition {
    pub kind: BcKind,
    pub data: FunctionHandle,
}

#[derive(Debug, Clone, Copy)]
pub struct ContourParams {
    /// Radial truncation; `None` picks the smallest radius at which the
    /// integrand decay bound reaches 1e-10 for the hinted smallest (x, t),
    /// capped at 200.
    pub r_max: Option<f64>,
    /// Rotation of the exact boundary rays into the decay region.
    pub eps_rot: f64,
    pub nodes_per_ray: usize,
}

impl Default for ContourParams {
    fn default() -> Self {
        Self { r_max: None, eps_rot: 0.05, nodes_per_ray: 320 }
    }
}

/// The monomial model problem.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    /// Diffusivity-like coefficient A > 0.
    pub coef: f64,
    /// Fractional order, open range (3/2, 7/3).
    pub alpha: f64,
    /// Final time T.
    pub horizon: f64,
    /// Initial data q(x, 0).
    pub initial: FunctionHandle,
    pub bc: BoundaryCondition,
    pub quad: QuadratureSpec,
    pub contour: ContourParams,
}

pub const ALPHA_MIN: f64 = 1.5;
pub const ALPHA_MAX: f64 = 7.0 / 3.0;

impl ProblemSpec {
    /// Validate every structural invariant; returns non-fatal compatibility
    /// warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        if !(self.coef > 0.0) || !self.coef.is_finite() {
            return Err(Error::Validation(format!("coefficient A must be > 0, got {}", self.coef)));
        }
        if !(self.alpha > ALPHA_MIN && self.alpha < ALPHA_MAX) {
            return Err(Error::Validation(format!(
                "alpha outside solve range (3/2, 7/3), got {}",
                self.alpha
            )));
        }
        if !monomial_admissible(self.alpha) {
            return Err(Error::Validation(format!(
                "alpha = {} violates real-axis admissibility",
                self.alpha
            )));
        }
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(Error::Validation(format!("horizon T must be > 0, got {}", self.horizon)));
        }
        self.quad.validate()?;
        let (upper, lower) = exact_ray_angles(self.alpha);
        let max_rot = 0.5 * (std::f64::consts::PI - upper).min(lower);
        if !(self.contour.eps_rot > 0.0 && self.contour.eps_rot < max_rot) {
            return Err(Error::Validation(format!(
                "eps_rot must lie in (0, {max_rot:.4}) for alpha = {}, got {}",
                self.alpha, self.contour.eps_rot
            )));
        }
        if self.contour.nodes_per_ray < 16 {
            return Err(Error::Validation(format!(
                "nodes_per_ray must be >= 16, got {}",
                self.contour.nodes_per_ray
            )));
        }
        if let Some(r) = self.contour.r_max {
            if !(r > 1.0) {
                return Err(Error::Validation(format!("r_max must exceed 1, got {r}")));
            }
        }
        // For alpha < 2 the dirichlet-side trace D^{alpha-2} q(0, t) is a
        // fractional integral evaluated at its base point, identically zero
        // for any bounded solution; nonzero data cannot be honored.
        if self.alpha < 2.0
            && self.bc.kind == BcKind::FracDirichlet
            && !matches!(self.bc.data.form(), Some(ClosedForm::Zero))
        {
            return Err(Error::Validation(
                "for alpha < 2 the order alpha-2 trace is identically zero; \
                 frac_dirichlet data must be the zero family"
                    .into(),
            ));
        }
        Ok(self.compatibility_warnings())
    }

    /// Mismatch between the prescribed differintegral of q0 at 0+ and h(0)
    /// is reported, not rejected (the solver will produce the generalized
    /// solution with a boundary layer).
    fn compatibility_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        let beta = self.bc.kind.prescribed_order(self.alpha);
        let cfg = DifferintegralConfig::with_nodes(512);
        if let Ok(trace) = differintegral_trace(&self.initial, beta, &cfg) {
            let h0 = self.bc.data.value(0.0);
            let gap = (trace - h0).norm();
            if gap > 1e-3 {
                warnings.push(format!(
                    "initial/boundary compatibility gap at t=0: |D^{beta:.3} q0(0+) - h(0)| = {gap:.3e}"
                ));
            }
        }
        warnings
    }
}
