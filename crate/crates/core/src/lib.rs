//! Numerical solver for linear fractional evolution equations
//! q_t = A d^alpha q/dx^alpha on the half-line, built on contour integrals:
//! a real-axis inversion integral plus a boundary integral along the
//! deformed edge of the sector where the dispersion symbol has negative
//! real part, with unknown boundary data eliminated through
//! symbol-preserving rotations of the global relation.
//!
//! The crate also carries the supporting numerical stack: Riemann-Liouville
//! and related differintegrals, the half-line Fourier transform at complex
//! arguments, region/contour geometry for the monomial dispersion symbol,
//! residual-based verification, and runnable invariant suites.

// Tabulated quadrature and special-function coefficients keep their
// published digit counts, and guards of the form !(x > 0.0) are written
// that way deliberately so NaN fails validation.
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod faddeeva;
pub mod fractional;
pub mod functions;
pub mod gamma;
pub mod problem;
pub mod quadrature;
pub mod region;
pub mod solve;
pub mod suites;
pub mod symbol;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use fractional::{
    caputo_derivative, gl_derivative, rl_derivative, rl_integral, DifferintegralConfig, Operand,
    Order,
};
pub use functions::{ClosedForm, FunctionHandle, SampledFunction};
pub use problem::{BcKind, BoundaryCondition, ContourParams, ProblemSpec};
pub use region::{dplus_sectors, gamma_contour, nu_candidates, Contour, NuMap, SectorRegion};
pub use solve::{heat_oracle, solve, solve_with, PointValue, SolutionField, SolveOptions};
pub use symbol::{monomial_admissible, principal_power, FractionalSymbol};
pub use transform::{half_fourier, time_transform, QuadratureSpec};
pub use verify::{global_relation_residual, gr_report, pde_residual, GrReport};
