use thiserror::Error;

/// Errors produced by the numerical kernels and the solver pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma pole: {x} is a nonpositive integer")]
    GammaPole { x: f64 },

    #[error("branch cut: {what} = {re}+{im}i lies on (-inf, 0]")]
    BranchCut { what: String, re: f64, im: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("declared decay bound violated at x = {x}: |f(x)| = {value:.6e} > {bound:.6e}")]
    DecayBound { x: f64, value: f64, bound: f64 },

    #[error("decay violation: Im(k) = {im_k} >= decay rate {rate} of the transformed function")]
    DecayViolation { im_k: f64, rate: f64 },

    #[error("tolerance not met: requested {requested:.3e}, achieved {achieved:.3e}")]
    ToleranceNotMet { requested: f64, achieved: f64 },

    #[error("overflow guard: Re(w)*t = {0:.3e} exceeds 700")]
    OverflowGuard(f64),

    #[error("unsupported range: {0}")]
    UnsupportedRange(String),

    #[error("contour geometry: {0}")]
    Geometry(String),

    #[error("no valid symbol-preserving rotation for alpha = {alpha}; valid window is (7/5, 7/3)")]
    NoValidNu { alpha: f64 },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("non-finite integrand value at {where_}")]
    NonFinite { where_: String },
}

pub type Result<T> = std::result::Result<T, Error>;
