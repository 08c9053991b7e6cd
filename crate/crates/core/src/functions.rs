//! Carriers for the scalar functions the solver consumes: closed-form
//! families with declared exponential decay (initial data, boundary data)
//! and piecewise-linear sampled functions (solution slices, test data).

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

/// Closed-form families with analytic transforms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    Zero,
    /// value (time signals only; has no decaying half-Fourier transform)
    Constant { value: f64 },
    /// e^{-rate x}
    ExpDecay { rate: f64 },
    /// x^power e^{-rate x}
    PolyExp { power: f64, rate: f64 },
    /// x e^{-rate x^2}
    GaussianX { rate: f64 },
}

/// A scalar function of one real variable with a declared exponential decay
/// bound |f(x)| <= amp * e^{-rate x} for x >= 0.
///
/// The bound is checked on a 64-point log-spaced probe grid at construction
/// (with 1% slack); transforms use it to certify truncation tails.
#[derive(Clone)]
pub struct FunctionHandle {
    eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
    decay_rate: f64,
    decay_amp: f64,
    form: Option<ClosedForm>,
    probe_end: f64,
}

impl fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("decay_rate", &self.decay_rate)
            .field("decay_amp", &self.decay_amp)
            .field("form", &self.form)
            .finish()
    }
}

impl FunctionHandle {
    pub fn zero() -> Self {
        Self {
            eval: Arc::new(|_| Complex64::default()),
            decay_rate: 1.0,
            decay_amp: f64::MIN_POSITIVE,
            form: Some(ClosedForm::Zero),
            probe_end: 1.0,
        }
    }

    /// Constant time signal on [0, horizon]. The decay metadata is the
    /// trivial bound |c| <= |c| e * e^{-x/horizon} valid on the support.
    pub fn constant(value: f64, horizon: f64) -> Result<Self> {
        if !(horizon > 0.0) || !value.is_finite() {
            return Err(Error::Validation("constant signal needs finite value, horizon > 0".into()));
        }
        Ok(Self {
            eval: Arc::new(move |_| Complex64::new(value, 0.0)),
            decay_rate: 1.0 / horizon,
            decay_amp: (value.abs() * std::f64::consts::E).max(f64::MIN_POSITIVE),
            form: Some(ClosedForm::Constant { value }),
            probe_end: horizon,
        })
    }

    pub fn exp_decay(rate: f64) -> Result<Self> {
        if !(rate > 0.0) {
            return Err(Error::Validation(format!("exp_decay rate must be > 0, got {rate}")));
        }
        Ok(Self {
            eval: Arc::new(move |x| Complex64::new((-rate * x).exp(), 0.0)),
            decay_rate: rate,
            decay_amp: 1.0,
            form: Some(ClosedForm::ExpDecay { rate }),
            probe_end: (40.0 / rate).max(1.0),
        })
    }

    pub fn poly_exp(power: f64, rate: f64) -> Result<Self> {
        if !(rate > 0.0) || !(power >= 0.0) {
            return Err(Error::Validation(format!(
                "poly_exp needs power >= 0 and rate > 0, got ({power}, {rate})"
            )));
        }
        // x^p e^{-r x} = (x^p e^{-r x / 2}) e^{-r x / 2}; the first factor
        // peaks at x = 2p/r with value (2p/(e r))^p.
        let amp = if power == 0.0 { 1.0 } else { (2.0 * power / (std::f64::consts::E * rate)).powf(power) }.max(1.0);
        Ok(Self {
            eval: Arc::new(move |x| {
                if x < 0.0 && power.fract() != 0.0 {
                    return Complex64::default();
                }
                Complex64::new(x.powf(power) * (-rate * x).exp(), 0.0)
            }),
            decay_rate: rate / 2.0,
            decay_amp: amp,
            form: Some(ClosedForm::PolyExp { power, rate }),
            probe_end: (80.0 / rate).max(1.0),
        })
    }

    pub fn gaussian_x(rate: f64) -> Result<Self> {
        if !(rate > 0.0) {
            return Err(Error::Validation(format!("gaussian_x rate must be > 0, got {rate}")));
        }
        // sup_x |x e^{-r x^2 + sqrt(r) x}| evaluated on a fine grid; 5% slack.
        let delta = rate.sqrt();
        let mut sup: f64 = 0.0;
        let hi = 6.0 / delta;
        for i in 1..=4096 {
            let x = hi * i as f64 / 4096.0;
            sup = sup.max(x * (-rate * x * x + delta * x).exp());
        }
        Ok(Self {
            eval: Arc::new(move |x| Complex64::new(x * (-rate * x * x).exp(), 0.0)),
            decay_rate: delta,
            decay_amp: 1.05 * sup,
            form: Some(ClosedForm::GaussianX { rate }),
            probe_end: (20.0 / delta).max(1.0),
        })
    }

    /// Wrap an arbitrary evaluator with a declared decay bound; the bound is
    /// verified on the probe grid.
    pub fn from_fn<F>(eval: F, decay_amp: f64, decay_rate: f64) -> Result<Self>
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self::from_fn_on(eval, decay_amp, decay_rate, (40.0 / decay_rate).max(1.0))
    }

    pub fn from_fn_on<F>(eval: F, decay_amp: f64, decay_rate: f64, probe_end: f64) -> Result<Self>
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        if !(decay_amp > 0.0) || !(decay_rate > 0.0) {
            return Err(Error::Validation("decay bound needs amp > 0 and rate > 0".into()));
        }
        let handle = Self {
            eval: Arc::new(eval),
            decay_rate,
            decay_amp,
            form: None,
            probe_end,
        };
        handle.check_decay_bound()?;
        Ok(handle)
    }

    fn check_decay_bound(&self) -> Result<()> {
        let lo: f64 = 1e-3;
        let hi = self.probe_end.max(2e-3);
        let ratio = (hi / lo).ln() / 63.0;
        for i in 0..64 {
            let x = lo * (ratio * i as f64).exp();
            let v = (self.eval)(x).norm();
            let bound = 1.01 * self.decay_amp * (-self.decay_rate * x).exp();
            if v > bound {
                return Err(Error::DecayBound { x, value: v, bound });
            }
        }
        Ok(())
    }

    pub fn value(&self, x: f64) -> Complex64 {
        (self.eval)(x)
    }

    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }

    pub fn decay_amp(&self) -> f64 {
        self.decay_amp
    }

    pub fn form(&self) -> Option<ClosedForm> {
        self.form
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.form, Some(ClosedForm::Zero))
    }
}

/// Piecewise-linear function on a strictly increasing grid. Evaluation
/// outside the grid span is an error, never extrapolation.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    grid: Vec<f64>,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() < 2 {
            return Err(Error::Validation("sampled function needs at least 2 points".into()));
        }
        if grid.len() != values.len() {
            return Err(Error::Validation(format!(
                "grid/value length mismatch: {} vs {}",
                grid.len(),
                values.len()
            )));
        }
        if !grid.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::Validation("grid must be strictly increasing".into()));
        }
        if grid.iter().any(|g| !g.is_finite()) || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation("sampled function has non-finite entries".into()));
        }
        Ok(Self { grid, values })
    }

    /// Uniform grid over [a, b] from an evaluator.
    pub fn from_fn<F>(a: f64, b: f64, n: usize, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        if n < 1 || !(b > a) {
            return Err(Error::Validation("from_fn needs n >= 1 and b > a".into()));
        }
        let grid: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
        let values: Vec<Complex64> = grid.iter().map(|&x| f(x)).collect();
        Self::new(grid, values)
    }

    pub fn start(&self) -> f64 {
        self.grid[0]
    }

    pub fn end(&self) -> f64 {
        *self.grid.last().unwrap()
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Median grid spacing, used for resolution warnings.
    pub fn typical_spacing(&self) -> f64 {
        let mut gaps: Vec<f64> = self.grid.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        gaps[gaps.len() / 2]
    }

    pub fn value_at(&self, x: f64) -> Result<Complex64> {
        if x < self.start() - 1e-12 || x > self.end() + 1e-12 {
            return Err(Error::Domain(format!(
                "evaluation at {x} outside sampled span [{}, {}]",
                self.start(),
                self.end()
            )));
        }
        Ok(self.interp_clamped(x))
    }

    fn interp_clamped(&self, x: f64) -> Complex64 {
        let x = x.clamp(self.start(), self.end());
        // rightmost cell with grid[i] <= x
        let i = match self.grid.binary_search_by(|g| g.partial_cmp(&x).unwrap()) {
            Ok(i) => return self.values[i],
            Err(i) => i.saturating_sub(1).min(self.grid.len() - 2),
        };
        let (u, v) = (self.grid[i], self.grid[i + 1]);
        let t = (x - u) / (v - u);
        self.values[i] * (1.0 - t) + self.values[i + 1] * t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn decay_bound_accepted_and_rejected() {
        let ok = FunctionHandle::from_fn(|x| Complex64::new((-2.0 * x).exp(), 0.0), 1.0, 2.0);
        assert!(ok.is_ok());
        // claims e^{-3x} decay but only has e^{-x}
        let bad = FunctionHandle::from_fn(|x| Complex64::new((-x).exp(), 0.0), 1.0, 3.0);
        assert!(matches!(bad, Err(Error::DecayBound { .. })));
    }

    #[test]
    fn builtin_families_respect_their_bounds() {
        for h in [
            FunctionHandle::exp_decay(0.5).unwrap(),
            FunctionHandle::poly_exp(2.0, 1.0).unwrap(),
            FunctionHandle::gaussian_x(1.0).unwrap(),
            FunctionHandle::constant(3.0, 2.0).unwrap(),
        ] {
            h.check_decay_bound().unwrap();
        }
    }

    #[test]
    fn sampled_interp_and_domain() {
        let s = SampledFunction::from_fn(0.0, 2.0, 4, |x| Complex64::new(x * x, 0.0)).unwrap();
        // linear interpolation between samples
        assert_relative_eq!(s.value_at(0.25).unwrap().re, 0.125, max_relative = 1e-12);
        assert_relative_eq!(s.value_at(1.5).unwrap().re, 2.25, max_relative = 1e-12);
        assert!(s.value_at(2.5).is_err());
        assert!(s.value_at(-0.1).is_err());
    }

    #[test]
    fn sampled_rejects_bad_grids() {
        assert!(SampledFunction::new(vec![0.0], vec![Complex64::default()]).is_err());
        assert!(SampledFunction::new(vec![0.0, 0.0], vec![Complex64::default(); 2]).is_err());
        assert!(SampledFunction::new(vec![1.0, 0.5], vec![Complex64::default(); 2]).is_err());
    }
}
