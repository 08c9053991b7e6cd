//! Principal complex powers and the dispersion symbol w(k).
//!
//! All fractional powers take the principal branch with the cut along the
//! negative real axis: k^alpha = r^alpha e^{i alpha theta} for
//! k = r e^{i theta}, theta in (-pi, pi). The monomial normalization
//! w(k) = -A (ik)^alpha therefore carries its cut on the positive imaginary
//! k-axis.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// k^alpha on the principal branch. Errors for k on (-inf, 0]; k = 0 maps
/// to 0 when alpha > 0 and is an error otherwise.
pub fn principal_power(k: Complex64, alpha: f64) -> Result<Complex64> {
    if k.re == 0.0 && k.im == 0.0 {
        if alpha > 0.0 {
            return Ok(Complex64::default());
        }
        return Err(Error::Domain(format!("0^{alpha} undefined for alpha <= 0")));
    }
    if k.im == 0.0 && k.re < 0.0 {
        return Err(Error::BranchCut { what: format!("base of k^{alpha}"), re: k.re, im: k.im });
    }
    let r = k.norm();
    let theta = k.arg();
    Ok(Complex64::from_polar(r.powf(alpha), theta * alpha))
}

/// One term of a fractional power series symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolTerm {
    pub coef: Complex64,
    pub exponent: f64,
}

/// Dispersion symbol of the evolution equation q_t + w(-i d/dx) q = 0.
#[derive(Debug, Clone, PartialEq)]
pub enum FractionalSymbol {
    /// w(k) = -coef (ik)^alpha with coef > 0 (the model monomial problem).
    Monomial { coef: f64, alpha: f64 },
    /// w(k) = sum_j c_j k^{alpha_j}, exponents > 0.
    Series(Vec<SymbolTerm>),
}

impl FractionalSymbol {
    pub fn monomial(coef: f64, alpha: f64) -> Result<Self> {
        if !(coef > 0.0) || !alpha.is_finite() || !(alpha > 0.0) {
            return Err(Error::Validation(format!(
                "monomial symbol needs coef > 0 and alpha > 0, got ({coef}, {alpha})"
            )));
        }
        Ok(Self::Monomial { coef, alpha })
    }

    pub fn series(terms: Vec<SymbolTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Validation("symbol needs at least one term".into()));
        }
        for t in &terms {
            if !(t.exponent > 0.0) || !t.exponent.is_finite() || !t.coef.is_finite() {
                return Err(Error::Validation(format!(
                    "bad symbol term: coef {}, exponent {}",
                    t.coef, t.exponent
                )));
            }
        }
        Ok(Self::Series(terms))
    }

    pub fn eval(&self, k: Complex64) -> Result<Complex64> {
        match self {
            Self::Monomial { coef, alpha } => {
                let ik = Complex64::new(-k.im, k.re);
                let p = principal_power(ik, *alpha).map_err(|_| Error::BranchCut {
                    what: format!("ik in -A(ik)^{alpha}"),
                    re: ik.re,
                    im: ik.im,
                })?;
                Ok(-coef * p)
            }
            Self::Series(terms) => {
                let mut acc = Complex64::default();
                for (i, t) in terms.iter().enumerate() {
                    let p = principal_power(k, t.exponent).map_err(|_| Error::BranchCut {
                        what: format!("k in term {i} (exponent {})", t.exponent),
                        re: k.re,
                        im: k.im,
                    })?;
                    acc += t.coef * p;
                }
                Ok(acc)
            }
        }
    }

    /// Symbol value with branch-cut points resolved as limits from the upper
    /// side of the cut. The real part is continuous across the cut, so sign
    /// questions (region membership, admissibility) are side-independent.
    pub fn eval_lenient(&self, k: Complex64) -> Result<Complex64> {
        match self.eval(k) {
            Ok(v) => Ok(v),
            Err(Error::BranchCut { .. }) => match self {
                Self::Monomial { coef, alpha } => {
                    // k on the positive imaginary axis: arg(ik) -> pi
                    let r = k.norm();
                    Ok(-coef * Complex64::from_polar(r.powf(*alpha), alpha * PI))
                }
                Self::Series(terms) => {
                    let r = k.norm();
                    let mut acc = Complex64::default();
                    for t in terms {
                        acc += t.coef * Complex64::from_polar(r.powf(t.exponent), t.exponent * PI);
                    }
                    Ok(acc)
                }
            },
            Err(e) => Err(e),
        }
    }

    pub fn monomial_alpha(&self) -> Option<f64> {
        match self {
            Self::Monomial { alpha, .. } => Some(*alpha),
            Self::Series(_) => None,
        }
    }
}

/// Verdict of the real-axis sign check Re(w(k)) >= 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Admissibility {
    Admissible,
    ViolatedAt { k: f64, re_w: f64 },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

/// Sample Re(w(k)) >= 0 on a symmetric log-spaced grid over
/// |k| in [1e-3, 1e3]; returns the first violation if any.
pub fn check_real_axis_admissible(w: &FractionalSymbol, samples: usize) -> Result<Admissibility> {
    let samples = samples.max(100);
    let per_sign = samples / 2;
    let (lo, hi) = (1e-3f64, 1e3f64);
    let step = (hi / lo).ln() / (per_sign - 1) as f64;
    for sign in [1.0, -1.0] {
        for i in 0..per_sign {
            let k = sign * lo * (step * i as f64).exp();
            let wk = w.eval_lenient(Complex64::new(k, 0.0))?;
            if wk.re < -1e-12 * (1.0 + wk.norm()) {
                return Ok(Admissibility::ViolatedAt { k, re_w: wk.re });
            }
        }
    }
    Ok(Admissibility::Admissible)
}

/// Monomial admissibility: |4n +- alpha| >= 1 for every integer n, i.e.
/// alpha in [1,3] u [5,7] u [9,11] u ...
pub fn monomial_admissible(alpha: f64) -> bool {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return false;
    }
    let n_max = (alpha / 4.0).ceil() as i64 + 1;
    for n in 0..=n_max {
        let base = 4.0 * n as f64;
        if (base + alpha).abs() < 1.0 || (base - alpha).abs() < 1.0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn principal_power_examples() {
        // i^2 = -1
        let v = principal_power(Complex64::new(0.0, 1.0), 2.0).unwrap();
        assert_relative_eq!(v.re, -1.0, max_relative = 1e-14);
        assert!(v.im.abs() < 1e-14);
        // 1^alpha = 1
        for &a in &[0.3, 1.7, 5.5] {
            let v = principal_power(Complex64::new(1.0, 0.0), a).unwrap();
            assert_relative_eq!(v.re, 1.0, max_relative = 1e-14);
        }
        // (2 e^{i pi/3})^{3/2} = 2^{3/2} e^{i pi/2}
        let k = Complex64::from_polar(2.0, std::f64::consts::FRAC_PI_3);
        let v = principal_power(k, 1.5).unwrap();
        assert!(v.re.abs() < 1e-14);
        assert_relative_eq!(v.im, 2.0f64.powf(1.5), max_relative = 1e-14);
    }

    #[test]
    fn principal_power_branch_errors() {
        assert!(principal_power(Complex64::new(-1.0, 0.0), 0.5).is_err());
        assert!(principal_power(Complex64::new(0.0, 0.0), -1.0).is_err());
        assert_eq!(principal_power(Complex64::new(0.0, 0.0), 2.2).unwrap(), Complex64::default());
    }

    #[test]
    fn monomial_eval_examples() {
        // alpha = 2: w(k) = -(ik)^2 = k^2 on the real axis
        let w = FractionalSymbol::monomial(1.0, 2.0).unwrap();
        let v = w.eval(Complex64::new(1.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, 1.0, max_relative = 1e-14);
        // alpha = 2.2 at k=1: -(e^{i pi/2})^{2.2} = -e^{1.1 i pi}
        let w = FractionalSymbol::monomial(1.0, 2.2).unwrap();
        let v = w.eval(Complex64::new(1.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, 0.9510565162951535, max_relative = 1e-12);
        assert_relative_eq!(v.im, 0.3090169943749474, max_relative = 1e-12);
    }

    #[test]
    fn series_eval_integer_powers() {
        let w = FractionalSymbol::series(vec![
            SymbolTerm { coef: Complex64::new(1.0, 0.0), exponent: 1.0 },
            SymbolTerm { coef: Complex64::new(1.0, 0.0), exponent: 2.0 },
        ])
        .unwrap();
        let v = w.eval(Complex64::new(0.0, 1.0)).unwrap();
        assert_relative_eq!(v.re, -1.0, max_relative = 1e-14);
        assert_relative_eq!(v.im, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn admissibility_table() {
        assert!(!monomial_admissible(0.5));
        assert!(monomial_admissible(1.0));
        assert!(monomial_admissible(1.2));
        assert!(monomial_admissible(2.0));
        assert!(monomial_admissible(3.0));
        assert!(!monomial_admissible(3.5));
        assert!(monomial_admissible(5.5));
        assert!(!monomial_admissible(4.2));
        assert!(monomial_admissible(9.0));
    }

    #[test]
    fn real_axis_check_matches_admissibility() {
        for &(alpha, expect) in &[(2.0, true), (2.2, true), (3.5, false), (0.5, false)] {
            let w = FractionalSymbol::monomial(1.0, alpha).unwrap();
            let verdict = check_real_axis_admissible(&w, 200).unwrap();
            assert_eq!(verdict.is_admissible(), expect, "alpha = {alpha}");
        }
    }

    #[test]
    fn lenient_eval_on_cut() {
        let w = FractionalSymbol::monomial(1.0, 2.2).unwrap();
        let k = Complex64::new(0.0, 2.0); // positive imaginary axis = cut of (ik)^alpha
        assert!(w.eval(k).is_err());
        let v = w.eval_lenient(k).unwrap();
        // Re w = -A r^alpha cos(alpha pi), identical from both sides
        let expect = -(2.0f64.powf(2.2)) * (2.2 * PI).cos();
        assert_relative_eq!(v.re, expect, max_relative = 1e-12);
    }
}
