//! Real gamma function and its total reciprocal.
//!
//! Lanczos approximation with g = 607/128 and 15 coefficients (Godfrey's
//! set), reflected for arguments below 1/2. Relative error stays below
//! 1e-13 on [-20, 50] away from the poles, which is comfortably inside the
//! 1e-12 budget of the callers.
//!
//! `reciprocal_gamma` is total on the reals: it returns exactly 0 at the
//! poles of gamma, which is what the fractional power rules need when an
//! order hits a nonpositive-integer gamma argument.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 4.7421875; // 607/128

const LANCZOS_COEF: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// Lanczos core, valid for x >= 0.5.
fn lanczos(x: f64) -> f64 {
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x - 1.0 + i as f64);
    }
    let t = x + LANCZOS_G - 0.5;
    (2.0 * PI).sqrt() * t.powf(x - 0.5) * (-t).exp() * acc
}

/// sin(pi x) with argument reduction, accurate for large |x|.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    // sin(pi(n + r)) = (-1)^n sin(pi r)
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

pub fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Gamma(x). Returns NaN at the poles x = 0, -1, -2, ...; use
/// [`reciprocal_gamma`] where a pole must map to an exact zero.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() || is_gamma_pole(x) {
        return f64::NAN;
    }
    if x >= 0.5 {
        lanczos(x)
    } else {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        PI / (sin_pi(x) * lanczos(1.0 - x))
    }
}

/// 1/Gamma(x), total on the reals: exactly 0 at nonpositive integers.
pub fn reciprocal_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_gamma_pole(x) {
        return 0.0;
    }
    if x >= 0.5 {
        1.0 / lanczos(x)
    } else {
        // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi, and 1 - x >= 0.5 here.
        sin_pi(x) * lanczos(1.0 - x) / PI
    }
}
