//! Quadrature engines: Gauss-Legendre rules, an adaptive interval-halving
//! integrator with an embedded Gauss/Kronrod error estimate, and fixed
//! composite panel rules used for the inversion integrals (where node
//! positions must stay fixed so per-node data can be cached).

use crate::error::{Error, Result};
use num_complex::Complex64;

// 15-point Kronrod extension of 7-point Gauss (QUADPACK G7K15 constants);
// positive abscissae, center last.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Single Gauss-Kronrod application on [a, b]: (K15 value, error estimate).
fn gk15<F>(f: &F, a: f64, b: f64) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let raw = ((kronrod - gauss) * half).norm();
    // QUADPACK-style rescale: sharpen the raw |K-G| estimate against the
    // scale of the integrand's variation on this interval.
    let resasc = resabs * half.abs();
    let err = if resasc != 0.0 && raw != 0.0 {
        let scale = (200.0 * raw / resasc).powf(1.5);
        if scale < 1.0 {
            resasc * scale
        } else {
            raw
        }
    } else {
        raw
    };
    (value, err.max(raw * 1e-2))
}

/// Integral value with an error estimate and the evaluation count.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: Complex64,
    pub err_est: f64,
    pub evals: usize,
}

/// Adaptive integration of a complex-valued function on [a, b].
///
/// Interval halving driven by the embedded Gauss/Kronrod pair; the worst
/// interval is split until the summed estimate meets
/// `max(eps_abs, eps_rel * |I|)` or `max_intervals` is exhausted (then
/// `Error::ToleranceNotMet` carries the achieved estimate).
///
/// `max_width` caps the initial interval width; the callers use it as an
/// oscillation guard so that every period of an oscillatory factor is seen
/// by at least a few rule applications.
pub fn integrate_adaptive<F>(
    f: &F,
    a: f64,
    b: f64,
    eps_rel: f64,
    eps_abs: f64,
    max_intervals: usize,
    max_width: Option<f64>,
) -> Result<Quadrature>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::Domain(format!("bad integration interval [{a}, {b}]")));
    }
    if a == b {
        return Ok(Quadrature { value: Complex64::default(), err_est: 0.0, evals: 0 });
    }
    struct Seg {
        a: f64,
        b: f64,
        value: Complex64,
        err: f64,
    }
    let mut evals = 0usize;
    let mut segs: Vec<Seg> = Vec::new();
    let n0 = match max_width {
        Some(w) if w > 0.0 => ((b - a) / w).ceil().max(1.0) as usize,
        _ => 1,
    };
    let n0 = n0.min(max_intervals.max(1));
    for i in 0..n0 {
        let sa = a + (b - a) * i as f64 / n0 as f64;
        let sb = a + (b - a) * (i + 1) as f64 / n0 as f64;
        let (v, e) = gk15(f, sa, sb);
        evals += 15;
        segs.push(Seg { a: sa, b: sb, value: v, err: e });
    }
    loop {
        let total: Complex64 = segs.iter().map(|s| s.value).sum();
        let err: f64 = segs.iter().map(|s| s.err).sum();
        if !total.is_finite() {
            return Err(Error::NonFinite { where_: format!("adaptive quadrature on [{a}, {b}]") });
        }
        let target = eps_abs.max(eps_rel * total.norm());
        if err <= target {
            return Ok(Quadrature { value: total, err_est: err, evals });
        }
        if segs.len() >= max_intervals {
            return Err(Error::ToleranceNotMet { requested: target, achieved: err });
        }
        // Split the worst interval (first index wins ties: deterministic).
        let mut worst = 0;
        for (i, s) in segs.iter().enumerate() {
            if s.err > segs[worst].err {
                worst = i;
            }
        }
        let Seg { a: sa, b: sb, .. } = segs[worst];
        let mid = 0.5 * (sa + sb);
        if mid <= sa || mid >= sb {
            // interval has collapsed to rounding; accept what we have
            let total: Complex64 = segs.iter().map(|s| s.value).sum();
            let err: f64 = segs.iter().map(|s| s.err).sum();
            return Ok(Quadrature { value: total, err_est: err, evals });
        }
        let (v1, e1) = gk15(f, sa, mid);
        let (v2, e2) = gk15(f, mid, sb);
        evals += 30;
        segs[worst] = Seg { a: sa, b: mid, value: v1, err: e1 };
        segs.push(Seg { a: mid, b: sb, value: v2, err: e2 });
    }
}

/// Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on the
/// three-term recurrence.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be >= 1");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes and weights mapped to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F>(&self, a: f64, b: f64, f: F) -> Complex64
    where
        F: Fn(f64) -> Complex64,
    {
        self.mapped(a, b).map(|(x, w)| f(x) * w).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Fixed composite rule: Gauss-Legendre of order `hi` per panel, with an
/// embedded lower-order companion for the error estimate. Node positions
/// never move, so per-node integrand data can be precomputed and reused
/// across many evaluations.
#[derive(Debug, Clone)]
pub struct PanelRule {
    nodes_hi: Vec<f64>,
    weights_hi: Vec<f64>,
    nodes_lo: Vec<f64>,
    weights_lo: Vec<f64>,
    order_hi: usize,
}

impl PanelRule {
    pub fn new(panels: &[(f64, f64)], order: usize) -> Self {
        let order = order.max(2);
        let hi = GaussLegendre::new(order);
        let lo = GaussLegendre::new((order / 2).max(1));
        let mut nodes_hi = Vec::with_capacity(panels.len() * order);
        let mut weights_hi = Vec::with_capacity(panels.len() * order);
        let mut nodes_lo = Vec::new();
        let mut weights_lo = Vec::new();
        for &(a, b) in panels {
            for (x, w) in hi.mapped(a, b) {
                nodes_hi.push(x);
                weights_hi.push(w);
            }
            for (x, w) in lo.mapped(a, b) {
                nodes_lo.push(x);
                weights_lo.push(w);
            }
        }
        Self { nodes_hi, weights_hi, nodes_lo, weights_lo, order_hi: order }
    }

    /// Equal-width panels covering [a, b], at most `max_width` wide.
    pub fn uniform(a: f64, b: f64, max_width: f64, order: usize) -> Self {
        let n = ((b - a) / max_width).ceil().max(1.0) as usize;
        let panels: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                (
                    a + (b - a) * i as f64 / n as f64,
                    a + (b - a) * (i + 1) as f64 / n as f64,
                )
            })
            .collect();
        Self::new(&panels, order)
    }

    /// Geometrically graded panels on [0, r_max]: widths halve toward the
    /// origin until `smallest`, then one closing panel [0, smallest].
    pub fn radial(r_max: f64, smallest: f64, order: usize) -> Self {
        assert!(r_max > 0.0 && smallest > 0.0 && smallest < r_max);
        let mut edges = vec![r_max];
        let mut r = r_max;
        while r / 2.0 > smallest {
            r /= 2.0;
            edges.push(r);
        }
        edges.push(0.0);
        edges.reverse();
        let panels: Vec<(f64, f64)> = edges.windows(2).map(|w| (w[0], w[1])).collect();
        Self::new(&panels, order)
    }

    pub fn order(&self) -> usize {
        self.order_hi
    }

    pub fn nodes_hi(&self) -> &[f64] {
        &self.nodes_hi
    }

    pub fn nodes_lo(&self) -> &[f64] {
        &self.nodes_lo
    }

    pub fn weights_hi(&self) -> &[f64] {
        &self.weights_hi
    }

    pub fn weights_lo(&self) -> &[f64] {
        &self.weights_lo
    }

    /// Integrate from precomputed node values (same order as `nodes_hi` /
    /// `nodes_lo`). Returns the high-order value and |hi - lo| as estimate.
    pub fn integrate_cached(&self, vals_hi: &[Complex64], vals_lo: &[Complex64]) -> (Complex64, f64) {
        debug_assert_eq!(vals_hi.len(), self.nodes_hi.len());
        debug_assert_eq!(vals_lo.len(), self.nodes_lo.len());
        let mut hi = Complex64::default();
        for (v, w) in vals_hi.iter().zip(&self.weights_hi) {
            hi += v * *w;
        }
        let mut lo = Complex64::default();
        for (v, w) in vals_lo.iter().zip(&self.weights_lo) {
            lo += v * *w;
        }
        (hi, (hi - lo).norm())
    }

    pub fn integrate<F>(&self, f: F) -> (Complex64, f64)
    where
        F: Fn(f64) -> Complex64,
    {
        let vals_hi: Vec<Complex64> = self.nodes_hi.iter().map(|&x| f(x)).collect();
        let vals_lo: Vec<Complex64> = self.nodes_lo.iter().map(|&x| f(x)).collect();
        self.integrate_cached(&vals_hi, &vals_lo)
    }
}
