//! Quadrature rules shared by the special-function, Mellin and Hankel layers.
//!
//! Three tools live here: fixed-order Gauss–Legendre panels, an adaptive
//! bisection driver on top of them, and a double-exponential (exp-sinh)
//! rule for half-line integrals with integrable endpoint singularities.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on P_n.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// The 32-point rule used for every panel in this crate.
    pub fn standard() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(32))
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `f` over [a, b] with a single application of the rule.
    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64) -> Complex64
    where
        F: FnMut(f64) -> Complex64,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(mid + half * x) * *w;
        }
        acc * half
    }

    pub fn integrate_real<F>(&self, f: F, a: f64, b: f64) -> f64
    where
        F: Fn(f64) -> f64,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(mid + half * x) * *w;
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub est_abs_err: f64,
    pub panels: usize,
}

/// Tolerances and budget for [`adaptive`].
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-15,
            max_panels: 1 << 20,
        }
    }
}

/// Adaptive Gauss–Legendre integration over consecutive breakpoints.
///
/// Each panel is accepted when the one-panel and two-half-panel estimates
/// agree to the panel's share of the tolerance; otherwise it is bisected.
pub fn adaptive<F>(f: F, breaks: &[f64], opts: AdaptiveOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let rule = GaussLegendre::standard();
    if breaks.len() < 2 {
        return Ok(QuadResult {
            value: Complex64::new(0.0, 0.0),
            est_abs_err: 0.0,
            panels: 1,
        });
    }
    let total_len = (breaks[breaks.len() - 1] - breaks[0]).abs();
    let mut stack: Vec<(f64, f64, Complex64)> = Vec::new();
    let mut coarse_total = Complex64::new(0.0, 0.0);
    for w in breaks.windows(2).rev() {
        let v = rule.integrate(&f, w[0], w[1]);
        coarse_total += v;
        stack.push((w[0], w[1], v));
    }
    let scale = coarse_total.norm();
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut panels = 0usize;
    while let Some((a, b, whole)) = stack.pop() {
        let m = 0.5 * (a + b);
        let left = rule.integrate(&f, a, m);
        let right = rule.integrate(&f, m, b);
        let refined = left + right;
        let delta = (refined - whole).norm();
        let share = if total_len > 0.0 {
            (b - a).abs() / total_len
        } else {
            1.0
        };
        let allowed = (opts.rel_tol * scale.max(refined.norm())).max(opts.abs_tol) * share.max(1e-3);
        if delta <= allowed || (b - a).abs() < 1e-13 * (1.0 + a.abs()) {
            value += refined;
            err += delta;
            panels += 2;
        } else {
            if panels + stack.len() + 2 > opts.max_panels {
                return Err(Error::BudgetExceeded(format!(
                    "adaptive quadrature exceeded {} panels",
                    opts.max_panels
                )));
            }
            stack.push((m, b, right));
            stack.push((a, m, left));
        }
    }
    Ok(QuadResult {
        value,
        est_abs_err: err,
        panels: panels.max(1),
    })
}

/// Sum of fixed Gauss–Legendre panels over the given breakpoints (no adaptivity).
pub fn panels<F>(f: F, breaks: &[f64]) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let rule = GaussLegendre::standard();
    breaks
        .windows(2)
        .map(|w| rule.integrate(&f, w[0], w[1]))
        .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
}

/// Integral of `f` over (0, ∞) by the exp-sinh double-exponential rule.
///
/// Tolerates algebraic singularities at 0 and requires `f` to decay at
/// least exponentially. The node range is trimmed on the first level to
/// where terms are non-negligible; levels are then halved until successive
/// estimates agree to √`rel_tol`, which (by the quadratic convergence of the
/// rule) leaves an error near `rel_tol`.
pub fn exp_sinh<F>(f: F, rel_tol: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let half_pi = std::f64::consts::FRAC_PI_2;
    let eval = |t: f64| -> Complex64 {
        let x = (half_pi * t.sinh()).exp();
        if x == 0.0 || !x.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        let jac = half_pi * t.cosh() * x;
        let v = f(x);
        if v.re.is_finite() && v.im.is_finite() {
            v * jac
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    // exp(π/2 sinh t) spans ~1e-300 .. ~1e300 for |t| <= 6.5
    let t_max = 6.5;
    let negligible = 1e-3 * rel_tol;
    let mut h = 0.5;
    let centre = eval(0.0);
    let mut sum = centre;
    let mut scale = centre.norm();
    // march outwards on each side until two consecutive terms are negligible
    let mut edge = [t_max, t_max];
    for (side, dir) in [1.0, -1.0].into_iter().enumerate() {
        let mut quiet = 0;
        let mut k = 1;
        loop {
            let t = k as f64 * h;
            if t > t_max {
                break;
            }
            let v = eval(dir * t);
            sum += v;
            scale = scale.max(v.norm());
            if v.norm() <= negligible * scale {
                quiet += 1;
                if quiet == 2 {
                    edge[side] = t;
                    break;
                }
            } else {
                quiet = 0;
            }
            k += 1;
        }
    }
    let mut estimate = sum * h;
    let accept = rel_tol.sqrt();
    for _ in 0..8 {
        h *= 0.5;
        let mut add = Complex64::new(0.0, 0.0);
        for (side, dir) in [1.0, -1.0].into_iter().enumerate() {
            let mut k = 1;
            loop {
                let t = k as f64 * h;
                if t > edge[side] {
                    break;
                }
                add += eval(dir * t);
                k += 2;
            }
        }
        sum += add;
        let next = sum * h;
        let diff = (next - estimate).norm();
        estimate = next;
        if diff <= accept * estimate.norm() {
            break;
        }
    }
    estimate
}
