//! Mellin transforms w̃_s(0) = ∫ w(x) ‖x‖^s dx and the log-moment w̃'_0(0).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::weight::{bump, PlaceWeight, WeightSpec};
use super::TransformResult;
use crate::error::Result;
use crate::quad::{adaptive, AdaptiveOptions};

const MELLIN_OPTS: AdaptiveOptions = AdaptiveOptions {
    rel_tol: 1e-11,
    abs_tol: 1e-16,
    max_panels: 1 << 20,
};

/// ∫ amp·bump((ρ − c)/r)·g(ρ) dρ over the bump's support, in the bump variable.
fn bump_integral<G>(center: f64, radius: f64, g: G) -> Result<TransformResult>
where
    G: Fn(f64) -> Complex64,
{
    let breaks: Vec<f64> = (0..=8).map(|i| -1.0 + 0.25 * i as f64).collect();
    let q = adaptive(|t| g(center + radius * t) * (bump(t) * radius), &breaks, MELLIN_OPTS)?;
    Ok(TransformResult {
        value: q.value,
        est_abs_err: q.est_abs_err,
        panels_used: q.panels,
    })
}

/// ∫ w_v(x) ‖x‖_v^s (log ‖x‖_v)^p dx at one place (p = 0 or 1).
pub(crate) fn place_moment(pw: &PlaceWeight, s: Complex64, log_power: u32) -> Result<TransformResult> {
    let mut out = TransformResult::zero();
    match pw {
        PlaceWeight::Real { components } => {
            for c in components {
                let r = bump_integral(c.center, c.radius, |x| {
                    let l = x.ln();
                    (s * l).exp() * l.powi(log_power as i32)
                })?;
                out.value += r.value * c.amplitude;
                out.est_abs_err += r.est_abs_err * c.amplitude.abs();
                out.panels_used += r.panels_used;
            }
        }
        PlaceWeight::Complex(f) => {
            if f.k != 0 {
                // the angular integral of e^{ikθ} vanishes
                out.panels_used = 1;
                return Ok(out);
            }
            // module |z|², measure 2 r dr dθ
            let r = bump_integral(f.center, f.radius, |rho| {
                let l = 2.0 * rho.ln();
                (s * l).exp() * l.powi(log_power as i32) * (2.0 * rho)
            })?;
            let scale = 2.0 * PI * f.amplitude;
            out.value = r.value * scale;
            out.est_abs_err = r.est_abs_err * scale.abs();
            out.panels_used = r.panels_used;
        }
    }
    Ok(out)
}

/// w̃_s(0) = ∫_{F_∞} w(x) ‖x‖_∞^s dx.
pub fn mellin(w: &WeightSpec, s: Complex64) -> Result<TransformResult> {
    let mut acc = TransformResult::one();
    for pw in &w.places {
        acc = acc.times(&place_moment(pw, s, 0)?);
    }
    Ok(acc)
}

/// w̃'_0(0) = ∫ w(x) log ‖x‖_∞ dx, by the product rule over places.
pub fn mellin_log(w: &WeightSpec) -> Result<TransformResult> {
    let zero = Complex64::new(0.0, 0.0);
    let m0: Vec<TransformResult> = w.places.iter().map(|p| place_moment(p, zero, 0)).collect::<Result<_>>()?;
    let m1: Vec<TransformResult> = w.places.iter().map(|p| place_moment(p, zero, 1)).collect::<Result<_>>()?;
    let mut total = TransformResult::zero();
    for i in 0..w.places.len() {
        let mut term = m1[i];
        for (j, m) in m0.iter().enumerate() {
            if j != i {
                term = term.times(m);
            }
        }
        total.value += term.value;
        total.est_abs_err += term.est_abs_err;
        total.panels_used += term.panels_used;
    }
    Ok(total)
}
