//! Hankel transforms w̃_s(y) = ∫ w(x) B_s(xy) dx by direct quadrature against
//! the kernel. Slow but assumption-free; the reference for the Barnes path.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::weight::{PlaceWeight, WeightSpec};
use super::TransformResult;
use crate::error::{Error, Result};
use crate::quad::GaussLegendre;
use crate::specfun::{kernel_complex, kernel_real, SpectralParameter};

const PANEL_CAP: usize = 1 << 20;
const REL_TOL: f64 = 1e-10;

/// Doubles the resolution until two successive estimates agree.
fn refine<F>(mut at: F, scale_hint: f64) -> Result<TransformResult>
where
    F: FnMut(usize) -> Result<(Complex64, usize)>,
{
    let (mut prev, _) = at(1)?;
    let mut mult = 2;
    loop {
        let (cur, panels) = at(mult)?;
        let delta = (cur - prev).norm();
        if delta <= REL_TOL * cur.norm().max(1e-5 * scale_hint) {
            return Ok(TransformResult { value: cur, est_abs_err: delta, panels_used: panels });
        }
        if panels * 2 > PANEL_CAP {
            return Err(Error::BudgetExceeded(format!("Hankel quadrature exceeded {PANEL_CAP} panels")));
        }
        prev = cur;
        mult *= 2;
    }
}

/// Breakpoints on [lo, hi] uniform in √x, so the phase 4π√(x|y|) advances at
/// most π/2 per panel before the `mult` subdivision.
fn sqrt_breaks(lo: f64, hi: f64, y_abs: f64, mult: usize) -> Vec<f64> {
    let (a, b) = (lo.sqrt(), hi.sqrt());
    let base = ((b - a) * 8.0 * y_abs.sqrt()).ceil().max(2.0) as usize;
    let n = base * mult;
    (0..=n).map(|i| (a + (b - a) * i as f64 / n as f64).powi(2)).collect()
}

fn real_place(components: &[super::weight::RealComponent], s: SpectralParameter, y: f64) -> Result<TransformResult> {
    let rule = GaussLegendre::standard();
    let mass: f64 = components.iter().map(|c| c.amplitude.abs() * c.radius).sum();
    refine(
        |mult| {
            let mut total = Complex64::new(0.0, 0.0);
            let mut panels = 0;
            for c in components {
                let (lo, hi) = c.support();
                let sign = c.sign as f64;
                let breaks = sqrt_breaks(lo, hi, y.abs(), mult);
                panels += breaks.len() - 1;
                let mut err = None;
                for w in breaks.windows(2) {
                    total += rule.integrate(
                        |x| match kernel_real(s, sign * x * y) {
                            Ok(k) => k.value * c.profile(x),
                            Err(e) => {
                                err.get_or_insert(e);
                                Complex64::new(0.0, 0.0)
                            }
                        },
                        w[0],
                        w[1],
                    );
                }
                if let Some(e) = err {
                    return Err(e);
                }
            }
            Ok((total, panels))
        },
        mass,
    )
}

fn complex_place(f: &super::weight::ComplexFactor, s: SpectralParameter, y: Complex64) -> Result<TransformResult> {
    let rule = GaussLegendre::standard();
    let (lo, hi) = f.support();
    let n_theta0 = 32usize.max(16 + 8 * (4.0 * PI * (hi * y.norm()).sqrt()).ceil() as usize);
    let mass = f.amplitude.abs() * f.radius * hi * 4.0 * PI;
    refine(
        |mult| {
            let n_theta = n_theta0 * mult;
            let breaks = sqrt_breaks(lo, hi, y.norm(), mult);
            let mut err = None;
            let mut total = Complex64::new(0.0, 0.0);
            let dtheta = 2.0 * PI / n_theta as f64;
            for w in breaks.windows(2) {
                total += rule.integrate(
                    |rho| {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for j in 0..n_theta {
                            let x = Complex64::from_polar(rho, j as f64 * dtheta);
                            match kernel_complex(s, x * y) {
                                Ok(k) => acc += k.value * f.eval(x),
                                Err(e) => {
                                    err.get_or_insert(e);
                                }
                            }
                        }
                        acc * (dtheta * 2.0 * rho)
                    },
                    w[0],
                    w[1],
                );
            }
            if let Some(e) = err {
                return Err(e);
            }
            Ok((total, (breaks.len() - 1) * n_theta))
        },
        mass,
    )
}

/// w̃_s(y) at one place.
pub fn place_transform(pw: &PlaceWeight, s: SpectralParameter, y: Complex64) -> Result<TransformResult> {
    match pw {
        PlaceWeight::Real { components } => real_place(components, s, y.re),
        PlaceWeight::Complex(f) => complex_place(f, s, y),
    }
}

/// w̃_s(y) = ∫ w(x) B_s(xy) dx by direct quadrature, as a product over places.
pub fn hankel_transform(w: &WeightSpec, s: SpectralParameter, y: &[Complex64]) -> Result<TransformResult> {
    super::check_point(w, y)?;
    let mut acc = TransformResult::one();
    for (pw, yv) in w.places.iter().zip(y) {
        acc = acc.times(&place_transform(pw, s, *yv)?);
    }
    Ok(acc)
}
