//! Test functions on F_∞^× and their Mellin and Hankel transforms.

pub mod barnes;
pub mod direct;
pub mod mellin;
pub mod weight;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use barnes::HankelPlan;
pub use direct::hankel_transform;
pub use mellin::{mellin, mellin_log};
pub use weight::{bump, weight_eval, ComplexFactor, PlaceWeight, RealComponent, WeightSpec};

use crate::error::{Error, Result};
use crate::specfun::SpectralParameter;

/// A transform value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformResult {
    pub value: Complex64,
    pub est_abs_err: f64,
    pub panels_used: usize,
}

impl TransformResult {
    fn zero() -> Self {
        Self { value: Complex64::new(0.0, 0.0), est_abs_err: 0.0, panels_used: 0 }
    }

    fn one() -> Self {
        Self { value: Complex64::new(1.0, 0.0), est_abs_err: 0.0, panels_used: 0 }
    }

    /// Product of two independent factors, with first-order error propagation.
    fn times(&self, other: &Self) -> Self {
        Self {
            value: self.value * other.value,
            est_abs_err: self.value.norm() * other.est_abs_err
                + other.value.norm() * self.est_abs_err
                + self.est_abs_err * other.est_abs_err,
            panels_used: (self.panels_used + other.panels_used).max(1),
        }
    }
}

fn check_point(w: &WeightSpec, y: &[Complex64]) -> Result<()> {
    if y.len() != w.places.len() {
        return Err(Error::DomainError(format!(
            "point has {} coordinates, weight has {} factors",
            y.len(),
            w.places.len()
        )));
    }
    match y.iter().position(|z| z.norm() == 0.0) {
        Some(i) => Err(Error::ZeroCoordinate(i)),
        None => Ok(()),
    }
}

/// Fitted envelope |w̃_s(t·direction)| ≤ C·t^{−A}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub c: f64,
    pub a: f64,
}

impl DecayFit {
    pub fn bound(&self, t: f64) -> f64 {
        self.c * t.powf(-self.a)
    }
}

/// Least-squares fit of log|w̃_s| against log t over a geometric grid on
/// [4, 64]. Zeros of the oscillating transform are smoothed by taking the
/// running maximum from the right; C is raised until the fit dominates every
/// sample, then multiplied by 4.
pub fn decay_profile(plan: &HankelPlan, direction: &[Complex64]) -> Result<DecayFit> {
    const N: usize = 17;
    let ts: Vec<f64> = (0..N).map(|i| 4.0 * 16f64.powf(i as f64 / (N - 1) as f64)).collect();
    let mut mags = Vec::with_capacity(N);
    for &t in &ts {
        let y: Vec<Complex64> = direction.iter().map(|d| d * t).collect();
        let v = plan.eval(&y)?;
        mags.push(v.value.norm() + v.est_abs_err);
    }
    for i in (0..N - 1).rev() {
        mags[i] = mags[i].max(mags[i + 1]);
    }
    let floor = 1e-300;
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = mags.iter().map(|m| m.max(floor).ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / N as f64, ys.iter().sum::<f64>() / N as f64);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let a = -(sxy / sxx);
    let uplift = xs.iter().zip(&ys).map(|(x, y)| y + a * x).fold(f64::NEG_INFINITY, f64::max);
    Ok(DecayFit { c: 4.0 * uplift.exp(), a })
}

/// Convenience: fit along the all-ones direction.
pub fn decay_profile_for(w: &WeightSpec, s: SpectralParameter) -> Result<DecayFit> {
    let plan = HankelPlan::new(w, s)?;
    let dir = vec![Complex64::new(1.0, 0.0); w.places.len()];
    decay_profile(&plan, &dir)
}
