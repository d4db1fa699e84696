//! Brute-force check of the divisor-average bound
//!
//! ```text
//! Σ_{γ∈𝔞⁻¹∖0, x∈F^S(V)} |τ_s(γ𝔞)| / (|Nγ|^c ‖γ‖_S^{d−c+σ})
//!   ≪ N𝔞^{1+σ} N(V)^{1−c+σ} / ‖V‖_S^{d−c+σ}
//! ```
//!
//! with F^S(V) = {‖x‖_v > V_v^{N_v} for v ∈ S, ‖x‖_v ≤ V_v^{N_v} otherwise}.
//! The table lists the ratio of the left side to the right-hand shape.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::TauContext;
use crate::error::{Error, Result};
use crate::numberfield::lattice::lattice_points_embedded;
use crate::numberfield::primes::norm_f64;
use crate::numberfield::{FieldDescriptor, FractionalIdeal, PlaceRegion};
use crate::specfun::Place;

/// Places in S are summed out to this multiple of V_v.
const OUTER_FACTOR: f64 = 64.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageRow {
    pub v: Vec<f64>,
    pub terms: usize,
    pub sum: f64,
    pub bound_shape: f64,
    pub ratio: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn divisor_average_check(
    field: FieldDescriptor,
    a_ideal: &FractionalIdeal,
    s: Complex64,
    v_grid: &[Vec<f64>],
    s_places: &[usize],
    c: f64,
    d: f64,
    cap: usize,
) -> Result<Vec<AverageRow>> {
    let sigma = s.re;
    if !(sigma >= 0.0 && c - sigma >= 0.0 && c - sigma < 1.0 && d > 1.0) {
        return Err(Error::DomainError(format!("need σ ≥ 0 and 0 ≤ c − σ < 1 < d (σ = {sigma}, c = {c}, d = {d})")));
    }
    let places = field.places();
    let deg: Vec<i32> = places.iter().map(|p| if *p == Place::Real { 1 } else { 2 }).collect();
    let lattice = a_ideal.inverse()?;
    let ctx = TauContext::new(a_ideal, s)?;
    let na = norm_f64(a_ideal);
    let mut rows = Vec::new();
    for v in v_grid {
        if v.len() != places.len() || v.iter().any(|&x| !(x >= 1.0)) {
            return Err(Error::DomainError(format!("V = {v:?} needs one component ≥ 1 per place")));
        }
        let in_s = |i: usize| s_places.contains(&i);
        let region: Vec<PlaceRegion> = (0..places.len())
            .map(|i| {
                let r = if in_s(i) { v[i] * OUTER_FACTOR } else { v[i] };
                if deg[i] == 1 {
                    PlaceRegion::Interval { lo: -r, hi: r }
                } else {
                    PlaceRegion::Annulus { r_min: 0.0, r_max: r }
                }
            })
            .collect();
        let pts = lattice_points_embedded(&lattice, &region, cap)?;
        let terms: Vec<f64> = pts
            .par_iter()
            .filter(|pt| (0..places.len()).all(|i| (pt.embedding[i].norm() > v[i]) == in_s(i)))
            .map(|pt| -> Result<f64> {
                let mut n_gamma = 1.0;
                let mut norm_s = 1.0;
                for (i, z) in pt.embedding.iter().enumerate() {
                    let m = z.norm().powi(deg[i]);
                    n_gamma *= m;
                    if in_s(i) {
                        norm_s *= m;
                    }
                }
                Ok(ctx.tau(&pt.element)?.norm() / (n_gamma.powf(c) * norm_s.powf(d - c + sigma)))
            })
            .collect::<Result<_>>()?;
        let nv: f64 = v.iter().zip(&deg).map(|(x, &k)| x.powi(k)).product();
        let vs: f64 = s_places.iter().map(|&i| v[i].powi(deg[i])).product();
        let bound_shape = na.powf(1.0 + sigma) * nv.powf(1.0 - c + sigma) / vs.powf(d - c + sigma);
        let sum: f64 = terms.iter().sum();
        rows.push(AverageRow { v: v.clone(), terms: terms.len(), sum, bound_shape, ratio: sum / bound_shape });
    }
    Ok(rows)
}
