use num_complex::Complex64;
use rayon::prelude::*;

use super::{ProblemInstance, TauContext};
use crate::error::Result;
use crate::hankel::{weight_eval, PlaceWeight};
use crate::numberfield::character::psi_infty;
use crate::numberfield::lattice::{lattice_points_embedded, DEFAULT_SCAN_CAP};
use crate::numberfield::primes::{different, norm_f64};
use crate::numberfield::PlaceRegion;

/// The region covering supp(w), place by place.
pub(crate) fn support_region(w: &[PlaceWeight]) -> Vec<PlaceRegion> {
    w.iter()
        .map(|p| match p {
            PlaceWeight::Real { .. } => {
                let r = p.outer_radius();
                PlaceRegion::Interval { lo: -r, hi: r }
            }
            PlaceWeight::Complex(_) => PlaceRegion::Annulus { r_min: p.inner_radius(), r_max: p.outer_radius() },
        })
        .collect()
}

/// Σ_{γ∈(𝔞𝔇)⁻¹∖0} ψ_∞(γζ) τ_s(γ𝔞𝔇) w(γ) / √N𝔞, with the number of
/// lattice points where w ≠ 0.
pub fn lhs_sum(p: &ProblemInstance) -> Result<(Complex64, usize)> {
    let ad = p.a_ideal.mul(&different(p.field))?;
    let lattice = ad.inverse()?;
    let pts = lattice_points_embedded(&lattice, &support_region(&p.w.places), DEFAULT_SCAN_CAP)?;
    let ctx = TauContext::new(&ad, p.s.s)?;
    let zeta_zero = p.zeta_shift.is_zero();
    let terms: Vec<Option<Complex64>> = pts
        .par_iter()
        .map(|pt| -> Result<Option<Complex64>> {
            let wv = weight_eval(&p.w, &pt.embedding)?;
            if wv == Complex64::new(0.0, 0.0) {
                return Ok(None);
            }
            let psi = if zeta_zero {
                Complex64::new(1.0, 0.0)
            } else {
                psi_infty(p.field, &p.field.mul(&pt.element, &p.zeta_shift))
            };
            Ok(Some(psi * ctx.tau(&pt.element)? * wv))
        })
        .collect::<Result<_>>()?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut count = 0;
    for t in terms.into_iter().flatten() {
        sum += t;
        count += 1;
    }
    Ok((sum / norm_f64(&p.a_ideal).sqrt(), count))
}
