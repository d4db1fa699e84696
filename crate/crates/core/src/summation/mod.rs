//! Both sides of the Voronoi–Oppenheim identity and their comparison.
//!
//! ```text
//! Σ_{γ∈(𝔞𝔇)⁻¹∖0} ψ_∞(γζ) τ_s(γ𝔞𝔇) w(γ) / √N𝔞
//!   = Σ_± (N𝔇/N𝔟)^{½±s} ζ_F(1±2s) w̃_{±s}(0)
//!   + Σ_{γ∈(𝔟𝔇)⁻¹∖0} ψ_S(γ/ζ) τ_s(γ𝔟𝔇) w̃_s(γ) / √N𝔟
//! ```

mod average;
mod dual;
mod lhs;
mod report;
mod zeroth;


use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hankel::WeightSpec;
use crate::numberfield::primes::{factor_element, factor_ideal, tau_local, PrimeIdealData};
use crate::numberfield::{FieldDescriptor, FieldElement, FractionalIdeal};
use crate::specfun::SpectralParameter;

pub use average::{divisor_average_check, AverageRow};
pub use dual::{dual_sum, dual_sum_partial, DualSumResult, ShellStat};
pub use lhs::lhs_sum;
pub use report::{verify, SRegime, Timings, VerificationReport};
pub use zeroth::{zeroth_direct, zeroth_limit, zeroth_limit_path, zeroth_terms, ZerothTerms, S_SWITCH};

/// One instance of the identity.
#[derive(Debug, Clone)]
pub struct ProblemInstance {
    pub field: FieldDescriptor,
    pub a_ideal: FractionalIdeal,
    pub zeta_shift: FieldElement,
    pub s: SpectralParameter,
    pub w: WeightSpec,
    pub tol: f64,
    pub max_radius: f64,
}

impl ProblemInstance {
    pub const TOL_RANGE: (f64, f64) = (1e-10, 1e-2);

    pub fn new(
        field: FieldDescriptor,
        a_ideal: FractionalIdeal,
        zeta_shift: FieldElement,
        s: SpectralParameter,
        w: WeightSpec,
        tol: f64,
        max_radius: f64,
    ) -> Result<Self> {
        let p = Self { field, a_ideal, zeta_shift, s, w, tol, max_radius };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = Self::TOL_RANGE;
        if !(lo..=hi).contains(&self.tol) {
            return Err(Error::Config(format!("tol = {} is outside [{lo}, {hi}]", self.tol)));
        }
        if !(self.max_radius.is_finite() && self.max_radius >= 4.0) {
            return Err(Error::Config(format!("max_radius = {} must be finite and ≥ 4", self.max_radius)));
        }
        if self.a_ideal.field != self.field {
            return Err(Error::Config("ideal belongs to a different field".into()));
        }
        self.w.validate()?;
        self.w.check_places(&self.field.places())
    }

    /// Same instance at another spectral parameter.
    pub fn with_s(&self, s: Complex64) -> Self {
        Self { s: SpectralParameter { s }, ..self.clone() }
    }

    /// ζ ≠ 0 with 𝔞 ≠ (1): 𝔟 follows the general definition, outside the
    /// specialisations worked out in the literature.
    pub fn is_extended(&self) -> bool {
        !self.zeta_shift.is_zero() && !self.a_ideal.is_unit()
    }
}

/// τ_s(γ·𝔠) for a fixed ideal 𝔠, by merging the factorization of (γ) into
/// that of 𝔠. Fails with `NonIntegralIdeal` if γ𝔠 is not integral.
pub(crate) struct TauContext {
    field: FieldDescriptor,
    base: BTreeMap<PrimeIdealData, i64>,
    s: Complex64,
}

impl TauContext {
    pub(crate) fn new(ideal: &FractionalIdeal, s: Complex64) -> Result<Self> {
        Ok(Self { field: ideal.field, base: factor_ideal(ideal)?.into_iter().collect(), s })
    }

    pub(crate) fn tau(&self, gamma: &FieldElement) -> Result<Complex64> {
        let mut exps = self.base.clone();
        for (v, e) in factor_element(self.field, gamma)? {
            *exps.entry(v).or_insert(0) += e;
        }
        let mut acc = Complex64::new(1.0, 0.0);
        for (v, e) in exps {
            if e < 0 {
                return Err(Error::NonIntegralIdeal);
            }
            acc *= tau_local(v.norm(), e as u32, self.s);
        }
        Ok(acc)
    }
}
