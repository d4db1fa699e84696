//! The polar group Σ_± (N𝔇/N𝔟)^{½±s} ζ_F(1±2s) w̃_{±s}(0).
//!
//! Each of the two terms has a pole at s = 0 with opposite residues. Below
//! `S_SWITCH` the value is taken from the limit at s = 0 plus the even
//! correction a·s², with a measured from a direct evaluation at 2·S_SWITCH
//! (in the direction of s), where the cancellation costs only ~3 digits.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::report::SRegime;
use super::ProblemInstance;
use crate::error::{Error, Result};
use crate::hankel::{mellin, mellin_log};
use crate::numberfield::primes::{norm_f64, DualData};
use crate::zeta::{dedekind_zeta, laurent_at_1};

pub const S_SWITCH: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZerothTerms {
    pub value: Complex64,
    pub regime: SRegime,
}

fn ratio(p: &ProblemInstance, dual: &DualData) -> f64 {
    p.field.discriminant.unsigned_abs() as f64 / norm_f64(&dual.b_ideal)
}

/// The two-term expression evaluated as written.
pub fn zeroth_direct(p: &ProblemInstance, dual: &DualData, s: Complex64) -> Result<Complex64> {
    if s.norm() == 0.0 {
        return Err(Error::Pole("the two-term zeroth group has a pole at s = 0".into()));
    }
    let r = ratio(p, dual);
    let mut acc = Complex64::new(0.0, 0.0);
    for sign in [1.0, -1.0] {
        let t = s * sign;
        acc += (r.ln() * (t + 0.5)).exp() * dedekind_zeta(p.field, 1.0 + 2.0 * t)? * mellin(&p.w, t)?.value;
    }
    Ok(acc)
}

/// Value at s = 0: √(N𝔇/N𝔟)·[γ⁻¹(w̃'_0(0) + log(N𝔇/N𝔟)·w̃_0(0)) + 2γ⁰·w̃_0(0)].
pub fn zeroth_limit(p: &ProblemInstance, dual: &DualData) -> Result<Complex64> {
    let r = ratio(p, dual);
    let lau = laurent_at_1(p.field)?;
    let w0 = mellin(&p.w, Complex64::new(0.0, 0.0))?.value;
    let w1 = mellin_log(&p.w)?.value;
    Ok(r.sqrt() * (lau.residue * (w1 + r.ln() * w0) + 2.0 * lau.constant * w0))
}

/// Limit value plus the s² correction interpolated from 2·S_SWITCH.
pub fn zeroth_limit_path(p: &ProblemInstance, dual: &DualData, s: Complex64) -> Result<Complex64> {
    let z0 = zeroth_limit(p, dual)?;
    if s.norm() == 0.0 {
        return Ok(z0);
    }
    let anchor = s / s.norm() * (2.0 * S_SWITCH);
    let za = zeroth_direct(p, dual, anchor)?;
    Ok(z0 + (za - z0) * (s.norm() / anchor.norm()).powi(2))
}

pub fn zeroth_terms(p: &ProblemInstance, dual: &DualData) -> Result<ZerothTerms> {
    let s = p.s.s;
    if s.norm() >= S_SWITCH {
        Ok(ZerothTerms { value: zeroth_direct(p, dual, s)?, regime: SRegime::GenericS })
    } else {
        Ok(ZerothTerms { value: zeroth_limit_path(p, dual, s)?, regime: SRegime::SNearZeroLimit })
    }
}
