//! The standard additive character ψ = ⊗ψ_v: ψ_∞(x) = e(−Tr x) and
//! ψ_v(x) = e({Tr_{F_v/ℚ_p} x}_p) at finite places.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::arith::{factor_bigint, frac, frac_p, v_p};
use super::field::{FieldDescriptor, FieldElement};
use super::primes::{primes_above, split_root, PrimeIdealData, PrimeKind};
use crate::hooks::{self, Mutation};
use crate::error::{Error, Result};

/// e(r) = exp(2πi r) after exact reduction of r modulo 1.
pub fn e_rational(r: &BigRational) -> Complex64 {
    let f = frac(r).to_f64().unwrap_or(0.0);
    Complex64::from_polar(1.0, 2.0 * PI * f)
}

pub fn psi_infty(field: FieldDescriptor, x: &FieldElement) -> Complex64 {
    e_rational(&-field.trace(x))
}

fn split_trace(field: FieldDescriptor, x: &FieldElement, v: &PrimeIdealData, k: u32) -> Result<BigRational> {
    let r = split_root(field, v, k)?;
    Ok(&x.a + &x.b * BigRational::from_integer(r))
}

/// Local trace Tr_{F_v/ℚ_p}(x) modulo ℤ_p, as a p-adic fractional part.
pub fn local_trace_frac(field: FieldDescriptor, x: &FieldElement, v: &PrimeIdealData) -> Result<BigRational> {
    let p = v.p;
    match v.kind {
        PrimeKind::Rational => Ok(frac_p(&x.a, p)),
        PrimeKind::Inert | PrimeKind::Ramified => Ok(frac_p(&field.trace(x), p)),
        PrimeKind::SplitPlus | PrimeKind::SplitMinus => {
            let den_exp = v_p(&x.b, p).map(|e| (-e).max(0)).unwrap_or(0) as u32;
            let disc_exp = v_p(&BigRational::from_integer(BigInt::from(field.discriminant)), p).unwrap_or(0) as u32;
            let k = den_exp + disc_exp + 2;
            let t = frac_p(&split_trace(field, x, v, k)?, p);
            let guard = frac_p(&split_trace(field, x, v, k + 2)?, p);
            if t != guard {
                return Err(Error::HenselFailure(p));
            }
            Ok(t)
        }
    }
}

pub fn psi_v(field: FieldDescriptor, x: &FieldElement, v: &PrimeIdealData) -> Result<Complex64> {
    let z = e_rational(&local_trace_frac(field, x, v)?);
    Ok(if hooks::active(Mutation::PsiSignFlip) { z.conj() } else { z })
}

/// ∏_{v∈S} ψ_v(x); 1 for empty S.
pub fn psi_s(field: FieldDescriptor, x: &FieldElement, s: &[PrimeIdealData]) -> Result<Complex64> {
    if s.is_empty() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for v in s {
        acc *= psi_v(field, x, v)?;
    }
    Ok(acc)
}

/// Finite places where ψ_v(x) can differ from 1: those above primes dividing
/// the denominators of x or the discriminant.
pub fn character_support(field: FieldDescriptor, x: &FieldElement) -> Result<Vec<PrimeIdealData>> {
    let mut primes = BTreeSet::new();
    let den = x.denominator();
    if den > BigInt::from(1) {
        primes.extend(factor_bigint(&den)?.into_iter().map(|(p, _)| p));
    }
    if field.discriminant.abs() > 1 {
        primes.extend(factor_bigint(&BigInt::from(field.discriminant))?.into_iter().map(|(p, _)| p));
    }
    Ok(primes.into_iter().flat_map(|p| primes_above(field, p)).collect())
}

/// ψ_∞(x)·∏_{v finite} ψ_v(x), which is 1 for x ∈ F.
pub fn global_character(field: FieldDescriptor, x: &FieldElement) -> Result<Complex64> {
    if x.is_zero() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let support = character_support(field, x)?;
    Ok(psi_infty(field, x) * psi_s(field, x, &support)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn archimedean_values() {
        let q = FieldDescriptor::rational();
        assert!(close(psi_infty(q, &FieldElement::from_ratio(1, 2)), Complex64::new(-1.0, 0.0)));
        let g = FieldDescriptor::quadratic(-1).unwrap();
        let x = FieldElement::new(BigRational::new(1.into(), 4.into()), BigRational::new(1.into(), 4.into()));
        assert!(close(psi_infty(g, &x), Complex64::new(-1.0, 0.0)));
        assert!(close(psi_infty(g, &FieldElement::from_ints(3, -7)), Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn finite_values() {
        let q = FieldDescriptor::rational();
        let v3 = primes_above(q, 3)[0];
        let third = FieldElement::from_ratio(1, 3);
        assert!(close(psi_s(q, &third, &[v3]).unwrap(), Complex64::from_polar(1.0, 2.0 * PI / 3.0)));
        assert!(close(psi_s(q, &third, &[]).unwrap(), Complex64::new(1.0, 0.0)));
        let sixth = FieldElement::from_ratio(1, 6);
        assert!(close(global_character(q, &sixth).unwrap(), Complex64::new(1.0, 0.0)));
        assert_eq!(psi_s(q, &q.zero(), &[v3]), Err(Error::ZeroArgument));
    }

    fn element() -> impl Strategy<Value = FieldElement> {
        (-60i64..60, -60i64..60, 1i64..200, 1i64..200).prop_filter_map("nonzero", |(a, b, da, db)| {
            let e = FieldElement::new(BigRational::new(a.into(), da.into()), BigRational::new(b.into(), db.into()));
            (!e.is_zero()).then_some(e)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn character_is_trivial_on_the_field(d_idx in 0usize..6, x in element()) {
            let f = match d_idx {
                0 => FieldDescriptor::rational(),
                i => FieldDescriptor::quadratic([-1i64, 5, -5, 2, -3][i - 1]).unwrap(),
            };
            let x = if f.is_rational() { FieldElement::new(x.a, BigRational::zero()) } else { x };
            if !x.is_zero() {
                let g = global_character(f, &x).unwrap();
                prop_assert!((g - 1.0).norm() < 1e-12, "{} at {}", g, x);
            }
        }
    }
}
