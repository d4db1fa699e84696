//! Prime ideals, valuations, ideal factorization, divisor functions and the
//! dual data (S, 𝔟) attached to a shift and an ideal.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::arith::{factor_bigint, hensel_lift, kronecker, quadratic_roots_mod_p, v_p, v_p_int};
use super::field::{FieldDescriptor, FieldElement};
use super::ideal::FractionalIdeal;
use crate::error::{Error, Result};

/// Splitting type of a prime ideal. `Rational` is the prime (p) of ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeKind {
    Rational,
    SplitPlus,
    SplitMinus,
    Inert,
    Ramified,
}

/// A finite place. For split and ramified primes, `root` is the residue r
/// with ω ≡ r modulo the prime, so the prime is (p, ω − r).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimeIdealData {
    pub p: u64,
    pub kind: PrimeKind,
    pub f: u32,
    pub root: Option<u64>,
}

impl PrimeIdealData {
    /// N(𝔭) = p^f.
    pub fn norm(&self) -> u64 {
        self.p.pow(self.f)
    }
}

/// The different 𝔇 = (√Δ); (1) over ℚ.
pub fn different(field: FieldDescriptor) -> FractionalIdeal {
    FractionalIdeal::from_element(field, &field.sqrt_discriminant()).expect("√Δ is nonzero")
}

/// Prime ideals above the rational prime p, in a fixed order.
pub fn primes_above(field: FieldDescriptor, p: u64) -> Vec<PrimeIdealData> {
    if field.is_rational() {
        return vec![PrimeIdealData { p, kind: PrimeKind::Rational, f: 1, root: None }];
    }
    let (t, n) = field.omega_poly();
    match kronecker(field.discriminant, p) {
        1 => {
            let roots = quadratic_roots_mod_p(t, n, p);
            debug_assert_eq!(roots.len(), 2);
            vec![
                PrimeIdealData { p, kind: PrimeKind::SplitPlus, f: 1, root: Some(roots[0]) },
                PrimeIdealData { p, kind: PrimeKind::SplitMinus, f: 1, root: Some(roots[1]) },
            ]
        }
        -1 => vec![PrimeIdealData { p, kind: PrimeKind::Inert, f: 2, root: None }],
        _ => {
            let roots = quadratic_roots_mod_p(t, n, p);
            vec![PrimeIdealData { p, kind: PrimeKind::Ramified, f: 1, root: roots.first().copied() }]
        }
    }
}

/// The prime ideal as a fractional ideal.
pub fn prime_ideal(field: FieldDescriptor, v: &PrimeIdealData) -> FractionalIdeal {
    let p = FieldElement::from_int(v.p as i64);
    let gens = match (v.kind, v.root) {
        (PrimeKind::SplitPlus | PrimeKind::SplitMinus | PrimeKind::Ramified, Some(r)) => {
            vec![p, FieldElement::from_ints(-(r as i64), 1)]
        }
        _ => vec![p],
    };
    FractionalIdeal::from_generators(field, &gens).expect("p is nonzero")
}

/// Residue r lifted to a root of ω's minimal polynomial modulo p^k.
pub fn split_root(field: FieldDescriptor, v: &PrimeIdealData, k: u32) -> Result<BigInt> {
    let (t, n) = field.omega_poly();
    let r0 = v.root.ok_or(Error::HenselFailure(v.p))?;
    hensel_lift(t, n, r0, v.p, k)
}

/// ord_v(x) for a nonzero element.
pub fn ord_element(field: FieldDescriptor, x: &FieldElement, v: &PrimeIdealData) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let p = v.p;
    match v.kind {
        PrimeKind::Rational => Ok(v_p(&x.a, p).expect("nonzero")),
        PrimeKind::Ramified => Ok(v_p(&field.norm(x), p).expect("nonzero norm")),
        PrimeKind::Inert => Ok([v_p(&x.a, p), v_p(&x.b, p)].into_iter().flatten().min().expect("nonzero")),
        PrimeKind::SplitPlus | PrimeKind::SplitMinus => {
            let den = x.denominator();
            let dr = BigRational::from_integer(den.clone());
            let a = (&x.a * &dr).to_integer();
            let b = (&x.b * &dr).to_integer();
            let integral = FieldElement::new(BigRational::from_integer(a.clone()), BigRational::from_integer(b.clone()));
            let n = field.norm(&integral).to_integer();
            let k = v_p_int(&n, p) as u32 + 1;
            let r = split_root(field, v, k)?;
            let m = BigInt::from(p).pow(k);
            let val = (a + b * r).mod_floor(&m);
            // val ≠ 0 because ord_𝔭 ≤ ord_p N < k
            let e = if val.is_zero() { k as i64 } else { v_p_int(&val, p) };
            Ok(e - v_p_int(&den, p))
        }
    }
}

/// ord_v(I) as the minimum over a ℤ-basis (which also generates I over 𝒪).
pub fn ord_ideal(ideal: &FractionalIdeal, v: &PrimeIdealData) -> Result<i64> {
    let mut best = i64::MAX;
    for g in ideal.basis() {
        best = best.min(ord_element(ideal.field, &g, v)?);
    }
    Ok(best)
}

fn rational_primes_of(r: &BigRational) -> Result<Vec<u64>> {
    let mut set = BTreeSet::new();
    for n in [r.numer(), r.denom()] {
        for (p, _) in factor_bigint(n)? {
            set.insert(p);
        }
    }
    Ok(set.into_iter().collect())
}

/// Prime factorization of a fractional ideal, with nonzero (possibly negative) exponents.
pub fn factor_ideal(ideal: &FractionalIdeal) -> Result<Vec<(PrimeIdealData, i64)>> {
    let mut out = Vec::new();
    for p in rational_primes_of(&ideal.norm())? {
        for v in primes_above(ideal.field, p) {
            let e = ord_ideal(ideal, &v)?;
            if e != 0 {
                out.push((v, e));
            }
        }
    }
    Ok(out)
}

/// Factorization of the principal ideal (x).
pub fn factor_element(field: FieldDescriptor, x: &FieldElement) -> Result<Vec<(PrimeIdealData, i64)>> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = Vec::new();
    for p in rational_primes_of(&field.norm(x))? {
        for v in primes_above(field, p) {
            let e = ord_element(field, x, &v)?;
            if e != 0 {
                out.push((v, e));
            }
        }
    }
    Ok(out)
}

/// Σ_{j=0}^{k} N^{(2j−k)s}, the local factor of τ_s at 𝔭^k with N = N(𝔭).
pub fn tau_local(norm: u64, k: u32, s: Complex64) -> Complex64 {
    let l = (norm as f64).ln();
    (0..=k)
        .map(|j| ((2.0 * j as f64 - k as f64) * l * s).exp())
        .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
}

/// τ_s from a factorization with nonnegative exponents.
pub fn tau_from_factors(factors: &[(PrimeIdealData, i64)], s: Complex64) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    for (v, e) in factors {
        if *e < 0 {
            return Err(Error::NonIntegralIdeal);
        }
        acc *= tau_local(v.norm(), *e as u32, s);
    }
    Ok(acc)
}

/// τ_s(𝔫) = N(𝔫)^{−s} Σ_{𝔡 | 𝔫} N(𝔡)^{2s} for an integral ideal.
pub fn tau_s(ideal: &FractionalIdeal, s: Complex64) -> Result<Complex64> {
    tau_from_factors(&factor_ideal(ideal)?, s)
}

/// The dual data (S, 𝔟) of a shift ζ and ideal 𝔞.
#[derive(Debug, Clone, PartialEq)]
pub struct DualData {
    pub s_set: Vec<PrimeIdealData>,
    pub b_ideal: FractionalIdeal,
}

/// S = {v : ord_v ζ < ord_v 𝔞}, 𝔟 = 𝔞⁻¹ ∏_{v∈S} 𝔭_v^{2 ord_v(𝔞/ζ)}; ζ = 0 gives S = ∅, 𝔟 = 𝔞⁻¹.
pub fn dual_data(zeta: &FieldElement, a: &FractionalIdeal) -> Result<DualData> {
    let field = a.field;
    let a_inv = a.inverse()?;
    if zeta.is_zero() {
        return Ok(DualData { s_set: Vec::new(), b_ideal: a_inv });
    }
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    primes.extend(rational_primes_of(&field.norm(zeta))?);
    primes.extend(rational_primes_of(&a.norm())?);
    let mut s_set = Vec::new();
    let mut b = a_inv;
    for p in primes {
        for v in primes_above(field, p) {
            let oz = ord_element(field, zeta, &v)?;
            let oa = ord_ideal(a, &v)?;
            if oz < oa {
                s_set.push(v);
                b = b.mul(&prime_ideal(field, &v).pow(2 * (oa - oz))?)?;
            }
        }
    }
    Ok(DualData { s_set, b_ideal: b })
}

/// Convenience: the norm of an ideal as f64.
pub fn norm_f64(ideal: &FractionalIdeal) -> f64 {
    ideal.norm().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn gauss() -> FieldDescriptor {
        FieldDescriptor::quadratic(-1).unwrap()
    }

    fn principal(f: FieldDescriptor, x: FieldElement) -> FractionalIdeal {
        FractionalIdeal::from_element(f, &x).unwrap()
    }

    #[test]
    fn factor_six_over_gaussian_integers() {
        let f = gauss();
        let fac = factor_ideal(&principal(f, FieldElement::from_int(6))).unwrap();
        assert_eq!(fac.len(), 2);
        assert_eq!((fac[0].0.p, fac[0].0.kind, fac[0].1), (2, PrimeKind::Ramified, 2));
        assert_eq!((fac[1].0.p, fac[1].0.kind, fac[1].1), (3, PrimeKind::Inert, 1));
        assert!(factor_ideal(&FractionalIdeal::unit(f)).unwrap().is_empty());
    }

    #[test]
    fn fifth_in_q_sqrt_five() {
        let f = FieldDescriptor::quadratic(5).unwrap();
        let fac = factor_ideal(&principal(f, FieldElement::from_ratio(1, 5))).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!((fac[0].0.p, fac[0].0.kind, fac[0].1), (5, PrimeKind::Ramified, -2));
    }

    #[test]
    fn valuations() {
        let q = FieldDescriptor::rational();
        let v3 = primes_above(q, 3)[0];
        assert_eq!(ord_element(q, &FieldElement::from_ratio(1, 3), &v3).unwrap(), -1);
        let f = gauss();
        let v2 = primes_above(f, 2)[0];
        assert_eq!(ord_element(f, &FieldElement::from_int(2), &v2).unwrap(), 2);
        let v5 = primes_above(f, 5);
        assert_eq!(v5.len(), 2);
        assert_eq!(ord_element(f, &FieldElement::from_int(7), &v5[0]).unwrap(), 0);
        // 2 + i and 2 − i lie in different primes above 5
        let x = FieldElement::from_ints(2, 1);
        let y = FieldElement::from_ints(2, -1);
        let ox: Vec<i64> = v5.iter().map(|v| ord_element(f, &x, v).unwrap()).collect();
        let oy: Vec<i64> = v5.iter().map(|v| ord_element(f, &y, v).unwrap()).collect();
        assert_eq!(ox.iter().sum::<i64>(), 1);
        assert_eq!(oy.iter().sum::<i64>(), 1);
        assert_ne!(ox, oy);
        assert_eq!(ord_element(f, &f.zero(), &v2), Err(Error::ZeroInput));
    }

    #[test]
    fn tau_values() {
        let q = FieldDescriptor::rational();
        let t = tau_s(&principal(q, FieldElement::from_int(6)), Complex64::new(0.0, 0.0)).unwrap();
        assert!((t - 4.0).norm() < 1e-14);
        let one = tau_s(&FractionalIdeal::unit(q), Complex64::new(0.3, 1.0)).unwrap();
        assert!((one - 1.0).norm() < 1e-15);
        let t2 = tau_s(&principal(gauss(), FieldElement::from_int(2)), Complex64::new(0.0, 0.0)).unwrap();
        assert!((t2 - 3.0).norm() < 1e-14);
        assert_eq!(
            tau_s(&principal(q, FieldElement::from_ratio(1, 2)), Complex64::new(0.0, 0.0)),
            Err(Error::NonIntegralIdeal)
        );
    }

    #[test]
    fn tau_matches_brute_force_divisors_over_q() {
        let q = FieldDescriptor::rational();
        let s = Complex64::new(0.3, 0.2);
        for n in 1..200u64 {
            let brute: Complex64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| ((d as f64).ln() * 2.0 * s).exp())
                .sum::<Complex64>()
                * (-(n as f64).ln() * s).exp();
            let t = tau_s(&principal(q, FieldElement::from_int(n as i64)), s).unwrap();
            assert!((t - brute).norm() < 1e-12 * brute.norm());
        }
    }

    #[test]
    fn dual_data_examples() {
        let q = FieldDescriptor::rational();
        let dd = dual_data(&FieldElement::from_ratio(1, 3), &FractionalIdeal::unit(q)).unwrap();
        assert_eq!(dd.s_set.len(), 1);
        assert_eq!(dd.s_set[0].p, 3);
        assert_eq!(dd.b_ideal, principal(q, FieldElement::from_int(9)));
        let dd0 = dual_data(&q.zero(), &FractionalIdeal::unit(q)).unwrap();
        assert!(dd0.s_set.is_empty() && dd0.b_ideal.is_unit());
        let f = gauss();
        let zeta = f.inv(&FieldElement::from_ints(1, 1)).unwrap();
        let dd = dual_data(&zeta, &FractionalIdeal::unit(f)).unwrap();
        assert_eq!(dd.s_set.len(), 1);
        assert_eq!(dd.s_set[0].kind, PrimeKind::Ramified);
        let p = prime_ideal(f, &dd.s_set[0]);
        assert_eq!(dd.b_ideal, p.pow(2).unwrap());
        assert_eq!(dd.b_ideal.norm(), BigRational::from_integer(4.into()));
    }

    #[test]
    fn prime_ideals_have_the_right_norm() {
        for d in [-5i64, -1, 2, 5, -23] {
            let f = FieldDescriptor::quadratic(d).unwrap();
            for p in [2u64, 3, 5, 7, 11, 13, 23] {
                for v in primes_above(f, p) {
                    let i = prime_ideal(f, &v);
                    assert_eq!(i.norm(), BigRational::from_integer(v.norm().into()), "d={d} p={p}");
                    assert_eq!(ord_ideal(&i, &v).unwrap(), 1);
                }
            }
        }
    }

    fn nonzero_integral() -> impl Strategy<Value = (i64, i64)> {
        (-30i64..30, -30i64..30).prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn tau_laws(d_idx in 0usize..4, x in nonzero_integral(), y in nonzero_integral(),
                    sr in -1.0f64..1.0, si in -1.0f64..1.0) {
            let d = [-5i64, -1, 2, 5][d_idx];
            let f = FieldDescriptor::quadratic(d).unwrap();
            let s = Complex64::new(sr, si);
            let i = principal(f, FieldElement::from_ints(x.0, x.1));
            let j = principal(f, FieldElement::from_ints(y.0, y.1));
            let ti = tau_s(&i, s).unwrap();
            prop_assert!((ti - tau_s(&i, -s).unwrap()).norm() <= 1e-12 * ti.norm().max(1.0));
            let sigma = Complex64::new(sr.abs(), 0.0);
            prop_assert!(ti.norm() <= tau_s(&i, sigma).unwrap().re * (1.0 + 1e-12));
            let coprime = i.norm().to_integer().gcd(&j.norm().to_integer()) == BigInt::one();
            if coprime {
                let tij = tau_s(&i.mul(&j).unwrap(), s).unwrap();
                let prod = ti * tau_s(&j, s).unwrap();
                prop_assert!((tij - prod).norm() <= 1e-12 * prod.norm().max(1.0));
            }
            // the product of prime powers reconstructs the ideal
            let mut rebuilt = FractionalIdeal::unit(f);
            for (v, e) in factor_ideal(&i).unwrap() {
                rebuilt = rebuilt.mul(&prime_ideal(f, &v).pow(e).unwrap()).unwrap();
            }
            prop_assert_eq!(rebuilt, i);
        }

        #[test]
        fn dual_data_stable_under_units(k in -3i64..4, num in 1i64..40, den in 1i64..40) {
            // ζ and ζ·u for a unit u of ℤ[i] give the same S
            let f = gauss();
            let zeta = FieldElement::new(BigRational::new(num.into(), den.into()), BigRational::new(1.into(), den.into()));
            let mut unit = f.one();
            for _ in 0..k.rem_euclid(4) { unit = f.mul(&unit, &f.omega()); }
            let a = FractionalIdeal::unit(f);
            let s1 = dual_data(&zeta, &a).unwrap().s_set;
            let s2 = dual_data(&f.mul(&zeta, &unit), &a).unwrap().s_set;
            prop_assert_eq!(s1, s2);
        }
    }
}
