//! Fractional ideals as a rational scale times an integral HNF lattice.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldDescriptor, FieldElement};
use crate::error::{Error, Result};

/// q·(ℤ·a + ℤ·(b + c·ω)) with a, c > 0, c | a, c | b, 0 ≤ b < a, and q = 1/D
/// for the least D making the ideal integral. Over ℚ, b = 0 and c = 1, and the
/// ideal is q·a·ℤ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FractionalIdeal {
    pub field: FieldDescriptor,
    pub scale: BigRational,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// Hermite normal form {(a, 0), (b, c)} of the ℤ-span of integer vectors.
fn hnf2(vectors: &[(BigInt, BigInt)]) -> Option<(BigInt, BigInt, BigInt)> {
    let mut pivot: Option<(BigInt, BigInt)> = None;
    let mut flat: Vec<BigInt> = Vec::new();
    for (x, y) in vectors {
        if y.is_zero() {
            flat.push(x.clone());
            continue;
        }
        match pivot.take() {
            None => pivot = Some((x.clone(), y.clone())),
            Some((px, py)) => {
                let e = py.extended_gcd(y);
                let g = e.gcd;
                let nx = &e.x * &px + &e.y * x;
                let ny = &e.x * &py + &e.y * y;
                // the complementary combination has zero second coordinate
                let zx = (y / &g) * &px - (&py / &g) * x;
                flat.push(zx);
                pivot = Some((nx, ny));
            }
        }
    }
    let (mut px, mut py) = pivot?;
    if py.is_negative() {
        px = -px;
        py = -py;
    }
    let a = flat.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if a.is_zero() {
        return None;
    }
    let b = px.mod_floor(&a);
    Some((a, b, py))
}

impl FractionalIdeal {
    /// The unit ideal 𝒪.
    pub fn unit(field: FieldDescriptor) -> Self {
        Self {
            field,
            scale: BigRational::one(),
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
        }
    }

    /// The 𝒪-module generated by the given elements.
    pub fn from_generators(field: FieldDescriptor, gens: &[FieldElement]) -> Result<Self> {
        let gens: Vec<&FieldElement> = gens.iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let mut elems: Vec<FieldElement> = Vec::new();
        for g in &gens {
            elems.push((*g).clone());
            if !field.is_rational() {
                elems.push(field.mul(g, &field.omega()));
            }
        }
        let den = elems
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(&e.denominator()));
        let dr = BigRational::from_integer(den.clone());
        let ints: Vec<(BigInt, BigInt)> = elems
            .iter()
            .map(|e| ((&e.a * &dr).to_integer(), (&e.b * &dr).to_integer()))
            .collect();
        let (a, b, c) = if field.is_rational() {
            let g = ints.iter().fold(BigInt::zero(), |acc, (x, _)| acc.gcd(x));
            (g, BigInt::zero(), BigInt::one())
        } else {
            hnf2(&ints).ok_or(Error::ZeroIdeal)?
        };
        Ok(Self::normalized(field, den, a, b, c))
    }

    /// (1/den)·HNF(a, b, c), rescaled so the denominator is minimal.
    fn normalized(field: FieldDescriptor, den: BigInt, a: BigInt, b: BigInt, c: BigInt) -> Self {
        let content = if field.is_rational() {
            a.clone()
        } else {
            a.gcd(&b).gcd(&c)
        };
        let h = den.gcd(&content);
        let (a, b, c) = if field.is_rational() {
            (&a / &h, BigInt::zero(), BigInt::one())
        } else {
            let a2 = &a / &h;
            let b2 = (&b / &h).mod_floor(&a2);
            (a2, b2, &c / &h)
        };
        Self {
            field,
            scale: BigRational::new(h, den),
            a,
            b,
            c,
        }
    }

    pub fn from_element(field: FieldDescriptor, x: &FieldElement) -> Result<Self> {
        Self::from_generators(field, std::slice::from_ref(x))
    }

    /// Builds an ideal from an HNF triple and scale, checking the HNF and 𝒪-stability.
    pub fn from_hnf(field: FieldDescriptor, scale: BigRational, a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if !scale.is_positive() || !a.is_positive() || !c.is_positive() {
            return Err(Error::Parse("HNF needs positive scale, a and c".into()));
        }
        if field.is_rational() && !(b.is_zero() && c.is_one()) {
            return Err(Error::Parse("over Q the HNF triple must be (a, 0, 1)".into()));
        }
        let basis = Self {
            field,
            scale: scale.clone(),
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        };
        let ideal = Self::from_generators(field, &basis.basis())?;
        if ideal.norm() != basis.lattice_covolume() {
            return Err(Error::Parse(format!(
                "({a}, {b}, {c}) does not span an O-module"
            )));
        }
        Ok(ideal)
    }

    fn lattice_covolume(&self) -> BigRational {
        if self.field.is_rational() {
            return &self.scale * BigRational::from_integer(self.a.clone());
        }
        &self.scale * &self.scale * BigRational::from_integer(&self.a * &self.c)
    }

    /// ℤ-basis [q·a, q·(b + c·ω)] (just [q·a] over ℚ).
    pub fn basis(&self) -> Vec<FieldElement> {
        let q = &self.scale;
        let first = FieldElement::new(q * BigRational::from_integer(self.a.clone()), BigRational::zero());
        if self.field.is_rational() {
            return vec![first];
        }
        let second = FieldElement::new(
            q * BigRational::from_integer(self.b.clone()),
            q * BigRational::from_integer(self.c.clone()),
        );
        vec![first, second]
    }

    /// Absolute norm (index of the lattice in 𝒪, extended multiplicatively).
    pub fn norm(&self) -> BigRational {
        self.lattice_covolume()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let f = self.field;
        let mut gens = Vec::new();
        for x in self.basis() {
            for y in other.basis() {
                gens.push(f.mul(&x, &y));
            }
        }
        Self::from_generators(f, &gens)
    }

    pub fn conj(&self) -> Result<Self> {
        let f = self.field;
        let gens: Vec<FieldElement> = self.basis().iter().map(|x| f.conj(x)).collect();
        Self::from_generators(f, &gens)
    }

    /// I⁻¹ = Ī / N(I).
    pub fn inverse(&self) -> Result<Self> {
        let f = self.field;
        let n = self.norm().recip();
        if f.is_rational() {
            return Self::from_element(f, &FieldElement::new(n, BigRational::zero()));
        }
        let gens: Vec<FieldElement> = self.basis().iter().map(|x| f.scale(&f.conj(x), &n)).collect();
        Self::from_generators(f, &gens)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::unit(self.field);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Whether x lies in the ideal.
    pub fn contains(&self, x: &FieldElement) -> bool {
        let xa = &x.a / &self.scale;
        let xb = &x.b / &self.scale;
        if self.field.is_rational() {
            if !xb.is_zero() {
                return false;
            }
            return (xa / BigRational::from_integer(self.a.clone())).is_integer();
        }
        let n = xb / BigRational::from_integer(self.c.clone());
        if !n.is_integer() {
            return false;
        }
        let m = (xa - &n * BigRational::from_integer(self.b.clone())) / BigRational::from_integer(self.a.clone());
        m.is_integer()
    }

    /// Whether the ideal is contained in 𝒪.
    pub fn is_integral(&self) -> bool {
        self.scale.is_integer()
    }

    pub fn is_unit(&self) -> bool {
        *self == Self::unit(self.field)
    }

    /// Checks that ω times each basis vector stays in the module.
    pub fn is_o_stable(&self) -> bool {
        if self.field.is_rational() {
            return true;
        }
        let w = self.field.omega();
        self.basis().iter().all(|v| self.contains(&self.field.mul(v, &w)))
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = if self.scale.is_one() {
            String::new()
        } else {
            format!("{}/{}*", self.scale.numer(), self.scale.denom())
        };
        write!(f, "{q}[{},{},{}]", self.a, self.b, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ramified_two_in_q_sqrt_minus_five() {
        let f = FieldDescriptor::quadratic(-5).unwrap();
        let i = FractionalIdeal::from_generators(f, &[FieldElement::from_int(2), FieldElement::from_ints(1, 1)]).unwrap();
        assert_eq!((i.a.clone(), i.b.clone(), i.c.clone()), (2.into(), 1.into(), 1.into()));
        assert_eq!(i.norm(), r(2, 1));
        let sq = i.mul(&i).unwrap();
        assert_eq!(sq, FractionalIdeal::from_element(f, &FieldElement::from_int(2)).unwrap());
        assert!(i.is_o_stable());
    }

    #[test]
    fn principal_inverse_and_norms() {
        let q = FieldDescriptor::rational();
        let three = FractionalIdeal::from_element(q, &FieldElement::from_int(3)).unwrap();
        let third = FractionalIdeal::from_element(q, &FieldElement::from_ratio(1, 3)).unwrap();
        assert_eq!(three.inverse().unwrap(), third);
        assert_eq!(third.norm(), r(1, 3));
        let g = FieldDescriptor::quadratic(-1).unwrap();
        let p = FractionalIdeal::from_element(g, &FieldElement::from_ints(1, 1)).unwrap();
        assert_eq!(p.norm(), r(2, 1));
        let third_g = FractionalIdeal::from_element(g, &FieldElement::from_ratio(1, 3)).unwrap();
        assert_eq!(third_g.scale, r(1, 3));
        assert!(third_g.a == BigInt::one() && third_g.c == BigInt::one());
    }

    #[test]
    fn different_norms() {
        for (d, n) in [(-1, 4), (5, 5), (-5, 20), (2, 8)] {
            let f = FieldDescriptor::quadratic(d).unwrap();
            let dd = FractionalIdeal::from_element(f, &f.sqrt_discriminant()).unwrap();
            assert_eq!(dd.norm(), r(n, 1));
        }
    }

    #[test]
    fn zero_ideal_rejected() {
        let f = FieldDescriptor::quadratic(-1).unwrap();
        assert_eq!(FractionalIdeal::from_element(f, &f.zero()), Err(Error::ZeroIdeal));
    }

    fn element() -> impl Strategy<Value = FieldElement> {
        (-20i64..20, -20i64..20, 1i64..6, 1i64..6).prop_filter_map("nonzero", |(a, b, da, db)| {
            let e = FieldElement::new(r(a, da), r(b, db));
            (!e.is_zero()).then_some(e)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn ideal_group_laws(d_idx in 0usize..5, x in element(), y in element(), z in element()) {
            let d = [-5i64, -1, 2, 5, -23][d_idx];
            let f = FieldDescriptor::quadratic(d).unwrap();
            let i = FractionalIdeal::from_generators(f, &[x.clone(), y.clone()]).unwrap();
            let j = FractionalIdeal::from_generators(f, &[z.clone()]).unwrap();
            prop_assert!(i.is_o_stable());
            prop_assert!(i.contains(&x) && i.contains(&y));
            let ij = i.mul(&j).unwrap();
            prop_assert_eq!(ij.norm(), i.norm() * j.norm());
            prop_assert!(i.mul(&i.inverse().unwrap()).unwrap().is_unit());
            prop_assert_eq!(j.norm(), f.norm(&z).abs());
            // HNF invariants
            prop_assert!(i.c.is_positive() && (&i.a % &i.c).is_zero() && (&i.b % &i.c).is_zero());
            prop_assert!(!i.b.is_negative() && i.b < i.a);
        }
    }
}
