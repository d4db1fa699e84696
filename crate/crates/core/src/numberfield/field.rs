//! ℚ and quadratic fields, and their elements in the basis {1, ω}.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::Place;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Rational,
    Quadratic,
}

/// ℚ or ℚ(√d) with its integral basis {1, ω}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    /// Squarefree d for quadratic fields; 1 for ℚ.
    pub d: i64,
    pub discriminant: i64,
    pub r1: u32,
    pub r2: u32,
}

/// Element a + b·ω (b = 0 over ℚ).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub a: BigRational,
    pub b: BigRational,
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl FieldDescriptor {
    pub fn rational() -> Self {
        Self {
            kind: FieldKind::Rational,
            d: 1,
            discriminant: 1,
            r1: 1,
            r2: 0,
        }
    }

    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::DisallowedD(d));
        }
        if !is_squarefree(d) {
            return Err(Error::NonSquarefree(d));
        }
        let discriminant = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        let (r1, r2) = if d > 0 { (2, 0) } else { (0, 1) };
        Ok(Self {
            kind: FieldKind::Quadratic,
            d,
            discriminant,
            r1,
            r2,
        })
    }

    pub fn degree(&self) -> u32 {
        self.r1 + 2 * self.r2
    }

    pub fn is_rational(&self) -> bool {
        self.kind == FieldKind::Rational
    }

    /// ω² = t·ω − n; returns (t, n), the trace and norm of ω.
    pub fn omega_poly(&self) -> (i64, i64) {
        match self.kind {
            FieldKind::Rational => (0, 0),
            FieldKind::Quadratic if self.d.rem_euclid(4) == 1 => (1, (1 - self.d) / 4),
            FieldKind::Quadratic => (0, -self.d),
        }
    }

    /// Archimedean places in embedding order.
    pub fn places(&self) -> Vec<Place> {
        let mut v = vec![Place::Real; self.r1 as usize];
        v.extend(std::iter::repeat_n(Place::Complex, self.r2 as usize));
        v
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_int(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_int(1)
    }

    pub fn omega(&self) -> FieldElement {
        FieldElement::new(BigRational::zero(), BigRational::from_integer(1.into()))
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement::new(&x.a + &y.a, &x.b + &y.b)
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement::new(&x.a - &y.a, &x.b - &y.b)
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        FieldElement::new(-&x.a, -&x.b)
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let (t, n) = self.omega_poly();
        let (t, n) = (BigRational::from_integer(t.into()), BigRational::from_integer(n.into()));
        let bb = &x.b * &y.b;
        FieldElement::new(
            &x.a * &y.a - &n * &bb,
            &x.a * &y.b + &x.b * &y.a + &t * &bb,
        )
    }

    pub fn scale(&self, x: &FieldElement, r: &BigRational) -> FieldElement {
        FieldElement::new(&x.a * r, &x.b * r)
    }

    /// Galois conjugate (identity over ℚ).
    pub fn conj(&self, x: &FieldElement) -> FieldElement {
        if self.is_rational() {
            return x.clone();
        }
        let (t, _) = self.omega_poly();
        let t = BigRational::from_integer(t.into());
        FieldElement::new(&x.a + &x.b * t, -&x.b)
    }

    pub fn norm(&self, x: &FieldElement) -> BigRational {
        if self.is_rational() {
            return x.a.clone();
        }
        let (t, n) = self.omega_poly();
        let (t, n) = (BigRational::from_integer(t.into()), BigRational::from_integer(n.into()));
        &x.a * &x.a + t * &x.a * &x.b + n * &x.b * &x.b
    }

    pub fn trace(&self, x: &FieldElement) -> BigRational {
        if self.is_rational() {
            return x.a.clone();
        }
        let (t, _) = self.omega_poly();
        BigRational::from_integer(2.into()) * &x.a + BigRational::from_integer(t.into()) * &x.b
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.is_rational() {
            return Ok(FieldElement::new(x.a.recip(), BigRational::zero()));
        }
        let n = self.norm(x);
        Ok(self.scale(&self.conj(x), &n.recip()))
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// √Δ in the basis {1, ω}: 2ω − 1 if d ≡ 1 (mod 4), else 2ω; 1 over ℚ.
    pub fn sqrt_discriminant(&self) -> FieldElement {
        match self.kind {
            FieldKind::Rational => self.one(),
            FieldKind::Quadratic if self.d.rem_euclid(4) == 1 => FieldElement::from_ints(-1, 2),
            FieldKind::Quadratic => FieldElement::from_ints(0, 2),
        }
    }

    /// Images of ω under the archimedean embeddings, in embedding order.
    pub fn omega_embeddings(&self) -> Vec<Complex64> {
        let df = self.d as f64;
        let half = self.d.rem_euclid(4) == 1;
        match (self.kind, self.d > 0) {
            (FieldKind::Rational, _) => vec![],
            (FieldKind::Quadratic, true) => {
                let r = df.sqrt();
                if half {
                    vec![Complex64::new((1.0 + r) / 2.0, 0.0), Complex64::new((1.0 - r) / 2.0, 0.0)]
                } else {
                    vec![Complex64::new(r, 0.0), Complex64::new(-r, 0.0)]
                }
            }
            (FieldKind::Quadratic, false) => {
                let r = (-df).sqrt();
                if half {
                    vec![Complex64::new(0.5, r / 2.0)]
                } else {
                    vec![Complex64::new(0.0, r)]
                }
            }
        }
    }

    /// Archimedean embedding of x. Real places are returned with zero imaginary part.
    ///
    /// For real quadratic fields the smaller conjugate is recovered as N(x)/x₁
    /// to avoid cancellation.
    pub fn embed(&self, x: &FieldElement) -> Vec<Complex64> {
        let a = x.a.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return vec![Complex64::new(a, 0.0)];
        }
        let b = x.b.to_f64().unwrap_or(f64::NAN);
        let w = self.omega_embeddings();
        let mut e: Vec<Complex64> = w.iter().map(|w| a + b * w).collect();
        if self.r1 == 2 && !x.is_zero() {
            let n = self.norm(x).to_f64().unwrap_or(f64::NAN);
            if e[0].norm() >= e[1].norm() {
                e[1] = Complex64::new(n / e[0].re, 0.0);
            } else {
                e[0] = Complex64::new(n / e[1].re, 0.0);
            }
        }
        e
    }

    /// Coordinates (x, y) ∈ ℚ² of an element, as used by lattice code.
    pub fn coords(&self, x: &FieldElement) -> (BigRational, BigRational) {
        (x.a.clone(), x.b.clone())
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Quadratic => write!(f, "Q(sqrt,{})", self.d),
        }
    }
}

impl FieldElement {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn from_int(a: i64) -> Self {
        Self::from_ints(a, 0)
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        )
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Least common denominator of the two coordinates.
    pub fn denominator(&self) -> BigInt {
        num_integer::lcm(self.a.denom().clone(), self.b.denom().clone())
    }

    pub fn is_integral_coords(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}*w", fmt_rational(&self.a), sign, fmt_rational(&self.b.abs()))
    }
}
