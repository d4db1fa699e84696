//! Parametric test functions on F_∞^×: products of smooth bumps, one factor
//! per archimedean place.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::Place;

/// The standard bump exp(1 − 1/(1 − t²)) on (−1, 1), zero outside.
pub fn bump(t: f64) -> f64 {
    let q = 1.0 - t * t;
    if q <= 0.0 {
        0.0
    } else {
        (1.0 - 1.0 / q).exp()
    }
}

/// One bump on sign·(center − radius, center + radius).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealComponent {
    /// +1 or −1.
    pub sign: i8,
    pub center: f64,
    pub radius: f64,
    #[serde(default = "one")]
    pub amplitude: f64,
}

fn one() -> f64 {
    1.0
}

impl RealComponent {
    pub fn positive(center: f64, radius: f64, amplitude: f64) -> Self {
        Self { sign: 1, center, radius, amplitude }
    }

    /// Value at a point of the positive half-line, ignoring the sign.
    pub fn profile(&self, x_abs: f64) -> f64 {
        self.amplitude * bump((x_abs - self.center) / self.radius)
    }

    pub fn eval(&self, x: f64) -> f64 {
        if (x > 0.0) != (self.sign > 0) {
            return 0.0;
        }
        self.profile(x.abs())
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.radius, self.center + self.radius)
    }
}

/// Radial bump in |z| times e^{ik·arg z}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexFactor {
    pub center: f64,
    pub radius: f64,
    #[serde(default = "one")]
    pub amplitude: f64,
    #[serde(default)]
    pub k: i32,
}

impl ComplexFactor {
    pub fn radial(center: f64, radius: f64, amplitude: f64) -> Self {
        Self { center, radius, amplitude, k: 0 }
    }

    pub fn profile(&self, r: f64) -> f64 {
        self.amplitude * bump((r - self.center) / self.radius)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let p = self.profile(z.norm());
        if p == 0.0 || self.k == 0 {
            return Complex64::new(p, 0.0);
        }
        Complex64::from_polar(p, self.k as f64 * z.arg())
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.radius, self.center + self.radius)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "place", rename_all = "lowercase")]
pub enum PlaceWeight {
    Real { components: Vec<RealComponent> },
    Complex(ComplexFactor),
}

impl PlaceWeight {
    pub fn place(&self) -> Place {
        match self {
            PlaceWeight::Real { .. } => Place::Real,
            PlaceWeight::Complex(_) => Place::Complex,
        }
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        match self {
            PlaceWeight::Real { components } => {
                Complex64::new(components.iter().map(|c| c.eval(x.re)).sum(), 0.0)
            }
            PlaceWeight::Complex(f) => f.eval(x),
        }
    }

    /// Largest |x| in the support.
    pub fn outer_radius(&self) -> f64 {
        match self {
            PlaceWeight::Real { components } => components.iter().map(|c| c.support().1).fold(0.0, f64::max),
            PlaceWeight::Complex(f) => f.support().1,
        }
    }

    /// Smallest |x| in the support.
    pub fn inner_radius(&self) -> f64 {
        match self {
            PlaceWeight::Real { components } => {
                components.iter().map(|c| c.support().0).fold(f64::INFINITY, f64::min)
            }
            PlaceWeight::Complex(f) => f.support().0,
        }
    }

    fn scaled(&self, a: f64) -> Self {
        match self {
            PlaceWeight::Real { components } => PlaceWeight::Real {
                components: components.iter().map(|c| RealComponent { amplitude: c.amplitude * a, ..*c }).collect(),
            },
            PlaceWeight::Complex(f) => PlaceWeight::Complex(ComplexFactor { amplitude: f.amplitude * a, ..*f }),
        }
    }
}

/// A weight in product form, factors listed in embedding order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub places: Vec<PlaceWeight>,
}

impl WeightSpec {
    pub fn new(places: Vec<PlaceWeight>) -> Result<Self> {
        let w = Self { places };
        w.validate()?;
        Ok(w)
    }

    /// Single positive real bump.
    pub fn real_bump(center: f64, radius: f64) -> Self {
        Self {
            places: vec![PlaceWeight::Real {
                components: vec![RealComponent::positive(center, radius, 1.0)],
            }],
        }
    }

    pub fn complex_bump(center: f64, radius: f64) -> Self {
        Self {
            places: vec![PlaceWeight::Complex(ComplexFactor::radial(center, radius, 1.0))],
        }
    }

    /// The default weight per field: one bump with support [1, 4] over ℚ,
    /// the bump on [4, 28] at both places of a real quadratic field, and the
    /// radial bump on 16 ≤ |z| ≤ 48 for an imaginary quadratic field. The
    /// quadratic ones are dilated so that their transforms decay at small |y|.
    pub fn standard(places: &[Place]) -> Self {
        match places {
            [Place::Real] => Self::real_bump(2.5, 1.5),
            [Place::Complex] => Self::complex_bump(32.0, 16.0),
            _ => Self {
                places: places
                    .iter()
                    .map(|pl| match pl {
                        Place::Real => PlaceWeight::Real { components: vec![RealComponent::positive(16.0, 12.0, 1.0)] },
                        Place::Complex => PlaceWeight::Complex(ComplexFactor::radial(32.0, 16.0, 1.0)),
                    })
                    .collect(),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.places.is_empty() {
            return bad("weight has no place factors".into());
        }
        for (i, p) in self.places.iter().enumerate() {
            match p {
                PlaceWeight::Real { components } => {
                    if components.is_empty() {
                        return bad(format!("real factor {i} has no components"));
                    }
                    for c in components {
                        if c.sign != 1 && c.sign != -1 {
                            return bad(format!("component sign {} is not ±1", c.sign));
                        }
                        if !(c.radius > 0.0 && c.center - c.radius > 0.0 && c.center.is_finite()) {
                            return bad(format!("bump ({}, {}) must satisfy 0 < r < c", c.center, c.radius));
                        }
                    }
                }
                PlaceWeight::Complex(f) => {
                    if !(f.radius > 0.0 && f.center - f.radius > 0.0 && f.center.is_finite()) {
                        return bad(format!("bump ({}, {}) must satisfy 0 < r < ρ", f.center, f.radius));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that the factors match the field's archimedean places.
    pub fn check_places(&self, places: &[Place]) -> Result<()> {
        let mine: Vec<Place> = self.places.iter().map(|p| p.place()).collect();
        if mine != places {
            return Err(Error::Config(format!("weight places {mine:?} do not match field places {places:?}")));
        }
        Ok(())
    }

    /// Same weight with every amplitude multiplied by `a`.
    pub fn scaled(&self, a: f64) -> Self {
        let mut places = self.places.clone();
        if let Some(first) = places.first_mut() {
            *first = first.scaled(a);
        }
        Self { places }
    }
}

/// w(x) as the product of the place factors.
pub fn weight_eval(w: &WeightSpec, x: &[Complex64]) -> Result<Complex64> {
    if x.len() != w.places.len() {
        return Err(Error::DomainError(format!(
            "point has {} coordinates, weight has {} factors",
            x.len(),
            w.places.len()
        )));
    }
    if let Some(i) = x.iter().position(|z| z.norm() == 0.0) {
        return Err(Error::ZeroCoordinate(i));
    }
    Ok(w.places.iter().zip(x).map(|(p, z)| p.eval(*z)).product())
}
