//! Bessel kernels B_s at real and complex places.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bessel::{self, Approx, Regime};
use super::gamma::Place;
use crate::error::{Error, Result};
use crate::hooks::{self, Mutation};

/// Spectral parameter s with |Re s| ≤ 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralParameter {
    pub s: Complex64,
}

impl SpectralParameter {
    pub const MAX_REAL_PART: f64 = 2.0;

    pub fn new(s: Complex64) -> Result<Self> {
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::DomainError(format!("spectral parameter {s} is not finite")));
        }
        if s.re.abs() > Self::MAX_REAL_PART {
            return Err(Error::DomainError(format!(
                "spectral parameter {s} has |Re s| > {}",
                Self::MAX_REAL_PART
            )));
        }
        Ok(Self { s })
    }

    pub fn real(s: f64) -> Result<Self> {
        Self::new(Complex64::new(s, 0.0))
    }

    pub fn sigma(&self) -> f64 {
        self.s.re
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub value: Complex64,
    pub regime: Regime,
    pub est_abs_err: f64,
}

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// Regime reported for a combination: a circle average dominates, then the
/// least accurate of the remaining methods.
fn combine(a: Regime, b: Regime) -> Regime {
    use Regime::*;
    match (a, b) {
        (LimitForm, _) | (_, LimitForm) => LimitForm,
        (Integral, _) | (_, Integral) => Integral,
        (Asymptotic, _) | (_, Asymptotic) => Asymptotic,
        _ => Series,
    }
}

/// B_s(x) at a real place.
///
/// For x > 0 this is −2π(cos πs Y_{2s} + sin πs J_{2s})(4π√x), evaluated through
/// the Hankel functions once the argument leaves the series disc; for x < 0 it
/// is 4 cos(πs) K_{2s}(4π√|x|).
fn kernel_real_unhooked(s: SpectralParameter, x: f64) -> Result<KernelValue> {
    if x == 0.0 {
        return Err(Error::ZeroArgument);
    }
    if !x.is_finite() {
        return Err(Error::DomainError(format!("kernel argument {x} is not finite")));
    }
    let s = s.s;
    let nu = s * 2.0;
    let u = 4.0 * PI * x.abs().sqrt();
    if x < 0.0 {
        let k = bessel::bessel_k_approx(nu, u)?;
        let f = (s * PI).cos() * 4.0;
        return Ok(KernelValue {
            value: f * k.value,
            regime: k.regime,
            est_abs_err: f.norm() * k.err,
        });
    }
    if u < bessel::SERIES_RADIUS {
        let y = bessel::bessel_y_approx(nu, u)?;
        let j = bessel::bessel_j_approx(nu, Complex64::new(u, 0.0))?;
        let (cs, sn) = ((s * PI).cos(), (s * PI).sin());
        let value = -2.0 * PI * (cs * y.value + sn * j.value);
        return Ok(KernelValue {
            value,
            regime: combine(y.regime, j.regime),
            est_abs_err: 2.0 * PI * (cs.norm() * y.err + sn.norm() * j.err),
        });
    }
    let uc = Complex64::new(u, 0.0);
    let h1 = bessel::hankel_h1_approx(nu, uc)?;
    let h2 = bessel::hankel_h2_approx(nu, uc)?;
    let (e1, e2) = ((i() * PI * s).exp(), (-i() * PI * s).exp());
    let value = i() * PI * (e1 * h1.value - e2 * h2.value);
    Ok(KernelValue {
        value,
        regime: combine(h1.regime, h2.regime),
        est_abs_err: PI * (e1.norm() * h1.err + e2.norm() * h2.err),
    })
}

/// B_s(z) at a complex place, from the Hankel-product representation with
/// u = 4π√z (principal root) paired with its conjugate.
fn kernel_complex_unhooked(s: SpectralParameter, z: Complex64) -> Result<KernelValue> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroArgument);
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::DomainError(format!("kernel argument {z} is not finite")));
    }
    let s = s.s;
    let nu = s * 2.0;
    let u = z.sqrt() * (4.0 * PI);
    let ub = u.conj();
    let a1 = bessel::hankel_h1_approx(nu, u)?;
    let a2 = bessel::hankel_h2_approx(nu, u)?;
    let (b1, b2) = if nu.im == 0.0 {
        // real order: H1_ν(ū) = conj H2_ν(u)
        let conj = |a: Approx| Approx { value: a.value.conj(), ..a };
        (conj(a2), conj(a1))
    } else {
        (bessel::hankel_h1_approx(nu, ub)?, bessel::hankel_h2_approx(nu, ub)?)
    };
    let (e1, e2) = ((i() * 2.0 * PI * s).exp(), (-i() * 2.0 * PI * s).exp());
    let p1 = a1.value * b1.value;
    let p2 = a2.value * b2.value;
    let value = i() * PI * PI * (e1 * p1 - e2 * p2);
    let prod_err = |x: &Approx, y: &Approx| x.err * y.value.norm() + y.err * x.value.norm();
    let err = PI * PI * (e1.norm() * prod_err(&a1, &b1) + e2.norm() * prod_err(&a2, &b2));
    let regime = combine(combine(a1.regime, b1.regime), combine(a2.regime, b2.regime));
    Ok(KernelValue {
        value,
        regime,
        est_abs_err: err,
    })
}

fn mutate(s: SpectralParameter, k: KernelValue) -> KernelValue {
    if hooks::active(Mutation::KernelAsymmetry) {
        KernelValue { value: k.value * (1.0 + s.s), ..k }
    } else {
        k
    }
}

pub fn kernel_real(s: SpectralParameter, x: f64) -> Result<KernelValue> {
    Ok(mutate(s, kernel_real_unhooked(s, x)?))
}

pub fn kernel_complex(s: SpectralParameter, z: Complex64) -> Result<KernelValue> {
    Ok(mutate(s, kernel_complex_unhooked(s, z)?))
}

/// Distance from 2s to the nearest integer.
pub fn order_integer_distance(s: Complex64) -> f64 {
    let nu = s * 2.0;
    (nu - nu.re.round()).norm()
}

/// J-difference form π/sin(πs)·(J_{−2s} − J_{2s}) (x > 0) or the I analogue (x < 0).
/// Undefined when 2s is an integer.
pub fn kernel_real_jform(s: SpectralParameter, x: f64) -> Result<Complex64> {
    if x == 0.0 {
        return Err(Error::ZeroArgument);
    }
    let s = s.s;
    let sn = (s * PI).sin();
    if order_integer_distance(s) == 0.0 {
        return Err(Error::DomainError("J-difference form needs 2s not an integer".into()));
    }
    let nu = s * 2.0;
    let u = 4.0 * PI * x.abs().sqrt();
    let diff = if x > 0.0 {
        let uc = Complex64::new(u, 0.0);
        bessel::bessel_j(-nu, uc)? - bessel::bessel_j(nu, uc)?
    } else {
        bessel::bessel_i(-nu, u)? - bessel::bessel_i(nu, u)?
    };
    Ok(PI / sn * diff)
}

/// J-product form 2π²/sin(2πs)·(J_{−2s}(u)J_{−2s}(ū) − J_{2s}(u)J_{2s}(ū)).
pub fn kernel_complex_jform(s: SpectralParameter, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroArgument);
    }
    let s = s.s;
    if order_integer_distance(s) == 0.0 {
        return Err(Error::DomainError("J-product form needs 2s not an integer".into()));
    }
    let nu = s * 2.0;
    let u = z.sqrt() * (4.0 * PI);
    let ub = u.conj();
    let minus = bessel::bessel_j(-nu, u)? * bessel::bessel_j(-nu, ub)?;
    let plus = bessel::bessel_j(nu, u)? * bessel::bessel_j(nu, ub)?;
    Ok(2.0 * PI * PI / (s * 2.0 * PI).sin() * (minus - plus))
}

/// Complex kernel with the J-product cross-check applied where it is meaningful
/// (2s at least 1e-4 from an integer and |u| small enough that the J products
/// do not cancel catastrophically).
pub fn kernel_complex_checked(s: SpectralParameter, z: Complex64) -> Result<KernelValue> {
    let k = kernel_complex(s, z)?;
    let u = 4.0 * PI * z.norm().sqrt();
    let conditioning = (2.0 * (z.sqrt() * 4.0 * PI).im.abs()).exp();
    if order_integer_distance(s.s) >= 1e-4 && u <= 40.0 && conditioning < 1e4 {
        let j = kernel_complex_jform(s, z)?;
        let rel = (j - k.value).norm() / k.value.norm().max(1e-300);
        if rel > 1e-8 {
            return Err(Error::DomainError(format!(
                "kernel representations disagree at s={}, z={z}: relative difference {rel:e}",
                s.s
            )));
        }
    }
    Ok(k)
}

/// ∏_v B_s(y_v) over the archimedean places, in embedding order.
pub fn kernel_product(places: &[Place], s: SpectralParameter, y: &[Complex64]) -> Result<Complex64> {
    if places.len() != y.len() {
        return Err(Error::DomainError(format!(
            "expected {} coordinates, got {}",
            places.len(),
            y.len()
        )));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for (idx, (place, yv)) in places.iter().zip(y).enumerate() {
        if *yv == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroCoordinate(idx));
        }
        let v = match place {
            Place::Real => kernel_real(s, yv.re)?.value,
            Place::Complex => kernel_complex(s, *yv)?.value,
        };
        acc *= v;
    }
    Ok(acc)
}
