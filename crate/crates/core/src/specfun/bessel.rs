//! Bessel and Hankel functions of complex order.
//!
//! Evaluation regimes, by |u|:
//!
//! * `|u| < SERIES_RADIUS` (and J up to `J_SERIES_RADIUS`): ascending series,
//!   summed in double-double so alternating cancellation is harmless.
//! * moderate `|u|`: Hankel's integral along a rotated ray, by exp-sinh
//!   quadrature; valid for every order once `Re ν ≥ 0`.
//! * `|u| ≥ asymptotic_radius(ν)`: Hankel's asymptotic expansion, truncated
//!   at the smallest term.
//!
//! Formulas that divide by `sin(νπ)` are evaluated at near-integer orders by
//! averaging over a small circle in the order variable (Cauchy's formula),
//! which yields the limiting value without special integer-order series.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::dd::Cdd;
use super::gamma::rgamma;
use crate::error::{Error, Result};
use crate::quad;

/// Largest supported |ν|.
pub const ORDER_ENVELOPE: f64 = 4.0;
/// Below this modulus Hankel and Y/K values come from the ascending series.
pub const SERIES_RADIUS: f64 = 2.0;
/// J uses its ascending series up to this modulus.
pub const J_SERIES_RADIUS: f64 = 25.0;
/// Orders closer than this to an integer use the circle average.
pub const NEAR_INTEGER: f64 = 0.05;
const CIRCLE_RADIUS: f64 = 0.25;
const CIRCLE_POINTS: usize = 32;

/// Radius beyond which the Hankel asymptotic expansion is used.
pub fn asymptotic_radius(nu: Complex64) -> f64 {
    18.0 + 2.0 * nu.norm_sqr()
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Series,
    Integral,
    Asymptotic,
    LimitForm,
}

/// A value together with an error estimate and the regime used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approx {
    pub value: Complex64,
    pub err: f64,
    pub regime: Regime,
}

impl Approx {
    fn new(value: Complex64, err: f64, regime: Regime) -> Self {
        Self { value, err, regime }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check_order(nu: Complex64) -> Result<()> {
    if !(nu.re.is_finite() && nu.im.is_finite()) || nu.norm() > ORDER_ENVELOPE + 1e-12 {
        return Err(Error::OrderOutOfEnvelope(nu.norm()));
    }
    Ok(())
}

fn check_arg(u: Complex64) -> Result<()> {
    if u == c(0.0, 0.0) || !(u.re.is_finite() && u.im.is_finite()) {
        return Err(Error::DomainError(format!("argument {u} must be finite and nonzero")));
    }
    Ok(())
}

fn check_right_half(u: Complex64) -> Result<()> {
    check_arg(u)?;
    if u.re < -1e-15 * u.norm() {
        return Err(Error::DomainError(format!(
            "argument {u} must satisfy Re u >= 0"
        )));
    }
    Ok(())
}

fn check_positive(x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::DomainError(format!("argument {x} must be real and positive")));
    }
    Ok(())
}

fn nearest_integer(nu: Complex64) -> (f64, f64) {
    let n = nu.re.round();
    (n, (nu - n).norm())
}

/// Cauchy average of an entire function of the order around the nearest integer.
fn circle_average<F>(nu: Complex64, f: F) -> Approx
where
    F: Fn(Complex64) -> Approx,
{
    let (n, _) = nearest_integer(nu);
    let mut acc = c(0.0, 0.0);
    let mut err = 0.0;
    for j in 0..CIRCLE_POINTS {
        let theta = 2.0 * PI * (j as f64 + 0.5) / CIRCLE_POINTS as f64;
        let offset = Complex64::from_polar(CIRCLE_RADIUS, theta);
        let node = n + offset;
        let v = f(node);
        let weight = offset / (node - nu);
        acc += v.value * weight;
        err = f64::max(err, v.err * weight.norm());
    }
    Approx::new(acc / CIRCLE_POINTS as f64, err, Regime::LimitForm)
}

/// Ascending series Σ (∓1)^k (u/2)^{ν+2k} / (k! Γ(ν+k+1)); `sign = -1` gives J, `+1` gives I.
fn ascending_series(nu: Complex64, u: Complex64, sign: f64) -> Approx {
    let half = u * 0.5;
    let half_dd = Cdd::from_c64(half);
    let q = half_dd * half_dd * sign;
    let nu_dd = Cdd::from_c64(nu);
    let shifted = |j: usize| nu_dd + Cdd::from_c64(c(j as f64, 0.0));
    // k0: first index with Re(ν + k0 + 1) >= 1, so 1/Γ is taken where it is tame
    let k0 = if nu.re < 0.0 { (-nu.re).ceil() as usize } else { 0 };
    let prefactor = half.powc(nu) * rgamma(nu + (k0 as f64) + 1.0);
    let mut terms_max = 0.0f64;
    let mut sum = Cdd::ZERO;
    // a_k for k <= k0: q^k / k! * Π_{j=k+1}^{k0} (ν + j)
    let mut qk = Cdd::one();
    let mut fact = 1.0;
    let mut last = Cdd::one();
    for k in 0..=k0 {
        if k > 0 {
            qk = qk * q;
            fact *= k as f64;
        }
        let mut prod = Cdd::one();
        for j in (k + 1)..=k0 {
            prod = prod * shifted(j);
        }
        let a = (qk * prod).div(Cdd::from_c64(c(fact, 0.0)));
        terms_max = terms_max.max(a.norm_f64());
        sum = sum + a;
        last = a;
    }
    let peak = q.norm_f64().sqrt();
    let mut k = k0;
    loop {
        k += 1;
        let den = shifted(k) * k as f64;
        last = (last * q).div(den);
        let mag = last.norm_f64();
        terms_max = terms_max.max(mag);
        sum = sum + last;
        if (k as f64) > peak + 2.0 && mag <= 1e-34 * terms_max.max(1e-300) {
            break;
        }
        if k > 400 {
            break;
        }
    }
    let value = prefactor * sum.to_c64();
    let err = 4e-16 * value.norm() + 1e-30 * prefactor.norm() * terms_max;
    Approx::new(value, err, Regime::Series)
}

fn hankel_coefficient_terms(nu: Complex64, u: Complex64, rotation: Complex64) -> (Complex64, f64) {
    // Σ_k rotation^k a_k(ν) / u^k with a_k = Π (4ν² − (2j−1)²) / (k! 8^k),
    // truncated at the smallest term.
    let mu = nu * nu * 4.0;
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    let mut prev_mag = f64::INFINITY;
    let mut omitted = 0.0;
    for k in 1..80 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term = term * (mu - odd * odd) * rotation / (kf * 8.0 * u);
        let mag = term.norm();
        if mag > prev_mag && k > 2 {
            omitted = prev_mag;
            break;
        }
        sum += term;
        prev_mag = mag;
        omitted = mag;
        if mag < 1e-17 * sum.norm() {
            break;
        }
    }
    (sum, omitted)
}

/// Hankel asymptotic expansion; `kind` 1 or 2.
fn hankel_asymptotic(kind: u8, nu: Complex64, u: Complex64) -> Approx {
    let i = c(0.0, 1.0);
    let phase = u - nu * (PI / 2.0) - PI / 4.0;
    let pref = (c(2.0 / PI, 0.0) / u).sqrt();
    let (rot, exp) = if kind == 1 {
        (i, (i * phase).exp())
    } else {
        (-i, (-i * phase).exp())
    };
    let (sum, omitted) = hankel_coefficient_terms(nu, u, rot);
    let value = pref * exp * sum;
    let err = (pref * exp).norm() * omitted + 1e-16 * value.norm();
    Approx::new(value, err, Regime::Asymptotic)
}

/// Hankel's integral along a ray rotated by ∓π/4; requires Re ν ≥ 0.
fn hankel_integral(kind: u8, nu: Complex64, u: Complex64) -> Approx {
    let i = c(0.0, 1.0);
    let sigma = if kind == 1 { 1.0 } else { -1.0 };
    let phase = u - nu * (PI / 2.0) - PI / 4.0;
    let pref = (c(2.0 / PI, 0.0) / u).sqrt() * (i * sigma * phase).exp() * rgamma(nu + 0.5);
    let rot = Complex64::from_polar(1.0, -sigma * PI / 4.0);
    let expo = nu - 0.5;
    let coeff = i * sigma / (u * 2.0);
    let integral = quad::exp_sinh(
        |tau| {
            let t = rot * tau;
            (-t).exp() * t.powc(expo) * (c(1.0, 0.0) + coeff * t).powc(expo) * rot
        },
        1e-15,
    );
    let value = pref * integral;
    Approx::new(value, 1e-14 * value.norm(), Regime::Integral)
}

/// H^{(1)} or H^{(2)} without envelope checks; Re u ≥ 0 assumed.
fn hankel_raw(kind: u8, nu: Complex64, u: Complex64) -> Approx {
    let i = c(0.0, 1.0);
    if nu.re < 0.0 {
        // H1_{−ν} = e^{iπν} H1_ν, H2_{−ν} = e^{−iπν} H2_ν
        let sigma = if kind == 1 { 1.0 } else { -1.0 };
        let factor = (i * sigma * PI * (-nu)).exp();
        let inner = hankel_raw(kind, -nu, u);
        return Approx::new(factor * inner.value, factor.norm() * inner.err, inner.regime);
    }
    let r = u.norm();
    if r < SERIES_RADIUS {
        let (_, dist) = nearest_integer(nu);
        let direct = |nu: Complex64| -> Approx {
            // H1 = (J_{−ν} − e^{−iπν} J_ν)/(i sin νπ), H2 = (J_{−ν} − e^{iπν} J_ν)/(−i sin νπ)
            let sigma = if kind == 1 { 1.0 } else { -1.0 };
            let jm = ascending_series(-nu, u, -1.0);
            let jp = ascending_series(nu, u, -1.0);
            let den = i * sigma * (nu * PI).sin();
            let v = (jm.value - (-i * sigma * PI * nu).exp() * jp.value) / den;
            let e = (jm.err + jp.err * (-i * sigma * PI * nu).exp().norm()) / den.norm();
            Approx::new(v, e, Regime::Series)
        };
        if dist < NEAR_INTEGER {
            return circle_average(nu, direct);
        }
        return direct(nu);
    }
    if r >= asymptotic_radius(nu) {
        return hankel_asymptotic(kind, nu, u);
    }
    hankel_integral(kind, nu, u)
}

fn bessel_j_raw(nu: Complex64, u: Complex64) -> Approx {
    if u.norm() <= J_SERIES_RADIUS || u.re < 0.0 {
        return ascending_series(nu, u, -1.0);
    }
    let h1 = hankel_raw(1, nu, u);
    let h2 = hankel_raw(2, nu, u);
    Approx::new((h1.value + h2.value) * 0.5, 0.5 * (h1.err + h2.err), h1.regime)
}

fn bessel_y_raw(nu: Complex64, x: f64) -> Approx {
    let u = c(x, 0.0);
    if x < SERIES_RADIUS {
        let direct = |nu: Complex64| -> Approx {
            let jm = ascending_series(-nu, u, -1.0);
            let jp = ascending_series(nu, u, -1.0);
            let s = (nu * PI).sin();
            let v = (jp.value * (nu * PI).cos() - jm.value) / s;
            Approx::new(v, (jm.err + jp.err) / s.norm(), Regime::Series)
        };
        let (_, dist) = nearest_integer(nu);
        if dist < NEAR_INTEGER {
            return circle_average(nu, direct);
        }
        return direct(nu);
    }
    let h1 = hankel_raw(1, nu, u);
    let h2 = hankel_raw(2, nu, u);
    Approx::new(
        (h1.value - h2.value) / c(0.0, 2.0),
        0.5 * (h1.err + h2.err),
        h1.regime,
    )
}

fn bessel_k_integral(nu: Complex64, x: f64) -> Approx {
    let pref = (PI / (2.0 * x)).sqrt() * (-x).exp() * rgamma(nu + 0.5);
    let expo = nu - 0.5;
    let integral = quad::exp_sinh(
        |t| {
            let tc = c(t, 0.0);
            (-t).exp() * tc.powc(expo) * (c(1.0, 0.0) + tc / (2.0 * x)).powc(expo)
        },
        1e-15,
    );
    let value = pref * integral;
    Approx::new(value, 1e-14 * value.norm(), Regime::Integral)
}

fn bessel_k_raw(nu: Complex64, x: f64) -> Approx {
    let nu = if nu.re < 0.0 { -nu } else { nu };
    if x < SERIES_RADIUS {
        let u = c(x, 0.0);
        let direct = |nu: Complex64| -> Approx {
            let im = ascending_series(-nu, u, 1.0);
            let ip = ascending_series(nu, u, 1.0);
            let s = (nu * PI).sin();
            let v = (im.value - ip.value) * (PI / 2.0) / s;
            Approx::new(v, (im.err + ip.err) * (PI / 2.0) / s.norm(), Regime::Series)
        };
        let (_, dist) = nearest_integer(nu);
        if dist < NEAR_INTEGER {
            return circle_average(nu, direct);
        }
        return direct(nu);
    }
    if x >= asymptotic_radius(nu) {
        let pref = (PI / (2.0 * x)).sqrt() * (-x).exp();
        let (sum, omitted) = hankel_coefficient_terms(nu, c(x, 0.0), c(1.0, 0.0));
        let value = pref * sum;
        return Approx::new(value, pref * omitted + 1e-16 * value.norm(), Regime::Asymptotic);
    }
    bessel_k_integral(nu, x)
}

/// J_ν(u) with error estimate.
pub fn bessel_j_approx(nu: Complex64, u: Complex64) -> Result<Approx> {
    check_order(nu)?;
    check_arg(u)?;
    Ok(bessel_j_raw(nu, u))
}

/// J_ν(u) for complex order and argument.
pub fn bessel_j(nu: Complex64, u: Complex64) -> Result<Complex64> {
    Ok(bessel_j_approx(nu, u)?.value)
}

/// I_ν(x) for x > 0 (ascending series; intended for moderate x).
pub fn bessel_i(nu: Complex64, x: f64) -> Result<Complex64> {
    check_order(nu)?;
    check_positive(x)?;
    Ok(ascending_series(nu, c(x, 0.0), 1.0).value)
}

pub fn bessel_y_approx(nu: Complex64, x: f64) -> Result<Approx> {
    check_order(nu)?;
    check_positive(x)?;
    Ok(bessel_y_raw(nu, x))
}

/// Y_ν(x) for x > 0.
pub fn bessel_y(nu: Complex64, x: f64) -> Result<Complex64> {
    Ok(bessel_y_approx(nu, x)?.value)
}

pub fn bessel_k_approx(nu: Complex64, x: f64) -> Result<Approx> {
    check_order(nu)?;
    check_positive(x)?;
    Ok(bessel_k_raw(nu, x))
}

/// K_ν(x) for x > 0.
pub fn bessel_k(nu: Complex64, x: f64) -> Result<Complex64> {
    Ok(bessel_k_approx(nu, x)?.value)
}

pub fn hankel_h1_approx(nu: Complex64, u: Complex64) -> Result<Approx> {
    check_order(nu)?;
    check_right_half(u)?;
    Ok(hankel_raw(1, nu, u))
}

pub fn hankel_h2_approx(nu: Complex64, u: Complex64) -> Result<Approx> {
    check_order(nu)?;
    check_right_half(u)?;
    Ok(hankel_raw(2, nu, u))
}

/// H^{(1)}_ν(u) for Re u ≥ 0.
pub fn hankel_h1(nu: Complex64, u: Complex64) -> Result<Complex64> {
    Ok(hankel_h1_approx(nu, u)?.value)
}

/// H^{(2)}_ν(u) for Re u ≥ 0.
pub fn hankel_h2(nu: Complex64, u: Complex64) -> Result<Complex64> {
    Ok(hankel_h2_approx(nu, u)?.value)
}
