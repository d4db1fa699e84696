//! Riemann, Hurwitz, quadratic Dirichlet and Dedekind zeta functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numberfield::arith::kronecker;
use crate::numberfield::FieldDescriptor;
use crate::specfun::gamma_factor;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

const EM_TERMS: usize = 40;
/// B_2, B_4, …, B_24.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// (e^z − 1)/z, accurate near z = 0.
fn expm1_over(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0
    } else {
        (z.exp() - 1.0) / z
    }
}

/// ζ(s, a) − 1/(s − 1) by Euler–Maclaurin; finite at s = 1.
pub fn hurwitz_zeta_regularized(s: Complex64, a: f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..EM_TERMS {
        sum += (-s * (k as f64 + a).ln()).exp();
    }
    let x = EM_TERMS as f64 + a;
    let l = x.ln();
    // x^{1−s}/(s−1) − 1/(s−1) = −L·(e^{(1−s)L} − 1)/((1−s)L)
    sum += -l * expm1_over((1.0 - s) * l);
    let x_s = (-s * l).exp();
    sum += x_s * 0.5;
    // Σ B_{2j}/(2j)! · s(s+1)…(s+2j−2) · x^{−s−2j+1}
    let mut rising = s;
    let mut pow = x_s / x;
    let mut fact = 2.0;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let jj = j + 1;
        if jj > 1 {
            let k = 2.0 * jj as f64;
            rising = rising * (s + (k - 3.0)) * (s + (k - 2.0));
            fact *= (k - 1.0) * k;
            pow /= x * x;
        }
        sum += rising * pow * (*b / fact);
    }
    sum
}

pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if s == c(1.0) {
        return Err(Error::PoleAtOne);
    }
    Ok(hurwitz_zeta_regularized(s, a) + 1.0 / (s - 1.0))
}

pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

/// ζ(s) − 1/(s − 1).
pub fn riemann_zeta_regularized(s: Complex64) -> Complex64 {
    hurwitz_zeta_regularized(s, 1.0)
}

/// The Kronecker character χ_Δ(n) = (Δ/n) of a fundamental discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticCharacter {
    pub discriminant: i64,
    table: Vec<i8>,
}

impl QuadraticCharacter {
    pub fn new(discriminant: i64) -> Self {
        let q = discriminant.unsigned_abs();
        let table = (0..q).map(|n| kronecker(discriminant, n) as i8).collect();
        Self { discriminant, table }
    }

    pub fn of_field(field: FieldDescriptor) -> Self {
        Self::new(field.discriminant)
    }

    pub fn modulus(&self) -> u64 {
        self.discriminant.unsigned_abs()
    }

    pub fn value(&self, n: u64) -> i32 {
        self.table[(n % self.modulus()) as usize] as i32
    }
}

/// L(s, χ) = q^{−s} Σ_a χ(a) ζ(s, a/q). The poles of the Hurwitz terms cancel
/// for non-trivial χ, so the regularized values are summed.
pub fn dirichlet_l(s: Complex64, chi: &QuadraticCharacter) -> Result<Complex64> {
    let q = chi.modulus();
    if q == 1 {
        return riemann_zeta(s);
    }
    let qf = q as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for a in 1..q {
        let v = chi.value(a);
        if v != 0 {
            sum += hurwitz_zeta_regularized(s, a as f64 / qf) * v as f64;
        }
    }
    Ok(sum * (-s * qf.ln()).exp())
}

pub fn dedekind_zeta(field: FieldDescriptor, s: Complex64) -> Result<Complex64> {
    let z = riemann_zeta(s)?;
    if field.is_rational() {
        return Ok(z);
    }
    Ok(z * dirichlet_l(s, &QuadraticCharacter::of_field(field))?)
}

/// ζ_F(s) − residue/(s − 1), finite at s = 1.
pub fn dedekind_zeta_regularized(field: FieldDescriptor, s: Complex64) -> Result<Complex64> {
    let zr = riemann_zeta_regularized(s);
    if field.is_rational() {
        return Ok(zr);
    }
    let chi = QuadraticCharacter::of_field(field);
    let l = dirichlet_l(s, &chi)?;
    let l1 = dirichlet_l(c(1.0), &chi)?;
    // ζ·L − L(1)/(s−1) = ζ_reg·L + (L(s) − L(1))/(s−1)
    let dq = if (s - 1.0).norm() < 1e-6 {
        l_derivative_at_one(&chi)?
    } else {
        (l - l1) / (s - 1.0)
    };
    Ok(zr * l + dq)
}

/// Residue γ^{(−1)} and constant term γ^{(0)} of ζ_F at s = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaurentData {
    pub residue: f64,
    pub constant: f64,
}

fn l_derivative_at_one(chi: &QuadraticCharacter) -> Result<Complex64> {
    let d = |h: f64| -> Result<Complex64> {
        Ok((dirichlet_l(c(1.0 + h), chi)? - dirichlet_l(c(1.0 - h), chi)?) / (2.0 * h))
    };
    let h = 1e-5;
    Ok((4.0 * d(h / 2.0)? - d(h)?) / 3.0)
}

pub fn laurent_at_1(field: FieldDescriptor) -> Result<LaurentData> {
    if field.is_rational() {
        return Ok(LaurentData { residue: 1.0, constant: EULER_GAMMA });
    }
    let chi = QuadraticCharacter::of_field(field);
    let l1 = dirichlet_l(c(1.0), &chi)?.re;
    let dl = l_derivative_at_one(&chi)?.re;
    Ok(LaurentData { residue: l1, constant: EULER_GAMMA * l1 + dl })
}

/// γ_F(s) = ∏ over archimedean places of the local gamma factor.
pub fn gamma_factor_field(field: FieldDescriptor, s: Complex64) -> Result<Complex64> {
    let mut acc = c(1.0);
    for place in field.places() {
        acc *= gamma_factor(s, place)?;
    }
    Ok(acc)
}

/// Relative mismatch of the completed zeta function Λ(s) = N(𝔇)^{s/2} ζ_F(s) γ_F(s) and Λ(1 − s).
pub fn functional_equation_residual(field: FieldDescriptor, s: Complex64) -> Result<f64> {
    let nd = (field.discriminant.unsigned_abs() as f64).ln();
    let lambda = |s: Complex64| -> Result<Complex64> {
        Ok((s * 0.5 * nd).exp() * dedekind_zeta(field, s)? * gamma_factor_field(field, s)?)
    };
    let lhs = lambda(s)?;
    let rhs = lambda(1.0 - s)?;
    let scale = lhs.norm().max(rhs.norm());
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok((lhs - rhs).norm() / scale)
}

/// Closed-form residue from the class number formula, for test oracles:
/// 2^{r1}(2π)^{r2} h R / (w √|Δ|).
pub fn class_number_residue(field: FieldDescriptor, h: u32, regulator: f64, roots_of_unity: u32) -> f64 {
    let r1 = field.r1 as i32;
    let r2 = field.r2 as i32;
    2f64.powi(r1) * (2.0 * PI).powi(r2) * h as f64 * regulator
        / (roots_of_unity as f64 * (field.discriminant.unsigned_abs() as f64).sqrt())
}
