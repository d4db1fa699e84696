//! Closed forms of the damped Mellin–Fourier integrals
//!
//! real:    ∫_0^∞ x^{2ν−1} e^{−2πεx} (e(−xy) + e(xy)) dx
//! complex: 2 ∫_0^∞ ∫_0^{2π} x^{2ν−1} e^{−4πεx} e(−2xy cos(φ+ω)) dφ dx

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{gamma_fn, rgamma, Place};
use crate::error::{Error, Result};

/// Gauss hypergeometric ₂F₁(a, b; c; x) for real 0 ≤ x ≤ 1.
///
/// Series for x < 1; Gauss's closed form at x = 1 (needs Re(c − a − b) > 0).
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::DomainError(format!("2F1 argument {x} outside [0, 1]")));
    }
    if x == 1.0 {
        if (c - a - b).re <= 0.0 {
            return Err(Error::DomainError("2F1 diverges at 1".into()));
        }
        return Ok(gamma_fn(c)? * gamma_fn(c - a - b)? * rgamma(c - a) * rgamma(c - b));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..1_000_000u32 {
        let kf = k as f64;
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() && k > 2 {
            return Ok(sum);
        }
    }
    Err(Error::BudgetExceeded("2F1 series did not converge".into()))
}

/// Closed-form value of the damped gamma integral at the given place.
pub fn gamma_integral_oracle(nu: Complex64, y: f64, eps: f64, place: Place) -> Result<Complex64> {
    if nu.re <= 0.0 || !(eps > 0.0) || !(y > 0.0) {
        return Err(Error::DomainError(format!(
            "gamma integral needs Re ν > 0, y > 0, ε > 0 (got ν={nu}, y={y}, ε={eps})"
        )));
    }
    let r2 = y * y + eps * eps;
    let g = gamma_fn(nu * 2.0)?;
    match place {
        Place::Real => {
            let ang = (nu * 2.0 * (y / eps).atan()).cos();
            Ok(2.0 * g * ang / (Complex64::new(2.0 * PI, 0.0).powc(nu * 2.0) * Complex64::new(r2, 0.0).powc(nu)))
        }
        Place::Complex => {
            let f = hyp2f1(nu, 0.5 - nu, Complex64::new(1.0, 0.0), y * y / r2)?;
            Ok(g * f
                / (Complex64::new(4.0 * PI, 0.0).powc(nu * 2.0 - 1.0) * Complex64::new(r2, 0.0).powc(nu)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;

    #[test]
    fn gauss_value_at_one() {
        // ₂F₁(ν, ½−ν; 1; 1) = √π / (Γ(1−ν) Γ(½+ν))
        let nu = Complex64::new(0.3, 0.0);
        let v = hyp2f1(nu, 0.5 - nu, Complex64::new(1.0, 0.0), 1.0).unwrap();
        let e = PI.sqrt() * rgamma(1.0 - nu) * rgamma(0.5 + nu);
        assert!((v - e).norm() < 1e-13);
    }

    #[test]
    fn elementary_hypergeometric() {
        // ₂F₁(1, 1; 2; x) = −ln(1−x)/x
        let one = Complex64::new(1.0, 0.0);
        let v = hyp2f1(one, one, one * 2.0, 0.5).unwrap();
        assert!((v.re - 2.0 * 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn real_form_large_eps_shape() {
        let nu = Complex64::new(0.25, 0.0);
        let eps = 1e4;
        let v = gamma_integral_oracle(nu, 1.0, eps, Place::Real).unwrap();
        let lead = 2.0 * PI.sqrt() / ((2.0 * PI).sqrt() * eps.sqrt());
        assert!((v.re / lead - 1.0).abs() < 1e-6);
    }

    #[test]
    fn real_form_matches_quadrature() {
        let nu = 0.3;
        let (y, eps) = (1.0, 0.5);
        // x = t^{1/(2ν)} removes the endpoint singularity: x^{2ν−1} dx = dt/(2ν)
        let tmax = (40.0f64 / eps).powf(2.0 * nu);
        let r = quad::adaptive(
            |t| {
                let x = t.powf(1.0 / (2.0 * nu));
                Complex64::new((-2.0 * PI * eps * x).exp() * 2.0 * (2.0 * PI * x * y).cos() / (2.0 * nu), 0.0)
            },
            &[0.0, tmax],
            quad::AdaptiveOptions { rel_tol: 1e-13, ..Default::default() },
        )
        .unwrap();
        let c = gamma_integral_oracle(Complex64::new(nu, 0.0), y, eps, Place::Real).unwrap();
        assert!((r.value - c).norm() < 1e-10, "{} vs {c}", r.value);
    }

    #[test]
    fn domain_errors() {
        assert!(gamma_integral_oracle(Complex64::new(-0.1, 0.0), 1.0, 1.0, Place::Real).is_err());
        assert!(gamma_integral_oracle(Complex64::new(0.1, 0.0), 1.0, 0.0, Place::Complex).is_err());
    }
}
