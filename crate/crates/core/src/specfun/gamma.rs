//! Complex gamma and log-gamma, plus the archimedean gamma factors.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

// B_{2k} / (2k (2k-1)) for k = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Γ(z) by the Lanczos approximation (g = 7, nine terms) with reflection.
pub fn gamma_fn(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::PoleAtNonPositiveInteger(z.re));
    }
    if z.norm() > 40.0 {
        return Ok(ln_gamma(z)?.exp());
    }
    Ok(lanczos(z))
}

fn lanczos(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Complex64::new(PI, 0.0) / (s * lanczos(Complex64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// Principal-ish ln Γ(z): exponentiating it gives Γ(z); the imaginary part is
/// only determined modulo 2π.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::PoleAtNonPositiveInteger(z.re));
    }
    Ok(ln_gamma_unchecked(z))
}

fn ln_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // ln Γ(z) = ln π − ln sin(πz) − ln Γ(1 − z)
        return Complex64::new(PI.ln(), 0.0)
            - ln_sin_pi(z)
            - ln_gamma_unchecked(Complex64::new(1.0, 0.0) - z);
    }
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < 12.0 {
        shift += z.ln();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        series += p * c;
        p *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}

/// ln sin(πz), stable for large |Im z|.
pub fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 15.0 {
        return (z * PI).sin().ln();
    }
    let i = Complex64::new(0.0, 1.0);
    if z.im > 0.0 {
        // sin(πz) = −e^{−iπz}(1 − e^{2iπz}) / (2i)
        -i * PI * z + (Complex64::new(1.0, 0.0) - (i * 2.0 * PI * z).exp()).ln()
            - Complex64::new(0.0, 2.0).ln()
            + Complex64::new(0.0, PI)
    } else {
        // sin(πz) = e^{iπz}(1 − e^{−2iπz}) / (2i)
        i * PI * z + (Complex64::new(1.0, 0.0) - (-i * 2.0 * PI * z).exp()).ln()
            - Complex64::new(0.0, 2.0).ln()
    }
}

/// ln(1/Γ(z)), finite everywhere (returns −∞ real part at the poles of Γ).
pub fn ln_rgamma(z: Complex64) -> Complex64 {
    if is_pole(z) {
        return Complex64::new(f64::NEG_INFINITY, 0.0);
    }
    -ln_gamma_unchecked(z)
}

/// 1/Γ(z), entire.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_pole(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.norm() > 40.0 {
        return ln_rgamma(z).exp();
    }
    lanczos(z).inv()
}

/// Kind of archimedean place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Place {
    Real,
    Complex,
}

/// γ-factor of a place: π^{−s/2}Γ(s/2) (real) or 2(2π)^{−s}Γ(s) (complex).
pub fn gamma_factor(s: Complex64, place: Place) -> Result<Complex64> {
    match place {
        Place::Real => {
            let g = gamma_fn(s * 0.5).map_err(|_| Error::Pole(format!("real gamma factor at s = {s}")))?;
            Ok(Complex64::new(PI, 0.0).powc(-s * 0.5) * g)
        }
        Place::Complex => {
            let g = gamma_fn(s).map_err(|_| Error::Pole(format!("complex gamma factor at s = {s}")))?;
            Ok(2.0 * Complex64::new(2.0 * PI, 0.0).powc(-s) * g)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn special_values() {
        assert!((gamma_fn(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!((gamma_fn(c(0.5, 0.0)).unwrap() - PI.sqrt()).norm() < 1e-14);
        assert!((gamma_fn(c(6.0, 0.0)).unwrap() - 120.0).norm() < 1e-11);
        assert!(matches!(
            gamma_fn(c(-2.0, 0.0)),
            Err(Error::PoleAtNonPositiveInteger(_))
        ));
    }

    #[test]
    fn euler_product_oracle() {
        // Γ(z) = lim n^z n! / (z(z+1)...(z+n)), accelerated by averaging n and n+1 terms
        let z = c(0.5, 0.5);
        let n = 50_000usize;
        let mut log_prod = z.ln();
        for k in 1..=n {
            log_prod += (z + k as f64).ln() - (k as f64).ln();
        }
        let approx = (z * (n as f64).ln() - log_prod).exp();
        // the Euler product converges like 1 + O(1/n); correct the leading term
        let corrected = approx * (1.0 - z * (z + 1.0) / (2.0 * n as f64)).inv();
        let g = gamma_fn(z).unwrap();
        assert!((g - corrected).norm() / g.norm() < 1e-8, "{g} vs {corrected}");
    }

    #[test]
    fn lanczos_and_stirling_agree() {
        for &(re, im) in &[(0.3, 0.1), (2.5, -3.0), (-1.7, 0.4), (7.0, 11.0), (0.1, 19.0)] {
            let z = c(re, im);
            let a = lanczos(z);
            let b = ln_gamma(z).unwrap().exp();
            assert!((a - b).norm() / a.norm() < 1e-12, "{z}: {a} vs {b}");
        }
    }

    #[test]
    fn large_imaginary_part_log_gamma() {
        // |Γ(1/2 + it)|² = π / cosh(πt)
        let t = 200.0;
        let lg = ln_gamma(c(0.5, t)).unwrap();
        let expected = PI.ln() - (PI * t - 2f64.ln() + (1.0 + (-2.0 * PI * t).exp()).ln());
        assert!((2.0 * lg.re - expected).abs() < 1e-10);
    }

    #[test]
    fn gamma_factor_values() {
        assert!((gamma_factor(c(2.0, 0.0), Place::Real).unwrap() - 1.0 / PI).norm() < 1e-15);
        assert!((gamma_factor(c(1.0, 0.0), Place::Complex).unwrap() - 1.0 / PI).norm() < 1e-15);
        assert!((gamma_factor(c(1.0, 0.0), Place::Real).unwrap() - 1.0).norm() < 1e-14);
    }
}
