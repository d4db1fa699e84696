//! Invariant suites of every module at reduced grid density.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::config::RunConfig;
use super::output::num;
use crate::error::Result;
use crate::hankel::{hankel_transform, HankelPlan, WeightSpec};
use crate::numberfield::{dual_data, global_character, parse_ideal, tau_s, FieldDescriptor, FieldElement, FractionalIdeal};
use crate::specfun::{kernel_complex, kernel_real, SpectralParameter};
use crate::summation::{verify, zeroth_direct, zeroth_limit_path, ProblemInstance, S_SWITCH};
use crate::zeta::{functional_equation_residual, laurent_at_1, EULER_GAMMA};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    /// Largest deviation seen, against `limit`.
    pub worst: f64,
    pub limit: f64,
    pub error: Option<String>,
}

fn fields() -> Vec<FieldDescriptor> {
    let mut v = vec![FieldDescriptor::rational()];
    v.extend([-1, 5, -5, 2, -3].map(|d| FieldDescriptor::quadratic(d).expect("squarefree")));
    v
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A random element with small numerators and denominators.
pub fn random_element(rng: &mut StdRng, field: FieldDescriptor) -> FieldElement {
    let mut q = || {
        let n: i64 = rng.gen_range(-60..=60);
        let d: i64 = rng.gen_range(1..=36);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    };
    loop {
        let a = q();
        let b = if field.is_rational() { BigRational::from_integer(0.into()) } else { q() };
        let x = FieldElement::new(a, b);
        if !x.is_zero() {
            return x;
        }
    }
}

fn character_triviality(seed: u64) -> Result<f64> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for f in fields() {
        for _ in 0..20 {
            let x = random_element(&mut rng, f);
            worst = worst.max((global_character(f, &x)? - 1.0).norm());
        }
    }
    Ok(worst)
}

fn kernel_evenness() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for s in [c(0.1, 0.0), c(0.3, 0.2), c(0.45, 0.0)] {
        let (sp, sm) = (SpectralParameter::new(s)?, SpectralParameter::new(-s)?);
        for x in [0.3, -0.7, 2.5] {
            let (a, b) = (kernel_real(sp, x)?.value, kernel_real(sm, x)?.value);
            worst = worst.max((a - b).norm() / a.norm().max(1.0));
        }
        for z in [c(0.4, 0.3), c(-1.2, 0.5)] {
            let (a, b) = (kernel_complex(sp, z)?.value, kernel_complex(sm, z)?.value);
            worst = worst.max((a - b).norm() / a.norm().max(1.0));
        }
    }
    Ok(worst)
}

fn kernel_reality() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for s in [0.0, 0.2, 0.35] {
        let sp = SpectralParameter::real(s)?;
        for x in [0.2, 1.0, -0.6, 7.0] {
            let v = kernel_real(sp, x)?.value;
            worst = worst.max(v.im.abs() / v.norm().max(1.0));
        }
    }
    Ok(worst)
}

fn functional_equation() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for f in fields() {
        for re in [-0.5, 0.3, 1.7] {
            for im in [0.0, 2.0, 7.5] {
                worst = worst.max(functional_equation_residual(f, c(re, im))?);
            }
        }
    }
    Ok(worst)
}

fn laurent_rational() -> Result<f64> {
    let l = laurent_at_1(FieldDescriptor::rational())?;
    Ok((l.residue - 1.0).abs().max((l.constant - EULER_GAMMA).abs()))
}

fn tau_values() -> Result<f64> {
    let q = FieldDescriptor::rational();
    let g = FieldDescriptor::quadratic(-1)?;
    let s0 = c(0.0, 0.0);
    let mut worst = (tau_s(&parse_ideal(q, "(6)")?, s0)? - 4.0).norm();
    // (5) splits in Z[i]: τ₀ = 4; (3) is inert: τ₀ = 2
    worst = worst.max((tau_s(&parse_ideal(g, "(5)")?, s0)? - 4.0).norm());
    worst = worst.max((tau_s(&parse_ideal(g, "(3)")?, s0)? - 2.0).norm());
    // multiplicativity over coprime ideals at s = 0.3
    let s = c(0.3, 0.1);
    let (a, b) = (parse_ideal(g, "(2+w)")?, parse_ideal(g, "(3)")?);
    let lhs = tau_s(&a.mul(&b)?, s)?;
    let rhs = tau_s(&a, s)? * tau_s(&b, s)?;
    Ok(worst.max((lhs - rhs).norm() / rhs.norm()))
}

fn hankel_paths() -> Result<f64> {
    let w = WeightSpec::real_bump(2.5, 1.5);
    let s = SpectralParameter::real(0.2)?;
    let plan = HankelPlan::new(&w, s)?;
    let mut worst: f64 = 0.0;
    for y in [0.5, 2.7, -1.3] {
        let y = [c(y, 0.0)];
        let a = plan.eval(&y)?.value;
        let b = hankel_transform(&w, s, &y)?.value;
        worst = worst.max((a - b).norm() / b.norm().max(1e-3));
    }
    Ok(worst)
}

fn config_round_trip() -> Result<f64> {
    let cfg = RunConfig { field: "Q(sqrt,-5)".into(), ideal: "(2,1+w)".into(), s_re: 0.25, ..Default::default() };
    let back = RunConfig::from_json(&cfg.to_json())?;
    Ok(if back == cfg && back.to_json() == cfg.to_json() { 0.0 } else { 1.0 })
}

fn classical_identity() -> Result<f64> {
    let q = FieldDescriptor::rational();
    let p = ProblemInstance::new(
        q,
        FractionalIdeal::unit(q),
        q.zero(),
        SpectralParameter::real(0.0)?,
        WeightSpec::real_bump(2.5, 1.5),
        1e-6,
        1e6,
    )?;
    Ok(verify(&p)?.rel_err)
}

fn zeroth_continuity() -> Result<f64> {
    let f = FieldDescriptor::quadratic(5)?;
    let p = ProblemInstance::new(
        f,
        FractionalIdeal::unit(f),
        f.zero(),
        SpectralParameter::real(0.0)?,
        WeightSpec::standard(&f.places()),
        1e-5,
        1e6,
    )?;
    let dual = dual_data(&p.zeta_shift, &p.a_ideal)?;
    let s = c(S_SWITCH, 0.0);
    let a = zeroth_direct(&p, &dual, s)?;
    let b = zeroth_limit_path(&p, &dual, s)?;
    Ok((a - b).norm() / a.norm())
}

pub fn run_suites(seed: u64) -> Vec<SuiteResult> {
    let suites: Vec<(&'static str, f64, Box<dyn Fn() -> Result<f64>>)> = vec![
        ("character triviality", 1e-12, Box::new(move || character_triviality(seed))),
        ("kernel s-evenness", 1e-10, Box::new(kernel_evenness)),
        ("kernel reality", 1e-12, Box::new(kernel_reality)),
        ("zeta functional equation", 1e-9, Box::new(functional_equation)),
        ("laurent data over Q", 1e-12, Box::new(laurent_rational)),
        ("divisor function", 1e-12, Box::new(tau_values)),
        ("hankel barnes vs direct", 1e-8, Box::new(hankel_paths)),
        ("config round trip", 0.0, Box::new(config_round_trip)),
        ("classical identity", 1e-6, Box::new(classical_identity)),
        ("zeroth continuity", 1e-7, Box::new(zeroth_continuity)),
    ];
    suites
        .into_iter()
        .map(|(name, limit, f)| match f() {
            Ok(worst) => SuiteResult { name, passed: worst <= limit, worst, limit, error: None },
            Err(e) => SuiteResult { name, passed: false, worst: f64::NAN, limit, error: Some(e.to_string()) },
        })
        .collect()
}

pub fn summary(results: &[SuiteResult]) -> String {
    let mut out = format!("{:<28} {:<6} {:>22} {:>10}\n", "suite", "status", "worst", "limit");
    for r in results {
        let status = if r.passed { "ok" } else { "FAIL" };
        let worst = match &r.error {
            Some(e) => format!("error: {e}"),
            None => num(r.worst),
        };
        out += &format!("{:<28} {:<6} {:>22} {:>10.0e}\n", r.name, status, worst, r.limit);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    out += &format!("{} suites, {} failed\n", results.len(), failed);
    out
}
