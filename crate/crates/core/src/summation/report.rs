use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dual::dual_sum_partial;
use super::lhs::lhs_sum;
use super::zeroth::zeroth_terms;
use super::{ProblemInstance, TauContext};
use crate::error::Result;
use crate::hankel::HankelPlan;
use crate::numberfield::character::psi_s;
use crate::numberfield::primes::{different, dual_data, norm_f64, PrimeIdealData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SRegime {
    GenericS,
    SNearZeroLimit,
}

/// Wall-clock milliseconds per stage; zero under the reproducible flag.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub lhs_ms: f64,
    pub zeroth_ms: f64,
    pub plan_ms: f64,
    pub dual_ms: f64,
    pub total_ms: f64,
}

/// The first dual-lattice basis element with its ψ_S phase and τ_s value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualProbe {
    pub gamma: String,
    pub psi_s: Complex64,
    pub tau: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub field: String,
    pub a_ideal: String,
    pub zeta: String,
    pub s: Complex64,
    pub tol: f64,
    pub lhs: Complex64,
    pub rhs_zeroth: Complex64,
    pub rhs_dual: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub lhs_terms: usize,
    pub dual_terms: usize,
    pub radius_used: f64,
    pub tail_bound: f64,
    pub eval_err: f64,
    pub regime: SRegime,
    /// ζ ≠ 0 and 𝔞 ≠ (1).
    pub extended: bool,
    pub b_ideal: String,
    pub norm_b: f64,
    pub s_set: Vec<PrimeIdealData>,
    pub dual_probe: Option<DualProbe>,
    pub budget_exceeded: bool,
    pub passed: bool,
    pub error: Option<String>,
    pub timings: Timings,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn probe(p: &ProblemInstance, bd: &crate::numberfield::FractionalIdeal, s_set: &[PrimeIdealData]) -> Result<DualProbe> {
    let gamma = bd.inverse()?.basis()[0].clone();
    let psi = if s_set.is_empty() {
        Complex64::new(1.0, 0.0)
    } else {
        psi_s(p.field, &p.field.div(&gamma, &p.zeta_shift)?, s_set)?
    };
    let tau = TauContext::new(bd, p.s.s)?.tau(&gamma)?;
    Ok(DualProbe { gamma: gamma.to_string(), psi_s: psi, tau })
}

/// Computes both sides and compares them. A dual sum stopped by max_radius
/// still yields a report, with `budget_exceeded` set.
pub fn verify(p: &ProblemInstance) -> Result<VerificationReport> {
    p.validate()?;
    let t_all = Instant::now();
    let dual = dual_data(&p.zeta_shift, &p.a_ideal)?;
    let bd = dual.b_ideal.mul(&different(p.field))?;

    let t = Instant::now();
    let (lhs, lhs_terms) = lhs_sum(p)?;
    let lhs_ms = ms(t);

    let t = Instant::now();
    let zeroth = zeroth_terms(p, &dual)?;
    let zeroth_ms = ms(t);

    let t = Instant::now();
    let plan = HankelPlan::new(&p.w, p.s)?;
    let plan_ms = ms(t);

    let t = Instant::now();
    let target = p.tol / 10.0 * lhs.norm().max(zeroth.value.norm());
    let ds = dual_sum_partial(p, &dual, &plan, target)?;
    let dual_ms = ms(t);

    let rhs = zeroth.value + ds.value;
    let abs_err = (lhs - rhs).norm();
    let rel_err = abs_err / lhs.norm().max(rhs.norm()).max(1e-300);
    let error = ds.exceeded.then(|| {
        format!("dual sum stopped at max_radius = {} with tail bound {:e}", p.max_radius, ds.tail_bound)
    });
    Ok(VerificationReport {
        field: p.field.to_string(),
        a_ideal: p.a_ideal.to_string(),
        zeta: p.zeta_shift.to_string(),
        s: p.s.s,
        tol: p.tol,
        lhs,
        rhs_zeroth: zeroth.value,
        rhs_dual: ds.value,
        rhs,
        abs_err,
        rel_err,
        lhs_terms,
        dual_terms: ds.terms,
        radius_used: ds.radius_used,
        tail_bound: ds.tail_bound,
        eval_err: ds.eval_err,
        regime: zeroth.regime,
        extended: p.is_extended(),
        b_ideal: dual.b_ideal.to_string(),
        norm_b: norm_f64(&dual.b_ideal),
        s_set: dual.s_set.clone(),
        dual_probe: Some(probe(p, &bd, &dual.s_set)?),
        budget_exceeded: ds.exceeded,
        passed: !ds.exceeded && rel_err <= p.tol,
        error,
        timings: Timings { lhs_ms, zeroth_ms, plan_ms, dual_ms, total_ms: ms(t_all) },
    })
}
