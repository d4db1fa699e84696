//! The dual sum Σ_{γ∈(𝔟𝔇)⁻¹∖0} ψ_S(γ/ζ) τ_s(γ𝔟𝔇) w̃_s(γ) / √N𝔟.
//!
//! Lattice points are grouped into dyadic cells, one octave 2^i ≤ |γ_v| < 2^{i+1}
//! per archimedean place. Each cell gets an a-priori size estimate
//!
//! ```text
//! est = ∏_v E_v(2^{i_v}) · max(1, vol/covol) · τ̄(ν) / √N𝔟
//! ```
//!
//! where E_v(r) = sup_{|y|≥r} |w̃_v(y)| is read off the tabulated transform
//! (ignoring values within twice the transform's error estimate),
//! vol/covol is the expected point count and τ̄(ν) = 2(1 + log(1+ν))ν^{|σ|}
//! bounds the average of |τ_s| over ideals of norm ≤ ν. Cells are summed in
//! decreasing order of est until the estimates of all remaining cells add up
//! to less than the target. Over ℚ the cells are the shells R/2 < |γ| ≤ R of
//! a doubling radius; over real quadratic fields they follow the hyperbolas
//! |γ₁γ₂| = const, where a sup-norm box would waste most of its points.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ProblemInstance, TauContext};
use crate::error::{Error, Result};
use crate::hankel::HankelPlan;
use crate::numberfield::character::psi_s;
use crate::numberfield::lattice::{lattice_points_embedded, DEFAULT_SCAN_CAP};
use crate::numberfield::primes::{different, norm_f64, DualData};
use crate::numberfield::PlaceRegion;
use crate::specfun::Place;

/// Envelope samples per octave.
const ENV_RES: i32 = 32;
/// Cells stay within |log‖γ_v‖_v| ≤ this, inside the alias-free range of the plan.
const LOG_RANGE: f64 = 35.0;

/// One processed cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShellStat {
    /// Octave index per place.
    pub cell: Vec<i32>,
    pub terms: usize,
    pub sum: Complex64,
    pub abs_sum: f64,
    pub estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualSumResult {
    pub value: Complex64,
    pub terms: usize,
    /// Largest sup-norm |γ_v| reached by a processed cell.
    pub radius_used: f64,
    /// Sum of the estimates of the cells left out.
    pub tail_bound: f64,
    /// Accumulated error estimate of the transform values.
    pub eval_err: f64,
    /// Stopped at max_radius before reaching the target.
    pub exceeded: bool,
    pub shells: Vec<ShellStat>,
}

struct Cell {
    idx: Vec<i32>,
    est: f64,
    radius: f64,
}

fn octave(r: f64) -> i32 {
    let mut i = r.log2().floor() as i32;
    if 2f64.powi(i) > r {
        i -= 1;
    }
    if 2f64.powi(i + 1) <= r {
        i += 1;
    }
    i
}

/// E_v(2^i) for i = −k..=k, as (k, values).
fn envelope(plan: &HankelPlan, place: usize, deg: f64, two_signed: bool) -> Result<(i32, Vec<f64>)> {
    let k = ((LOG_RANGE / (deg * LN_2)).floor() as i32).min(40);
    let n = 2 * k * ENV_RES;
    let mut samples = vec![0.0; (n + 1) as usize];
    for j in 0..=n {
        let y = 2f64.powf((j - k * ENV_RES) as f64 / ENV_RES as f64);
        let mut m: f64 = 0.0;
        for sign in if two_signed { &[1.0, -1.0][..] } else { &[1.0][..] } {
            let r = plan.eval_place(place, Complex64::new(sign * y, 0.0))?;
            // values at the rounding floor carry no signal
            if r.value.norm() > 2.0 * r.est_abs_err {
                m = m.max(r.value.norm() + r.est_abs_err);
            }
        }
        samples[j as usize] = m;
    }
    for j in (0..n as usize).rev() {
        samples[j] = samples[j].max(samples[j + 1]);
    }
    Ok((k, (0..=2 * k).map(|i| samples[(i * ENV_RES) as usize]).collect()))
}

/// Dual sum to an absolute target accuracy, reporting (rather than failing)
/// when max_radius stops it early.
pub fn dual_sum_partial(p: &ProblemInstance, dual: &DualData, plan: &HankelPlan, target: f64) -> Result<DualSumResult> {
    let field = p.field;
    let places = field.places();
    let bd = dual.b_ideal.mul(&different(field))?;
    let lattice = bd.inverse()?;
    let norm_b = norm_f64(&dual.b_ideal);
    let n_lat = norm_f64(&lattice);
    let covol = 0.5f64.powi(field.r2 as i32) * (field.discriminant.unsigned_abs() as f64).sqrt() * n_lat;
    let norm_bd = norm_f64(&bd);
    let sigma = p.s.s.re.abs();

    let degs: Vec<f64> = places.iter().map(|pl| if *pl == Place::Real { 1.0 } else { 2.0 }).collect();
    let envs = places
        .iter()
        .enumerate()
        .map(|(v, pl)| envelope(plan, v, degs[v], *pl == Place::Real))
        .collect::<Result<Vec<_>>>()?;

    // all feasible cells with their estimates
    let mut cells = Vec::new();
    let mut idx: Vec<i32> = envs.iter().map(|(k, _)| -k).collect();
    loop {
        let log_norm_hi: f64 = idx.iter().zip(&degs).map(|(i, d)| d * (*i + 1) as f64 * LN_2).sum();
        if log_norm_hi > n_lat.ln() - 1e-9 {
            let mut bound = 1.0;
            let mut vol = 1.0;
            for (v, &i) in idx.iter().enumerate() {
                let (k, e) = &envs[v];
                bound *= e[(i + k) as usize];
                vol *= if degs[v] == 1.0 { 2.0 * 2f64.powi(i) } else { 3.0 * PI * 4f64.powi(i) };
            }
            let nu = log_norm_hi.exp() * norm_bd;
            let tau_bar = 2.0 * (1.0 + nu.ln_1p()) * nu.powf(sigma);
            let est = bound * (vol / covol).max(1.0) * tau_bar / norm_b.sqrt();
            let radius = idx.iter().map(|&i| 2f64.powi(i + 1)).fold(0.0, f64::max);
            cells.push(Cell { idx: idx.clone(), est, radius });
        }
        // odometer over the index box
        let mut v = 0;
        loop {
            if v == idx.len() {
                break;
            }
            idx[v] += 1;
            if idx[v] < envs[v].0 {
                break;
            }
            idx[v] = -envs[v].0;
            v += 1;
        }
        if v == idx.len() {
            break;
        }
    }
    cells.sort_by(|a, b| b.est.total_cmp(&a.est).then_with(|| a.idx.cmp(&b.idx)));
    // suffix[k] = Σ est over cells k.. (summed small-to-large)
    let mut suffix = vec![0.0; cells.len() + 1];
    for k in (0..cells.len()).rev() {
        suffix[k] = suffix[k + 1] + cells[k].est;
    }
    let mut remaining = suffix[0];

    let ctx = TauContext::new(&bd, p.s.s)?;
    let mut out = DualSumResult {
        value: Complex64::new(0.0, 0.0),
        terms: 0,
        radius_used: 0.0,
        tail_bound: remaining,
        eval_err: 0.0,
        exceeded: false,
        shells: Vec::new(),
    };
    for (k, cell) in cells.iter().enumerate() {
        if remaining <= target {
            break;
        }
        if cell.radius > p.max_radius {
            out.exceeded = true;
            break;
        }
        let region: Vec<PlaceRegion> = cell
            .idx
            .iter()
            .zip(&degs)
            .map(|(&i, &d)| {
                let hi = 2f64.powi(i + 1);
                if d == 1.0 {
                    PlaceRegion::Interval { lo: -hi, hi }
                } else {
                    PlaceRegion::Annulus { r_min: 2f64.powi(i), r_max: hi }
                }
            })
            .collect();
        let pts = match lattice_points_embedded(&lattice, &region, DEFAULT_SCAN_CAP) {
            Err(Error::EnumerationCapExceeded(_)) => {
                out.exceeded = true;
                break;
            }
            r => r?,
        };
        let terms: Vec<(Complex64, f64, f64)> = pts
            .par_iter()
            .filter(|pt| pt.embedding.iter().zip(&cell.idx).all(|(z, &i)| octave(z.norm()) == i))
            .map(|pt| -> Result<(Complex64, f64, f64)> {
                let psi = if dual.s_set.is_empty() {
                    Complex64::new(1.0, 0.0)
                } else {
                    psi_s(field, &field.div(&pt.element, &p.zeta_shift)?, &dual.s_set)?
                };
                let coef = psi * ctx.tau(&pt.element)?;
                let wt = plan.eval(&pt.embedding)?;
                let term = coef * wt.value;
                Ok((term, term.norm(), coef.norm() * wt.est_abs_err))
            })
            .collect::<Result<_>>()?;
        let mut stat = ShellStat { cell: cell.idx.clone(), terms: terms.len(), sum: Complex64::new(0.0, 0.0), abs_sum: 0.0, estimate: cell.est };
        for (t, a, e) in terms {
            stat.sum += t;
            stat.abs_sum += a;
            out.eval_err += e;
        }
        let scale = norm_b.sqrt().recip();
        stat.sum *= scale;
        stat.abs_sum *= scale;
        out.value += stat.sum;
        out.terms += stat.terms;
        out.radius_used = out.radius_used.max(cell.radius);
        remaining = suffix[k + 1];
        out.shells.push(stat);
    }
    out.eval_err /= norm_b.sqrt();
    out.tail_bound = remaining;
    Ok(out)
}

/// Like `dual_sum_partial`, with early stops turned into `TruncationBudgetExceeded`.
pub fn dual_sum(p: &ProblemInstance, dual: &DualData, target: f64) -> Result<DualSumResult> {
    let plan = HankelPlan::new(&p.w, p.s)?;
    let r = dual_sum_partial(p, dual, &plan, target)?;
    if r.exceeded {
        return Err(Error::TruncationBudgetExceeded { radius: p.max_radius, tail_bound: r.tail_bound });
    }
    Ok(r)
}
