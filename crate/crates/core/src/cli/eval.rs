//! `vnf eval <subject>`: single values and small grids from each module.

use num_complex::Complex64;

use super::output::Table;
use crate::error::{Error, Result};
use crate::hankel::{hankel_transform, mellin, HankelPlan, WeightSpec};
use crate::numberfield::character::character_support;
use crate::numberfield::{
    dual_data, global_character, parse_element, parse_field, parse_ideal, primes_above, psi_infty, psi_v, tau_s,
    FieldDescriptor, PrimeIdealData, PrimeKind,
};
use crate::specfun::{kernel_complex, kernel_real, Place, SpectralParameter};
use crate::zeta::{dedekind_zeta, laurent_at_1};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Subject {
    Kernel,
    Hankel,
    Mellin,
    Zeta,
    Laurent,
    Tau,
    Dualdata,
    Psi,
}

/// Inputs shared by all subjects; each subject reads what it needs.
#[derive(Debug, Clone)]
pub struct EvalInput {
    pub field: String,
    pub ideal: String,
    pub zeta: String,
    pub s: Complex64,
    pub weight: Option<WeightSpec>,
    pub place: Place,
    pub x: Vec<f64>,
    pub x_im: Vec<f64>,
    pub y: Vec<f64>,
    pub y_im: Vec<f64>,
    pub direct: bool,
    pub element: Option<String>,
    pub prime: Option<u64>,
}

impl Default for EvalInput {
    fn default() -> Self {
        Self {
            field: "Q".into(),
            ideal: "(1)".into(),
            zeta: "0".into(),
            s: Complex64::new(0.0, 0.0),
            weight: None,
            place: Place::Real,
            x: Vec::new(),
            x_im: Vec::new(),
            y: Vec::new(),
            y_im: Vec::new(),
            direct: false,
            element: None,
            prime: None,
        }
    }
}

pub fn prime_label(v: &PrimeIdealData) -> String {
    match (v.kind, v.root) {
        (PrimeKind::Rational, _) => format!("({})", v.p),
        (PrimeKind::Inert, _) | (_, None) => format!("({})", v.p),
        (_, Some(r)) => format!("({},w-{r})", v.p),
    }
}

fn or_one(v: &[f64]) -> Vec<f64> {
    if v.is_empty() {
        vec![1.0]
    } else {
        v.to_vec()
    }
}

fn imag_part(v: &[f64], i: usize) -> f64 {
    v.get(i).copied().unwrap_or(0.0)
}

fn weight_for(input: &EvalInput, field: FieldDescriptor) -> Result<WeightSpec> {
    let w = input.weight.clone().unwrap_or_else(|| WeightSpec::standard(&field.places()));
    w.check_places(&field.places())?;
    Ok(w)
}

/// Points y for the Hankel transform: one per value over fields with one
/// place, consecutive pairs over real quadratic fields.
fn hankel_points(input: &EvalInput, field: FieldDescriptor) -> Result<Vec<Vec<Complex64>>> {
    let ys = or_one(&input.y);
    match field.places().as_slice() {
        [Place::Real] => Ok(ys.iter().map(|&y| vec![Complex64::new(y, 0.0)]).collect()),
        [Place::Complex] => {
            Ok(ys.iter().enumerate().map(|(i, &y)| vec![Complex64::new(y, imag_part(&input.y_im, i))]).collect())
        }
        _ => {
            if ys.len() % 2 != 0 {
                return Err(Error::DomainError("a real quadratic field takes --y values in pairs".into()));
            }
            Ok(ys.chunks(2).map(|c| vec![Complex64::new(c[0], 0.0), Complex64::new(c[1], 0.0)]).collect())
        }
    }
}

pub fn eval(subject: Subject, input: &EvalInput) -> Result<Table> {
    let field = parse_field(&input.field)?;
    let s = SpectralParameter::new(input.s)?;
    match subject {
        Subject::Kernel => {
            let mut t = Table::new(&["x_re", "x_im", "re", "im", "est_abs_err", "regime"]);
            for (i, &x) in or_one(&input.x).iter().enumerate() {
                let xi = imag_part(&input.x_im, i);
                let k = match input.place {
                    Place::Real => {
                        if xi != 0.0 {
                            return Err(Error::DomainError("real place takes real arguments".into()));
                        }
                        kernel_real(s, x)?
                    }
                    Place::Complex => kernel_complex(s, Complex64::new(x, xi))?,
                };
                t.push(vec![x.into(), xi.into(), k.value.re.into(), k.value.im.into(), k.est_abs_err.into(), format!("{:?}", k.regime).into()]);
            }
            Ok(t)
        }
        Subject::Hankel => {
            let w = weight_for(input, field)?;
            let pts = hankel_points(input, field)?;
            let mut t = Table::new(&["y", "re", "im", "est_abs_err", "method"]);
            let plan = if input.direct { None } else { Some(HankelPlan::new(&w, s)?) };
            for y in pts {
                let r = match &plan {
                    Some(p) => p.eval(&y)?,
                    None => hankel_transform(&w, s, &y)?,
                };
                let label: Vec<String> = y.iter().map(|z| if z.im == 0.0 { format!("{}", z.re) } else { format!("{z}") }).collect();
                let method = if plan.is_some() { "barnes" } else { "direct" };
                t.push(vec![label.join(";").into(), r.value.re.into(), r.value.im.into(), r.est_abs_err.into(), method.into()]);
            }
            Ok(t)
        }
        Subject::Mellin => {
            let w = weight_for(input, field)?;
            let r = mellin(&w, input.s)?;
            let mut t = Table::new(&["s_re", "s_im", "re", "im", "est_abs_err"]);
            t.push(vec![input.s.re.into(), input.s.im.into(), r.value.re.into(), r.value.im.into(), r.est_abs_err.into()]);
            Ok(t)
        }
        Subject::Zeta => {
            let z = dedekind_zeta(field, input.s)?;
            let mut t = Table::new(&["field", "s_re", "s_im", "re", "im"]);
            t.push(vec![field.to_string().into(), input.s.re.into(), input.s.im.into(), z.re.into(), z.im.into()]);
            Ok(t)
        }
        Subject::Laurent => {
            let l = laurent_at_1(field)?;
            let mut t = Table::new(&["field", "residue", "constant"]);
            t.push(vec![field.to_string().into(), l.residue.into(), l.constant.into()]);
            Ok(t)
        }
        Subject::Tau => {
            let ideal = parse_ideal(field, &input.ideal)?;
            let v = tau_s(&ideal, input.s)?;
            let mut t = Table::new(&["ideal", "s_re", "s_im", "re", "im"]);
            t.push(vec![ideal.to_string().into(), input.s.re.into(), input.s.im.into(), v.re.into(), v.im.into()]);
            Ok(t)
        }
        Subject::Dualdata => {
            let ideal = parse_ideal(field, &input.ideal)?;
            let zeta = parse_element(field, &input.zeta)?;
            let d = dual_data(&zeta, &ideal)?;
            let s_set: Vec<String> = d.s_set.iter().map(prime_label).collect();
            let mut t = Table::new(&["zeta", "a_ideal", "s_set", "b_ideal", "norm_b"]);
            t.push(vec![
                zeta.to_string().into(),
                ideal.to_string().into(),
                s_set.join(" ").into(),
                d.b_ideal.to_string().into(),
                crate::numberfield::primes::norm_f64(&d.b_ideal).into(),
            ]);
            Ok(t)
        }
        Subject::Psi => {
            let text = input.element.as_deref().ok_or_else(|| Error::Config("psi needs --element".into()))?;
            let x = parse_element(field, text)?;
            let places = match input.prime {
                Some(p) => primes_above(field, p),
                None => character_support(field, &x)?,
            };
            let mut t = Table::new(&["place", "re", "im"]);
            let z = psi_infty(field, &x);
            t.push(vec!["infinity".into(), z.re.into(), z.im.into()]);
            for v in &places {
                let z = psi_v(field, &x, v)?;
                t.push(vec![prime_label(v).into(), z.re.into(), z.im.into()]);
            }
            let g = global_character(field, &x)?;
            t.push(vec!["global".into(), g.re.into(), g.im.into()]);
            Ok(t)
        }
    }
}
