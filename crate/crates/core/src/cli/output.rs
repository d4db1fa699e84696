//! Tables and report rendering. Numbers are printed with 15 significant digits.

use num_complex::Complex64;
use serde_json::Value;

use super::config::OutputFormat;
use crate::summation::VerificationReport;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => num(*x),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

pub fn num(x: f64) -> String {
    format!("{x:.14e}")
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect()))
                    .collect();
                serde_json::to_string_pretty(&rows).expect("table serializes") + "\n"
            }
            OutputFormat::Csv => {
                let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
                csv_string(&self.columns, &rows)
            }
            OutputFormat::Text => {
                let mut out = String::new();
                for r in &self.rows {
                    let parts: Vec<String> = self.columns.iter().zip(r).map(|(c, v)| format!("{c}={}", v.render())).collect();
                    out += &parts.join("  ");
                    out.push('\n');
                }
                out
            }
        }
    }
}

fn csv_string(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        // complex numbers serialize as [re, im]
        Value::Array(a) if a.len() == 2 && a.iter().all(Value::is_number) => {
            out.push((format!("{prefix}_re"), num(a[0].as_f64().unwrap_or(f64::NAN))));
            out.push((format!("{prefix}_im"), num(a[1].as_f64().unwrap_or(f64::NAN))));
        }
        Value::Number(n) => out.push((prefix.into(), n.as_f64().map(num).unwrap_or_else(|| n.to_string()))),
        Value::String(s) => out.push((prefix.into(), s.clone())),
        Value::Bool(b) => out.push((prefix.into(), b.to_string())),
        Value::Null => out.push((prefix.into(), String::new())),
        Value::Array(_) => out.push((prefix.into(), v.to_string())),
    }
}

fn cplx(z: Complex64) -> String {
    format!("{} {} {}i", num(z.re), if z.im < 0.0 { '-' } else { '+' }, num(z.im.abs()))
}

pub fn render_report(r: &VerificationReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
        OutputFormat::Csv => {
            let mut cols = Vec::new();
            flatten("", &serde_json::to_value(r).expect("report serializes"), &mut cols);
            let (h, v): (Vec<String>, Vec<String>) = cols.into_iter().unzip();
            csv_string(&h, &[v])
        }
        OutputFormat::Text => {
            let mut t = String::new();
            t += &format!("field {}  ideal {}  zeta {}  s = {}\n", r.field, r.a_ideal, r.zeta, cplx(r.s));
            t += &format!("lhs          {}  ({} terms)\n", cplx(r.lhs), r.lhs_terms);
            t += &format!("rhs zeroth   {}  ({:?})\n", cplx(r.rhs_zeroth), r.regime);
            t += &format!("rhs dual     {}  ({} terms, radius {})\n", cplx(r.rhs_dual), r.dual_terms, r.radius_used);
            t += &format!("rel_err      {}  (tol {})\n", num(r.rel_err), r.tol);
            t += &format!("tail bound   {}  eval err {}\n", num(r.tail_bound), num(r.eval_err));
            t += &format!("b = {}  N(b) = {}  |S| = {}\n", r.b_ideal, r.norm_b, r.s_set.len());
            if r.extended {
                t += "extended instance (zeta != 0 and a != (1))\n";
            }
            if let Some(e) = &r.error {
                t += &format!("error: {e}\n");
            }
            t += if r.passed { "PASS\n" } else { "FAIL\n" };
            t
        }
    }
}

