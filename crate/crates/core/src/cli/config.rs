use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hankel::WeightSpec;
use crate::numberfield::{parse_element, parse_field, parse_ideal};
use crate::specfun::SpectralParameter;
use crate::summation::ProblemInstance;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

/// Everything a `verify` run needs. Missing optional fields take the
/// defaults of the classical case; a missing weight means the standard
/// weight of the field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub field: String,
    #[serde(default = "unit_ideal")]
    pub ideal: String,
    #[serde(default = "zero")]
    pub zeta: String,
    #[serde(default)]
    pub s_re: f64,
    #[serde(default)]
    pub s_im: f64,
    #[serde(default)]
    pub weight: Option<WeightSpec>,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_radius")]
    pub max_radius: f64,
    #[serde(default)]
    pub reproducible: bool,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub out: Option<String>,
}

fn unit_ideal() -> String {
    "(1)".into()
}

fn zero() -> String {
    "0".into()
}

fn default_tol() -> f64 {
    1e-6
}

fn default_max_radius() -> f64 {
    1e6
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            field: "Q".into(),
            ideal: unit_ideal(),
            zeta: zero(),
            s_re: 0.0,
            s_im: 0.0,
            weight: None,
            tol: default_tol(),
            max_radius: default_max_radius(),
            reproducible: false,
            format: OutputFormat::Json,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(self.s_re, self.s_im)
    }

    /// Parses and validates every spec in the config.
    pub fn to_problem(&self) -> Result<ProblemInstance> {
        let field = parse_field(&self.field)?;
        let a = parse_ideal(field, &self.ideal)?;
        let zeta = parse_element(field, &self.zeta)?;
        let w = self.weight.clone().unwrap_or_else(|| WeightSpec::standard(&field.places()));
        ProblemInstance::new(field, a, zeta, SpectralParameter::new(self.s())?, w, self.tol, self.max_radius)
    }
}
