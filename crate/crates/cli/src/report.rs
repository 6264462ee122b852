//! Serializable shapes of the command outputs.

use mv_core::exactnum::{format_rational, render_decimal, FloatContext};
use mv_core::expansion::ExpansionTable;
use mv_core::volumes::DiagnosticSplit;
use mv_core::PiMonomial;
use serde::{Deserialize, Serialize};

/// `q · π^pi_power` with its decimal value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueJson {
    pub pi_power: u32,
    pub rational: String,
    pub decimal: String,
}

impl ValueJson {
    pub fn new(v: &PiMonomial, ctx: &FloatContext) -> Self {
        Self { pi_power: 2 * v.pi_exp(), rational: format_rational(v.coeff()), decimal: render_decimal(&v.eval(ctx), ctx.digits()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeReport {
    pub profile: Vec<u32>,
    pub genus: Option<u64>,
    pub n: usize,
    pub v: ValueJson,
    #[serde(rename = "Vol")]
    pub vol: ValueJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalRow {
    pub g: u64,
    pub a: String,
    pub v: ValueJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub k: u32,
    pub l: u32,
    pub fit: String,
    pub bootstrap: String,
    pub delta: String,
    pub uncertainty: Option<String>,
    /// `|delta| <= 10 · uncertainty`.
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitOutput {
    pub samples: usize,
    pub log10_pivot_ratio: f64,
    pub fit: ExpansionTable,
    pub bootstrap: ExpansionTable,
    pub cross_validation: Vec<CrossCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecaySlope {
    pub family: String,
    pub g_lo: u64,
    pub g_hi: u64,
    pub normalization: String,
    pub slope: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnoseOutput {
    pub profile: Vec<u32>,
    pub a: String,
    pub split: DiagnosticSplit,
    pub slopes: Vec<DecaySlope>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Quotes a CSV field when needed.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
