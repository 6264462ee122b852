use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::exactnum::{render_decimal, Decimal, PiPoly};

/// Where a coefficient came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Bootstrap,
    Fit,
    /// Taken from a published reference value; the wire tag is fixed.
    #[serde(rename = "paper")]
    Reference,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Bootstrap => "bootstrap",
            Provenance::Fit => "fit",
            Provenance::Reference => "paper",
        }
    }
}

/// Decimal stored as its rendered string, so JSON round-trips by value.
pub mod serde_decimal {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exactnum::{render_decimal, Decimal};

    pub fn serialize<S: Serializer>(x: &Decimal, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render_decimal(x, x.precision().max(1)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Decimal, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(|e| D::Error::custom(format!("bad decimal {text:?}: {e:?}")))
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<Decimal>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(x) => super::serialize(x, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Decimal>, D::Error> {
            let text: Option<String> = Option::deserialize(d)?;
            text.map(|t| t.parse().map_err(|e| D::Error::custom(format!("bad decimal {t:?}: {e:?}"))))
                .transpose()
        }
    }
}

/// One coefficient `c_{k,l}` of `Σ c_{k,l} / (g^k (|μ|−1)_l)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub k: u32,
    pub l: u32,
    pub exact: Option<PiPoly>,
    #[serde(with = "serde_decimal")]
    pub numeric: Decimal,
    pub provenance: Provenance,
    pub stable_digits: usize,
    #[serde(with = "serde_decimal::option", default, skip_serializing_if = "Option::is_none")]
    pub uncertainty: Option<Decimal>,
}

/// One `κ_i` of `v(2g − 1) ~ Σ κ_i g^{−i}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KappaValue {
    pub index: usize,
    pub exact: Option<PiPoly>,
    #[serde(with = "serde_decimal")]
    pub numeric: Decimal,
    pub stable_digits: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KappaSeries {
    pub order: usize,
    pub values: Vec<KappaValue>,
}

impl KappaSeries {
    pub fn get(&self, i: usize) -> Option<&KappaValue> {
        self.values.get(i)
    }
}

/// `max |residual| · g^r` over one range of genera.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualBand {
    pub g_lo: u64,
    pub g_hi: u64,
    #[serde(with = "serde_decimal")]
    pub max_scaled: Decimal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    pub slope: Option<f64>,
    pub bands: Vec<ResidualBand>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTable {
    pub order: u32,
    pub coefficients: Vec<CoefficientRecord>,
    pub kappa: Vec<KappaValue>,
    #[serde(default)]
    pub residuals: BTreeMap<String, ResidualSummary>,
}

impl ExpansionTable {
    pub fn get(&self, k: u32, l: u32) -> Option<&CoefficientRecord> {
        self.coefficients.iter().find(|c| c.k == k && c.l == l)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,l,exact,numeric,provenance,stable_digits,uncertainty\n");
        for c in &self.coefficients {
            let exact = c.exact.as_ref().map(|p| p.to_compact()).unwrap_or_default();
            let unc = c.uncertainty.as_ref().map(|u| render_decimal(u, 6)).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                c.k,
                c.l,
                exact,
                render_decimal(&c.numeric, c.numeric.precision().max(1)),
                c.provenance.as_str(),
                c.stable_digits,
                unc
            );
        }
        out
    }

    pub fn to_text(&self, digits: usize) -> String {
        let mut out = format!("expansion coefficients through order {}\n", self.order);
        for c in &self.coefficients {
            let value = render_decimal(&c.numeric, digits);
            let _ = match &c.exact {
                Some(p) => write!(out, "c_{{{},{}}} = {p} ≈ {value}", c.k, c.l),
                None => write!(out, "c_{{{},{}}} ≈ {value}", c.k, c.l),
            };
            let _ = write!(out, "  [{}, {} stable digits", c.provenance.as_str(), c.stable_digits);
            if let Some(u) = &c.uncertainty {
                let _ = write!(out, ", ± {}", render_decimal(u, 3));
            }
            out.push_str("]\n");
        }
        if !self.kappa.is_empty() {
            out.push_str("minimal-strata coefficients\n");
            for kv in &self.kappa {
                let value = render_decimal(&kv.numeric, digits);
                let _ = match &kv.exact {
                    // closed form known but the value was fitted: say so
                    Some(p) if kv.stable_digits < digits => {
                        writeln!(out, "κ_{} = {p}, extracted ≈ {value}  [{} stable digits]", kv.index, kv.stable_digits)
                    }
                    Some(p) => writeln!(out, "κ_{} = {p} ≈ {value}  [{} stable digits]", kv.index, kv.stable_digits),
                    None => writeln!(out, "κ_{} ≈ {value}  [{} stable digits]", kv.index, kv.stable_digits),
                };
            }
        }
        for (family, summary) in &self.residuals {
            let _ = match summary.slope {
                Some(s) => writeln!(out, "residuals {family}: log-log slope {s:.3}"),
                None => writeln!(out, "residuals {family}: no slope"),
            };
            for b in &summary.bands {
                let _ = writeln!(out, "  g ∈ [{}, {}]: max |r|·g^{} = {}", b.g_lo, b.g_hi, self.order, render_decimal(&b.max_scaled, 6));
            }
        }
        out
    }
}
