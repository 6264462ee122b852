use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, parse_rational, Decimal, FloatContext, Rational};
use crate::error::{Error, Result};

/// `coeff · π^(2·pi_exp)`; zero is normalized to `pi_exp == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiMonomial {
    coeff: Rational,
    pi_exp: u32,
}

impl PiMonomial {
    pub fn new(coeff: Rational, pi_exp: u32) -> Self {
        let pi_exp = if coeff.is_zero() { 0 } else { pi_exp };
        Self { coeff, pi_exp }
    }

    pub fn zero() -> Self {
        Self::new(Rational::ZERO, 0)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    /// Exponent `e` of `π²`, i.e. the value carries `π^(2e)`.
    pub fn pi_exp(&self) -> u32 {
        self.pi_exp
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(&self.coeff * q, self.pi_exp)
    }

    pub fn eval(&self, ctx: &FloatContext) -> Decimal {
        &ctx.rational(&self.coeff) * &ctx.pi_even_power(self.pi_exp)
    }

    /// Wire form `"p/q*pi^2e"`.
    pub fn to_wire(&self) -> String {
        format!("{}*pi^{}", format_rational(&self.coeff), 2 * self.pi_exp)
    }

    pub fn from_wire(s: &str) -> Result<Self> {
        let bad = || Error::ParsePiPoly(s.to_string());
        let (q, power) = s.split_once("*pi^").ok_or_else(bad)?;
        let power: u32 = power.trim().parse().map_err(|_| bad())?;
        if !power.is_multiple_of(2) {
            return Err(bad());
        }
        let q = parse_rational(q)?;
        let m = Self::new(q, power / 2);
        if m.to_wire() != s.trim() {
            return Err(bad());
        }
        Ok(m)
    }
}

impl Mul for &PiMonomial {
    type Output = PiMonomial;
    fn mul(self, rhs: &PiMonomial) -> PiMonomial {
        PiMonomial::new(&self.coeff * &rhs.coeff, self.pi_exp + rhs.pi_exp)
    }
}

impl fmt::Display for PiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", term_text(&self.coeff, self.pi_exp))
    }
}

fn term_text(q: &Rational, e: u32) -> String {
    let q_text = if q.is_int() { q.numerator().to_string() } else { q.to_string() };
    if e == 0 {
        q_text
    } else {
        format!("{q_text} · π^{}", 2 * e)
    }
}

/// Polynomial in π² with rational coefficients: `Σ q_e · π^(2e)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PiPoly {
    terms: BTreeMap<u32, Rational>,
}

impl PiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(q: Rational) -> Self {
        Self::monomial(q, 0)
    }

    pub fn monomial(q: Rational, e: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, q);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, q) in terms {
            p.add_term(e, q);
        }
        p
    }

    fn add_term(&mut self, e: u32, q: Rational) {
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert(Rational::ZERO);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: u32) -> Rational {
        self.terms.get(&e).cloned().unwrap_or(Rational::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(e, q)| (*e, q))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c * q)))
    }

    pub fn eval(&self, ctx: &FloatContext) -> Decimal {
        let pi2 = ctx.pi().sqr();
        // Horner in π²
        let top = self.terms.keys().next_back().copied().unwrap_or(0);
        let mut acc = ctx.integer(0);
        for e in (0..=top).rev() {
            acc = &acc * &pi2;
            if let Some(q) = self.terms.get(&e) {
                acc = &acc + &ctx.rational(q);
            }
        }
        acc
    }

    /// Compact form such as `-3/8*pi^2 + 1/72*pi^4`; `0` for the zero polynomial.
    pub fn to_compact(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(e, q)| PiMonomial::new(q.clone(), *e).to_wire())
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl From<PiMonomial> for PiPoly {
    fn from(m: PiMonomial) -> Self {
        PiPoly::monomial(m.coeff, m.pi_exp)
    }
}

impl From<Rational> for PiPoly {
    fn from(q: Rational) -> Self {
        PiPoly::constant(q)
    }
}

impl Add for &PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: &PiPoly) -> PiPoly {
        let mut out = self.clone();
        for (e, q) in &rhs.terms {
            out.add_term(*e, q.clone());
        }
        out
    }
}

impl Sub for &PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: &PiPoly) -> PiPoly {
        self + &(-rhs)
    }
}

impl Neg for &PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        PiPoly::from_terms(self.terms.iter().map(|(e, q)| (*e, -q.clone())))
    }
}

impl Mul for &PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: &PiPoly) -> PiPoly {
        let mut out = PiPoly::zero();
        for (e1, q1) in &self.terms {
            for (e2, q2) in &rhs.terms {
                out.add_term(e1 + e2, q1 * q2);
            }
        }
        out
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, q)) in self.terms.iter().enumerate() {
            let text = term_text(q, *e);
            if i == 0 {
                write!(f, "{text}")?;
            } else if let Some(rest) = text.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {text}")?;
            }
        }
        Ok(())
    }
}

/// JSON form: list of `[e, "p/q"]` pairs, value `Σ q·π^(2e)`.
impl Serialize for PiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, q) in &self.terms {
            seq.serialize_element(&(e, format_rational(q)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for PiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(u32, String)> = Vec::deserialize(d)?;
        let mut out = PiPoly::zero();
        for (e, q) in raw {
            if out.terms.contains_key(&e) {
                return Err(D::Error::custom(format!("duplicate exponent {e}")));
            }
            let q = parse_rational(&q).map_err(D::Error::custom)?;
            if q.is_zero() {
                return Err(D::Error::custom("zero coefficient stored"));
            }
            out.terms.insert(e, q);
        }
        Ok(out)
    }
}
