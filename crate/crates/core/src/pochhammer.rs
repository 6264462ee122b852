//! Finite sums in the basis `Q_{m,l}(g, n) = 1 / (g^m (P)_l)`, `P = 2g − 3 + n`,
//! where `(x)_l = x (x−1) … (x−l+1)` is the falling factorial.
//!
//! The degree of `Q_{m,l}` is `m + l`; a [`PochSum`] keeps no term above its
//! degree bound.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{binomial, int, render_decimal, Decimal, FloatContext, PiPoly, Rational, TruncatedSeries};

/// A coefficient: exact in `ℚ[π²]`, or numeric once a numeric input entered.
#[derive(Clone, Debug, PartialEq)]
pub enum Coeff {
    Exact(PiPoly),
    Numeric(Decimal),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Exact(p) => p.is_zero(),
            Coeff::Numeric(x) => x.repr().significand().is_zero(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coeff::Exact(_))
    }

    pub fn exact(&self) -> Option<&PiPoly> {
        match self {
            Coeff::Exact(p) => Some(p),
            Coeff::Numeric(_) => None,
        }
    }

    pub fn eval(&self, ctx: &FloatContext) -> Decimal {
        match self {
            Coeff::Exact(p) => p.eval(ctx),
            Coeff::Numeric(x) => ctx.widen(x.clone()),
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a + b),
            (Coeff::Numeric(x), Coeff::Numeric(y)) => Coeff::Numeric(x + y),
            (Coeff::Numeric(x), Coeff::Exact(p)) | (Coeff::Exact(p), Coeff::Numeric(x)) => {
                Coeff::Numeric(x + &p.eval(&FloatContext::for_decimal(x)))
            }
        }
    }

    pub fn neg(&self) -> Coeff {
        self.scale(&int(-1))
    }

    pub fn scale(&self, q: &Rational) -> Coeff {
        match self {
            Coeff::Exact(p) => Coeff::Exact(p.scale(q)),
            Coeff::Numeric(x) => Coeff::Numeric(x * &FloatContext::for_decimal(x).rational(q)),
        }
    }

    pub fn mul_poly(&self, p: &PiPoly) -> Coeff {
        match self {
            Coeff::Exact(a) => Coeff::Exact(a * p),
            Coeff::Numeric(x) => Coeff::Numeric(x * &p.eval(&FloatContext::for_decimal(x))),
        }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match other {
            Coeff::Exact(p) => self.mul_poly(p),
            Coeff::Numeric(y) => match self {
                Coeff::Numeric(x) => Coeff::Numeric(x * y),
                Coeff::Exact(p) => Coeff::Numeric(y * &p.eval(&FloatContext::for_decimal(y))),
            },
        }
    }
}

impl From<PiPoly> for Coeff {
    fn from(p: PiPoly) -> Self {
        Coeff::Exact(p)
    }
}

impl From<Rational> for Coeff {
    fn from(q: Rational) -> Self {
        Coeff::Exact(PiPoly::constant(q))
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Exact(p) => write!(f, "({})", p.to_compact()),
            Coeff::Numeric(x) => write!(f, "{}", render_decimal(x, x.precision())),
        }
    }
}

/// Index `(m, l)` of `Q_{m,l}`, ordered by degree `m + l`, then `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Basis {
    pub m: u32,
    pub l: u32,
}

impl Basis {
    pub fn new(m: u32, l: u32) -> Self {
        Self { m, l }
    }

    pub fn degree(self) -> u32 {
        self.m + self.l
    }
}

impl Ord for Basis {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.m).cmp(&(other.degree(), other.m))
    }
}

impl PartialOrd for Basis {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PochSum {
    terms: BTreeMap<Basis, Coeff>,
    max_degree: u32,
}

impl PochSum {
    pub fn zero(max_degree: u32) -> Self {
        Self { terms: BTreeMap::new(), max_degree }
    }

    /// `c · Q_{m,l}` with the degree bound set to `m + l`.
    pub fn basis(m: u32, l: u32, c: impl Into<Coeff>) -> Self {
        let mut out = Self::zero(m + l);
        out.add_term(Basis::new(m, l), c.into());
        out
    }

    pub fn from_terms<I, C>(max_degree: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), C)>,
        C: Into<Coeff>,
    {
        let mut out = Self::zero(max_degree);
        for ((m, l), c) in terms {
            out.add_term(Basis::new(m, l), c.into());
        }
        out
    }

    /// Adds `c · Q_b`; silently drops it above the degree bound.
    pub fn add_term(&mut self, b: Basis, c: Coeff) {
        if b.degree() > self.max_degree || c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&b) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(b, merged);
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn with_max_degree(mut self, max_degree: u32) -> Self {
        self.max_degree = max_degree;
        self.terms.retain(|b, _| b.degree() <= max_degree);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Coeff::is_exact)
    }

    pub fn coeff(&self, m: u32, l: u32) -> Option<&Coeff> {
        self.terms.get(&Basis::new(m, l))
    }

    /// Terms in `(m + l, m)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Basis, &Coeff)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    /// Sum; the degree bound is the smaller of the two.
    pub fn add(&self, other: &PochSum) -> PochSum {
        let mut out = self.clone().with_max_degree(self.max_degree.min(other.max_degree));
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> PochSum {
        self.map_coeffs(|c| c.scale(q))
    }

    pub fn mul_poly(&self, p: &PiPoly) -> PochSum {
        self.map_coeffs(|c| c.mul_poly(p))
    }

    pub fn mul_coeff(&self, k: &Coeff) -> PochSum {
        self.map_coeffs(|c| c.mul(k))
    }

    fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> PochSum {
        let mut out = Self::zero(self.max_degree);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    /// `Δ(F)(g, n) = F(g, n) − F(g, n − 1)`, termwise `Q_{m,l} ↦ −l Q_{m,l+1}`.
    pub fn delta(&self) -> PochSum {
        let mut out = Self::zero(self.max_degree + 1);
        for (b, c) in &self.terms {
            out.add_term(Basis::new(b.m, b.l + 1), c.scale(&int(-(b.l as i64))));
        }
        out
    }

    /// Inverse of [`delta`](Self::delta) on sums with every `l >= 2`:
    /// `Q_{m,l} ↦ −Q_{m,l−1} / (l − 1)`.
    pub fn delta_inv(&self) -> Result<PochSum> {
        let mut out = Self::zero(self.max_degree.saturating_sub(1));
        for (b, c) in &self.terms {
            if b.l < 2 {
                return Err(Error::DeltaInvDomain { m: b.m, l: b.l });
            }
            let q = Rational::from_parts((-1).into(), ((b.l - 1) as u64).into());
            out.add_term(Basis::new(b.m, b.l - 1), c.scale(&q));
        }
        Ok(out)
    }

    /// Expansion of `F(g − i, n − 1) / (P)_{2i}` up to degree `r`.
    ///
    /// The `P` dependence is rewritten exactly,
    /// `1 / ((P−2i−1)_l (P)_{2i}) = (P − 2i) / (P)_{2i+l+1} = Q_{0,2i+l} + l·Q_{0,2i+l+1}`,
    /// while `1/(g − i)^m = Σ_j C(m−1+j, j) i^j g^{−m−j}` is truncated.
    pub fn shift_expand(&self, i: u32, r: u32) -> PochSum {
        assert!(i >= 1 && r >= 2 * i, "need i >= 1 and r >= 2i");
        let mut out = Self::zero(r);
        for (b, c) in &self.terms {
            let shift = [-(2 * i as i64), 1].map(int);
            let p_part = reduce_p(&shift, 2 * i + b.l + 1).expect("degree 1 against l >= 1");
            for (pb, pc) in p_part.terms() {
                assert!(pb.l >= 2 * i, "shifted term Q_{{0,{}}} escaped l >= 2i", pb.l);
                let pc = pc.exact().expect("reduce_p is exact").coefficient(0);
                for j in 0.. {
                    let m = b.m + j;
                    if m + pb.l > r {
                        break;
                    }
                    let g_coeff = if b.m == 0 {
                        if j > 0 {
                            break;
                        }
                        Rational::ONE
                    } else {
                        let ways = binomial((b.m - 1 + j) as u64, j as u64);
                        Rational::from(ways * dashu_int::UBig::from(i).pow(j as usize))
                    };
                    out.add_term(Basis::new(m, pb.l), c.scale(&(&pc * g_coeff)));
                }
            }
        }
        out
    }

    fn check_point(&self, g: i64, n: i64) -> Result<i64> {
        let p = 2 * g - 3 + n;
        for b in self.terms.keys() {
            let vanishing = (b.m > 0 && g == 0) || (b.l > 0 && p >= 0 && p < b.l as i64);
            if vanishing {
                return Err(Error::VanishingDenominator { g, n, p, l: b.l });
            }
        }
        Ok(p)
    }

    /// Exact value at `(g, n)`; `None` if a coefficient is numeric.
    pub fn eval_exact(&self, g: i64, n: i64) -> Result<Option<PiPoly>> {
        let p = self.check_point(g, n)?;
        let mut acc = PiPoly::zero();
        for (b, c) in &self.terms {
            let Some(c) = c.exact() else {
                return Ok(None);
            };
            acc = &acc + &c.scale(&basis_value(b.m, b.l, g, p));
        }
        Ok(Some(acc))
    }

    /// Value at `(g, n)` for sums with rational coefficients only.
    pub fn eval_rational(&self, g: i64, n: i64) -> Result<Option<Rational>> {
        Ok(self.eval_exact(g, n)?.and_then(|p| {
            let constant = p.terms().all(|(e, _)| e == 0);
            constant.then(|| p.coefficient(0))
        }))
    }

    pub fn eval_numeric(&self, g: i64, n: i64, ctx: &FloatContext) -> Result<Decimal> {
        let p = self.check_point(g, n)?;
        let mut acc = ctx.integer(0);
        for (b, c) in &self.terms {
            acc += &c.eval(ctx) * &ctx.rational(&basis_value(b.m, b.l, g, p));
        }
        Ok(acc)
    }

    /// Numeric value at real `(g, n)`, for curves and large arguments.
    pub fn eval_f64(&self, g: f64, n: f64, ctx: &FloatContext) -> f64 {
        let p = 2.0 * g - 3.0 + n;
        self.terms
            .iter()
            .map(|(b, c)| {
                let poch: f64 = (0..b.l).map(|j| p - j as f64).product();
                crate::exactnum::to_f64(&c.eval(ctx)) / (g.powi(b.m as i32) * poch)
            })
            .sum()
    }

    /// Restriction to `n = 1` as a series in `1/g` up to `order`, one series
    /// per term, paired with its coefficient.
    pub fn at_n1_series(&self, order: usize) -> Vec<(Coeff, TruncatedSeries)> {
        self.terms.iter().map(|(b, c)| (c.clone(), basis_series_at_n1(b.m, b.l, order))).collect()
    }
}

/// `1 / (g^m (P)_l)` at integer `g` and `P`.
fn basis_value(m: u32, l: u32, g: i64, p: i64) -> Rational {
    let mut den = Rational::from(g).pow(m as isize);
    for j in 0..l as i64 {
        den *= Rational::from(p - j);
    }
    Rational::ONE / den
}

/// `Q_{m,l}(g, 1) = 1 / (g^m (2g − 2)_l)` as a power series in `1/g`.
pub fn basis_series_at_n1(m: u32, l: u32, order: usize) -> TruncatedSeries {
    // (2g − 2)_l = (2g)^l Π_{j<l} (1 − (2 + j) / (2g))
    let mut acc = TruncatedSeries::one(order);
    for j in 0..l {
        let ratio = Rational::from_parts(((2 + j) as i64).into(), 2u8.into());
        let geometric = (0..=order).map(|s| ratio.pow(s as isize)).collect();
        acc = &acc * &TruncatedSeries::new(geometric, order);
    }
    let shift = (m + l) as usize;
    let scale = Rational::from_parts(1.into(), dashu_int::UBig::from(2u8).pow(l as usize));
    let mut coeffs = vec![Rational::ZERO; order + 1];
    for (k, c) in acc.coeffs().iter().enumerate() {
        if k + shift <= order {
            coeffs[k + shift] = c * &scale;
        }
    }
    TruncatedSeries::new(coeffs, order)
}

/// `(Σ_k c_k P^k) / (P)_L` in the basis `Q_{0,l}`, `l <= L`, using
/// `P / (P)_L = 1/(P)_{L−1} + (L − 1)/(P)_L`.
pub fn reduce_p(poly: &[Rational], l_index: u32) -> Result<PochSum> {
    let degree = poly.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    if degree > l_index as usize {
        return Err(Error::ReduceDegree { degree, l: l_index });
    }
    // coefficient of 1/(P)_l, indexed by l
    let mut v = vec![Rational::ZERO; l_index as usize + 1];
    v[l_index as usize] = poly.get(degree).cloned().unwrap_or(Rational::ZERO);
    for k in (0..degree).rev() {
        let mut next = vec![Rational::ZERO; l_index as usize + 1];
        for (l, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[l - 1] += c;
            next[l] += c * int(l as i64 - 1);
        }
        next[l_index as usize] += &poly[k];
        v = next;
    }
    Ok(PochSum::from_terms(l_index, v.into_iter().enumerate().map(|(l, c)| ((0, l as u32), c))))
}

impl fmt::Display for PochSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| format!("{c} * g^-{} * poch(2g-3+n, {})^-1", b.m, b.l))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
