//! Remainders of a truncated expansion and of the volume recursion.

use crate::exactnum::{ln_abs, Decimal, FloatContext, Rational};
use crate::profiles::Profile;
use crate::volumes::{kappa_tilde_prime, v_value, MemoStore};

use super::fit::{sample_profiles, FitConfig};
use super::table::{ExpansionTable, ResidualBand, ResidualSummary};

/// Width of the genus bands in a [`ResidualSummary`].
pub const BAND_WIDTH: u64 = 10;

#[derive(Clone, Debug)]
pub struct ResidualRow {
    pub profile: Profile,
    pub genus: u64,
    pub residual: Decimal,
}

#[derive(Clone, Debug)]
pub struct ResidualReport {
    pub rows: Vec<ResidualRow>,
    pub summary: ResidualSummary,
}

/// `Σ c_{k,l} / (g^k (P)_l)` at `(g, n)`, from the numeric coefficients.
pub fn eval_table(table: &ExpansionTable, g: u64, n: usize, ctx: &FloatContext) -> Decimal {
    let p = 2 * g as i64 - 3 + n as i64;
    let mut acc = ctx.integer(0);
    for c in &table.coefficients {
        let mut den = Rational::from(g).pow(c.k as isize);
        for j in 0..c.l as i64 {
            den *= Rational::from(p - j);
        }
        acc += &c.numeric * &ctx.rational(&(Rational::ONE / den));
    }
    acc
}

/// Least-squares slope of `ln y` against `ln x`; `None` with fewer than two
/// usable points.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|(x, y)| *x > 0.0 && y.is_finite()).map(|&(x, y)| (x.ln(), y)).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Bands and decay slope for `(g, |residual|)` pairs; `ln_y` carries
/// `ln |residual|`, so values far below `f64` range still count.
pub fn summarize(r: u32, rows: &[(u64, Decimal)], ctx: &FloatContext) -> ResidualSummary {
    let mut per_genus: std::collections::BTreeMap<u64, f64> = Default::default();
    let mut bands: Vec<ResidualBand> = Vec::new();
    let g_min = rows.iter().map(|r| r.0).min().unwrap_or(0);
    for (g, res) in rows {
        let abs = if res.repr().significand() < &dashu_int::IBig::ZERO { -res.clone() } else { res.clone() };
        let ln = if abs.repr().significand().is_zero() { f64::NEG_INFINITY } else { ln_abs(&abs) };
        let e = per_genus.entry(*g).or_insert(f64::NEG_INFINITY);
        *e = e.max(ln);
        let scaled = ctx.round(&(&abs * &ctx.integer(*g as i64).powi(r.into())));
        let lo = g_min + (g - g_min) / BAND_WIDTH * BAND_WIDTH;
        match bands.iter_mut().find(|b| b.g_lo == lo) {
            Some(b) => {
                b.g_hi = b.g_hi.max(*g);
                if scaled > b.max_scaled {
                    b.max_scaled = scaled;
                }
            }
            None => bands.push(ResidualBand { g_lo: lo, g_hi: *g, max_scaled: scaled }),
        }
    }
    bands.sort_by_key(|b| b.g_lo);
    let points: Vec<(f64, f64)> = per_genus.into_iter().map(|(g, ln)| (g as f64, ln)).collect();
    ResidualSummary { slope: loglog_slope(&points), bands }
}

/// `v(μ) − Σ c_{k,l} / (g^k (|μ|−1)_l)` on the given samples.
pub fn residual_rows(table: &ExpansionTable, samples: &[Profile], ctx: &FloatContext, store: &MemoStore) -> Vec<ResidualRow> {
    samples
        .iter()
        .filter_map(|mu| {
            let g = mu.genus()?;
            let v = v_value(mu, store).eval(ctx);
            Some(ResidualRow { profile: mu.clone(), genus: g, residual: ctx.widen(v - eval_table(table, g, mu.len(), ctx)) })
        })
        .collect()
}

/// Residuals of `table` on the samples generated by `cfg`, with `|res|·g^r`
/// reported per genus band.
pub fn residual_report(r: u32, table: &ExpansionTable, cfg: &FitConfig, store: &MemoStore) -> ResidualReport {
    let ctx = FloatContext::new(cfg.digits);
    let samples = sample_profiles(r, cfg);
    report_on(r, table, &samples, &ctx, store)
}

pub fn report_on(r: u32, table: &ExpansionTable, samples: &[Profile], ctx: &FloatContext, store: &MemoStore) -> ResidualReport {
    let rows = residual_rows(table, samples, ctx, store);
    let pairs: Vec<(u64, Decimal)> = rows.iter().map(|row| (row.genus, row.residual.clone())).collect();
    ResidualReport { summary: summarize(r, &pairs, ctx), rows }
}

/// Denominator attached to the `i`-th term of the recursion remainder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `(2g − 3 + n)_{2i}`, which equals `(|μ| − 1)_{2i}`.
    #[default]
    Pochhammer,
    /// No denominator at all.
    Bare,
}

/// `v(μ) − v(μ^(0)) − Σ_{1<=i<=imax} κ̃'_i v(μ^(i)) / (2g−3+n)_{2i}`.
///
/// Terms whose reduced profile does not exist are dropped.
pub fn recursion_residual(mu: &Profile, imax: u32, ctx: &FloatContext, store: &MemoStore) -> Option<Decimal> {
    recursion_residual_with(mu, imax, Normalization::Pochhammer, ctx, store)
}

pub fn recursion_residual_with(
    mu: &Profile,
    imax: u32,
    norm: Normalization,
    ctx: &FloatContext,
    store: &MemoStore,
) -> Option<Decimal> {
    let g = mu.genus()?;
    let p = 2 * g as i64 - 3 + mu.len() as i64;
    let mut acc = v_value(mu, store).eval(ctx) - v_value(&mu.reduce(0).ok()?, store).eval(ctx);
    for i in 1..=imax {
        let Ok(reduced) = mu.reduce(i) else { break };
        let mut poch = Rational::ONE;
        if norm == Normalization::Pochhammer {
            for j in 0..2 * i as i64 {
                poch *= Rational::from(p - j);
            }
        }
        let term = &kappa_tilde_prime(i, store).scale(&(Rational::ONE / poch)) * &v_value(&reduced, store);
        acc -= term.eval(ctx);
    }
    Some(ctx.widen(acc))
}
