//! Least-squares fit of the expansion coefficients to exact volumes.
//!
//! This is independent of the bootstrap: it only uses exact volumes of the
//! sample profiles and the shape of the basis.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::exactnum::{ln_abs, Decimal, FloatContext, Rational};
use crate::profiles::Profile;
use crate::volumes::{v_value, MemoStore};

use super::linalg::least_squares;
use super::residual::report_on;
use super::table::{CoefficientRecord, ExpansionTable, Provenance};

/// How sample rows are weighted in the least-squares system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Weighting {
    Uniform,
    /// Rows scaled by `g^(r+1)`, so the truncation remainder of every sample
    /// has comparable size.
    #[default]
    RemainderScaled,
}

#[derive(Clone, Debug)]
pub struct FitConfig {
    /// Profile lengths; length `n` at genus `g` splits `2g − 2 + n` as evenly
    /// as possible, so `1` gives `(2g − 1)`, `2` gives `(g, g)`, `3` gives
    /// `(k, k, k + 1)`-like profiles.
    pub families: Vec<usize>,
    pub g_range: RangeInclusive<u64>,
    /// Largest allowed `n / g`.
    pub lambda: f64,
    pub digits: usize,
    pub weighting: Weighting,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self { families: vec![1, 2, 3], g_range: 15..=40, lambda: 1.0, digits: 50, weighting: Weighting::default() }
    }
}

/// The length-`n` balanced profile of genus `g`.
pub fn balanced_profile(g: u64, n: usize) -> Profile {
    let total = 2 * g + n as u64 - 2;
    let (q, rem) = (total / n as u64, (total % n as u64) as usize);
    Profile::from_entries((0..n).map(|i| (q + u64::from(i < rem)) as u32).collect())
}

/// Samples of `cfg` that lie in `Adm(r)` and satisfy `n <= λ g`.
pub fn sample_profiles(r: u32, cfg: &FitConfig) -> Vec<Profile> {
    let mut out = Vec::new();
    for g in cfg.g_range.clone() {
        for &n in &cfg.families {
            if n == 0 || n as f64 > cfg.lambda * g as f64 {
                continue;
            }
            let mu = balanced_profile(g, n);
            if mu.is_admissible() && mu.entries().iter().all(|&k| k >= r) {
                out.push(mu);
            }
        }
    }
    out
}

/// Fitted table plus solver diagnostics.
#[derive(Clone, Debug)]
pub struct FitReport {
    pub table: ExpansionTable,
    pub samples: usize,
    /// `log10` of the pivot spread of the normal equations.
    pub log10_pivot_ratio: f64,
}

fn basis_indices(r: u32) -> Vec<(u32, u32)> {
    (0..=r).flat_map(|d| (0..=d).map(move |k| (k, d - k))).collect()
}

fn solve_order(r: u32, data: &[(Profile, Decimal)], cfg: &FitConfig, ctx: &FloatContext) -> Result<(Vec<Decimal>, f64)> {
    let basis = basis_indices(r);
    let mut rows = Vec::with_capacity(data.len());
    let mut rhs = Vec::with_capacity(data.len());
    let mut weights = Vec::with_capacity(data.len());
    for (mu, v) in data {
        let g = mu.genus().expect("samples are admissible");
        let p = 2 * g as i64 - 3 + mu.len() as i64;
        rows.push(
            basis
                .iter()
                .map(|&(k, l)| {
                    let mut den = Rational::from(g).pow(k as isize);
                    for j in 0..l as i64 {
                        den *= Rational::from(p - j);
                    }
                    ctx.rational(&(Rational::ONE / den))
                })
                .collect(),
        );
        rhs.push(v.clone());
        weights.push(match cfg.weighting {
            Weighting::Uniform => ctx.integer(1),
            Weighting::RemainderScaled => ctx.rational(&Rational::from(g).pow(2 * (r as isize + 1))),
        });
    }
    let solved = least_squares(&rows, &rhs, &weights, ctx)?;
    Ok((solved.x, solved.log10_pivot_ratio))
}

fn check_rank(r: u32, samples: &[Profile]) -> Result<()> {
    let mut lengths: BTreeMap<u64, BTreeSet<usize>> = BTreeMap::new();
    for mu in samples {
        lengths.entry(mu.genus().unwrap_or(0)).or_default().insert(mu.len());
    }
    if lengths.is_empty() {
        return Err(Error::RankDeficient("no admissible samples".into()));
    }
    if r >= 1 {
        if let Some((g, _)) = lengths.iter().find(|(_, ns)| ns.len() < 2) {
            return Err(Error::RankDeficient(format!("genus {g} has samples of a single length")));
        }
    }
    Ok(())
}

/// Fits `c_{k,l}`, `k + l <= r`. The uncertainty of each coefficient is its
/// change when the fit is repeated at order `r + 1` on the same samples.
pub fn fit_expansion(r: u32, cfg: &FitConfig, store: &MemoStore) -> Result<FitReport> {
    let ctx = FloatContext::new(cfg.digits);
    let samples = sample_profiles(r, cfg);
    check_rank(r, &samples)?;

    #[cfg(feature = "parallel")]
    let data: Vec<(Profile, Decimal)> = {
        use rayon::prelude::*;
        samples.par_iter().map(|mu| (mu.clone(), v_value(mu, store).eval(&ctx))).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let data: Vec<(Profile, Decimal)> = samples.iter().map(|mu| (mu.clone(), v_value(mu, store).eval(&ctx))).collect();

    let (coeffs, log10_pivot_ratio) = solve_order(r, &data, cfg, &ctx)?;
    let finer = solve_order(r + 1, &data, cfg, &ctx).ok().map(|s| s.0);

    let mut coefficients = Vec::new();
    for (i, (k, l)) in basis_indices(r).into_iter().enumerate() {
        let uncertainty = finer.as_ref().map(|f| {
            let d = &coeffs[i] - &f[i];
            ctx.round(&if d < Decimal::ZERO { -d } else { d })
        });
        let stable_digits = match &uncertainty {
            Some(u) if !u.repr().significand().is_zero() && !coeffs[i].repr().significand().is_zero() => {
                let rel = (ln_abs(u) - ln_abs(&coeffs[i])) / std::f64::consts::LN_10;
                ((-rel).floor().max(0.0) as usize).min(cfg.digits)
            }
            _ => 0,
        };
        coefficients.push(CoefficientRecord {
            k,
            l,
            exact: None,
            numeric: ctx.round(&coeffs[i]),
            provenance: Provenance::Fit,
            stable_digits,
            uncertainty,
        });
    }
    let mut table = ExpansionTable { order: r, coefficients, kappa: Vec::new(), residuals: Default::default() };
    let report = report_on(r, &table, &samples, &ctx, store);
    table.residuals.insert("fit".into(), report.summary);
    Ok(FitReport { table, samples: samples.len(), log10_pivot_ratio })
}
