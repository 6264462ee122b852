//! The inductive construction of the expansion in the basis `Q_{m,l}`.
//!
//! Starting from `Q_1 = 4 − (2π²/3) Q_{0,1}`, each step lifts the recursion
//! `v(μ) − v(μ^(0)) ≈ Σ_i κ̃'_i v(μ^(i)) / (P)_{2i}` to one more order: the
//! right-hand side is re-expanded in the basis, `Δ` is inverted, and the
//! `n`-independent kernel part is fixed by the minimal strata.

use std::collections::BTreeMap;

use dashu_int::UBig;

use crate::error::{Error, Result};
use crate::exactnum::{int, ln_abs, rat, Decimal, FloatContext, PiPoly, Rational};
use crate::pochhammer::{Basis, Coeff, PochSum};
use crate::volumes::{kappa_tilde_prime, MemoStore};

use super::table::{CoefficientRecord, ExpansionTable, KappaSeries, Provenance};

/// `4 − (2π²/3) Q_{0,1}`.
pub fn seed() -> PochSum {
    PochSum::from_terms(1, [((0, 0), PiPoly::constant(int(4))), ((0, 1), PiPoly::monomial(rat(-2, 3), 1))])
}

fn kappa_coeffs(kappas: &KappaSeries, need: usize) -> Result<Vec<Coeff>> {
    if kappas.values.len() < need {
        return Err(Error::KappaTooShort { have: kappas.values.len().saturating_sub(1), need: need - 1 });
    }
    Ok(kappas.values[..need]
        .iter()
        .map(|k| match &k.exact {
            Some(p) => Coeff::Exact(p.clone()),
            None => Coeff::Numeric(k.numeric.clone()),
        })
        .collect())
}

/// One lift from `prev = Q_{r−1}` to `Q_r`.
pub fn bootstrap_step(prev: &PochSum, r: u32, kappas: &KappaSeries, store: &MemoStore) -> Result<PochSum> {
    let kappa = kappa_coeffs(kappas, r as usize + 1)?;
    let mut rhs = PochSum::zero(r + 1);
    for i in 1..=r.div_ceil(2) {
        let kt = PiPoly::from(kappa_tilde_prime(i, store));
        rhs = rhs.add(&prev.shift_expand(i, r + 1).mul_poly(&kt));
    }
    let lifted = rhs.with_max_degree(r + 1).delta_inv()?;

    // kernel part: Q_r(g, 1) must expand as Σ κ_m g^{−m}
    let series = lifted.at_n1_series(r as usize);
    let mut out = lifted.with_max_degree(r);
    for (m, target) in kappa.iter().enumerate() {
        let mut at_n1 = Coeff::Exact(PiPoly::zero());
        for (c, s) in &series {
            at_n1 = at_n1.add(&c.scale(s.coeff(m)));
        }
        out.add_term(Basis::new(m as u32, 0), target.add(&at_n1.neg()));
    }
    Ok(out)
}

/// `Q_r` for `r >= 1`.
pub fn bootstrap_sum(r: u32, kappas: &KappaSeries, store: &MemoStore) -> Result<PochSum> {
    assert!(r >= 1, "the construction starts at order 1");
    let mut q = seed();
    for step in 2..=r {
        q = bootstrap_step(&q, step, kappas, store)?;
    }
    Ok(q)
}

fn abs(x: &Decimal) -> Decimal {
    if *x < Decimal::ZERO {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Propagated error of every coefficient: each numeric `κ_m` is moved by
/// its own uncertainty `|κ_m|·10^(−stable digits)` and the changes add up.
fn propagated_error(r: u32, q: &PochSum, kappas: &KappaSeries, store: &MemoStore, ctx: &FloatContext) -> Result<BTreeMap<Basis, Decimal>> {
    let mut err: BTreeMap<Basis, Decimal> = BTreeMap::new();
    for (m, kv) in kappas.values.iter().take(r as usize + 1).enumerate() {
        if kv.exact.is_some() {
            continue;
        }
        let scale = ctx.rational(&Rational::from_parts(1.into(), UBig::from(10u8).pow(kv.stable_digits)));
        let delta = if kv.numeric == Decimal::ZERO { scale } else { abs(&kv.numeric) * scale };
        let mut moved = kappas.clone();
        moved.values[m].numeric = ctx.widen(&kv.numeric + &delta);
        let q2 = bootstrap_sum(r, &moved, store)?;
        for d in 0..=r {
            for k in 0..=d {
                let b = Basis::new(k, d - k);
                let value = |s: &PochSum| s.coeff(b.m, b.l).map_or(ctx.integer(0), |c| c.eval(ctx));
                let change = abs(&(value(&q2) - value(q)));
                let entry = err.entry(b).or_insert_with(|| ctx.integer(0));
                *entry = ctx.widen(&*entry + &change);
            }
        }
    }
    Ok(err)
}

/// All `c_{k,l}` with `k + l <= r`, zero entries included.
///
/// Coefficients that depend on numerically extracted `κ` carry an
/// uncertainty propagated from the `κ` stability digits.
pub fn bootstrap_expansion(r: u32, kappas: &KappaSeries, store: &MemoStore, ctx: &FloatContext) -> Result<ExpansionTable> {
    let q = bootstrap_sum(r, kappas, store)?;
    let errors = propagated_error(r, &q, kappas, store, ctx)?;
    let mut coefficients = Vec::new();
    for degree in 0..=r {
        for k in 0..=degree {
            let l = degree - k;
            let c = q.coeff(k, l).cloned().unwrap_or(Coeff::Exact(PiPoly::zero()));
            let value = c.eval(ctx);
            let uncertainty = (!c.is_exact()).then(|| ctx.round(&errors[&Basis::new(k, l)]));
            let stable_digits = match &uncertainty {
                None => ctx.digits(),
                Some(u) if *u == Decimal::ZERO => ctx.digits(),
                Some(_) if value == Decimal::ZERO => 0,
                Some(u) => {
                    let digits = (ln_abs(&value) - ln_abs(u)) / std::f64::consts::LN_10;
                    (digits.floor().max(0.0) as usize).min(ctx.digits())
                }
            };
            coefficients.push(CoefficientRecord {
                k,
                l,
                numeric: ctx.round(&value),
                stable_digits,
                exact: c.exact().cloned(),
                provenance: Provenance::Bootstrap,
                uncertainty,
            });
        }
    }
    Ok(ExpansionTable {
        order: r,
        coefficients,
        kappa: kappas.values.iter().take(r as usize + 1).cloned().collect(),
        residuals: Default::default(),
    })
}
