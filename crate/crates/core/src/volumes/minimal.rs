//! The minimal strata `μ = (2g − 1)` through the series identity
//! `[t^{2g}] A(t)^{2g} = (2g)! [t^{2g}] S(t)`.

use crate::exactnum::{factorial, int, series_s, Rational, TruncatedSeries};

/// `a(1), a(3), …, a(2·gmax − 1)`.
pub fn minimal_strata_a(gmax: usize) -> Vec<Rational> {
    extend_minimal(&[], gmax)
}

/// Continues a known prefix `a(1), …, a(2·known.len() − 1)` up to `gmax`.
pub(crate) fn extend_minimal(known: &[Rational], gmax: usize) -> Vec<Rational> {
    solve(&series_s(2 * gmax), known, gmax)
}

/// Solves the identity against an arbitrary even series `s` (order ≥ 2·gmax).
pub(crate) fn solve(s: &TruncatedSeries, known: &[Rational], gmax: usize) -> Vec<Rational> {
    let mut values = known.to_vec();
    // Work in u = t², where A = 1 + Σ_h a(2h − 1) u^h.
    for g in values.len() + 1..=gmax {
        let mut coeffs = Vec::with_capacity(g + 1);
        coeffs.push(Rational::ONE);
        coeffs.extend(values.iter().cloned());
        // the unknown coefficient of u^g stays zero
        let a_lower = TruncatedSeries::new(coeffs, g);
        let lower = a_lower.pow(2 * g as u64);
        let rhs = Rational::from(factorial(2 * g as u64)) * s.coeff(2 * g);
        values.push((rhs - lower.coeff(g)) / int(2 * g as i64));
    }
    values.truncate(gmax.max(known.len()));
    values
}
