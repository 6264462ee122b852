//! Large-genus coefficients `κ_i` of the minimal-strata volumes,
//! `v(2g − 1) ~ Σ κ_i g^{−i}`, by Richardson-style extrapolation.

use crate::error::{Error, Result};
use crate::exactnum::{int, rat, stable_digits, Decimal, FloatContext, PiPoly, Rational};
use crate::profiles::Profile;
use crate::volumes::{v_value, MemoStore};

use super::linalg::solve;
use super::table::{KappaSeries, KappaValue};

/// Stability below this many digits makes [`extract_kappa`] fail.
pub const MIN_STABLE_DIGITS: usize = 4;

/// Closed forms known for the first coefficients.
pub fn known_kappa(i: usize) -> Option<PiPoly> {
    match i {
        0 => Some(PiPoly::constant(int(4))),
        1 => Some(PiPoly::monomial(rat(-1, 3), 1)),
        2 => Some(PiPoly::from_terms([(1, rat(-1, 3)), (2, rat(1, 72))])),
        _ => None,
    }
}

/// The closed-form series `κ_0..κ_r`, for `r <= 2`.
pub fn exact_kappa_series(r: usize, ctx: &FloatContext) -> Option<KappaSeries> {
    let values = (0..=r)
        .map(|i| {
            known_kappa(i).map(|p| KappaValue { index: i, numeric: ctx.round(&p.eval(ctx)), exact: Some(p), stable_digits: ctx.digits() })
        })
        .collect::<Option<Vec<_>>>()?;
    Some(KappaSeries { order: r, values })
}

/// Solves `Σ_{i < count} κ_i g^{−i} = v(2g − 1)` for `g` in the window.
fn window_solve(first: u64, count: usize, ctx: &FloatContext, store: &MemoStore) -> Result<Vec<Decimal>> {
    let mut rows = Vec::with_capacity(count);
    let mut rhs = Vec::with_capacity(count);
    for g in first..first + count as u64 {
        let inv = Rational::from_parts(1.into(), g.into());
        rows.push((0..count).map(|i| ctx.rational(&inv.pow(i as isize))).collect());
        rhs.push(v_value(&Profile::single(2 * g as u32 - 1), store).eval(ctx));
    }
    Ok(solve(rows, rhs, ctx)?.x)
}

/// `κ_0..κ_r` from the genera `g0 .. g0 + count − 1`.
///
/// The extraction is repeated on the window shifted by one genus and at
/// doubled precision; the reported stable digits are the agreement across
/// all three runs. The solve itself runs with extra digits, since the
/// system loses roughly `count` of them to cancellation.
pub fn extract_kappa(r: usize, g0: u64, count: usize, ctx: &FloatContext, store: &MemoStore) -> Result<KappaSeries> {
    if count < r + 1 {
        return Err(Error::Window(format!("{count} genera cannot determine {} coefficients", r + 1)));
    }
    if g0 < 2 {
        return Err(Error::Window(format!("first genus {g0} is below 2")));
    }
    let shifted = if g0 >= 3 { g0 - 1 } else { g0 + 1 };
    store.minimal((g0.max(shifted) as usize) + count);
    let work = FloatContext::new(ctx.digits() + count + 10);
    let base = window_solve(g0, count, &work, store)?;
    let moved = window_solve(shifted, count, &work, store)?;
    let fine = window_solve(g0, count, &work.doubled(), store)?;
    let mut values = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let digits = stable_digits(&base[i], &moved[i], ctx.digits()).min(stable_digits(&base[i], &fine[i], ctx.digits()));
        if digits < MIN_STABLE_DIGITS {
            return Err(Error::UnstableKappa { index: i, digits });
        }
        values.push(KappaValue { index: i, exact: known_kappa(i), numeric: ctx.round(&base[i]), stable_digits: digits });
    }
    Ok(KappaSeries { order: r, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::render_decimal;

    #[test]
    fn closed_forms_evaluate() {
        let ctx = FloatContext::new(20);
        let k = exact_kappa_series(2, &ctx).unwrap();
        assert_eq!(render_decimal(&k.values[1].numeric, 6), "-3.28987");
        assert_eq!(render_decimal(&k.values[2].numeric, 6), "-1.93696");
        assert!(exact_kappa_series(3, &ctx).is_none());
    }

    #[test]
    fn small_extraction() {
        let ctx = FloatContext::new(50);
        let store = MemoStore::new();
        let k = extract_kappa(2, 41, 20, &ctx, &store).unwrap();
        for (i, kv) in k.values.iter().enumerate() {
            let exact = known_kappa(i).unwrap().eval(&ctx);
            assert!(stable_digits(&kv.numeric, &exact, 30) >= kv.stable_digits.min(8), "κ_{i}");
        }
        assert!(matches!(extract_kappa(3, 41, 3, &ctx, &store), Err(Error::Window(_))));
    }
}
