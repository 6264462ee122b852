//! Dense linear solves in high-precision decimal arithmetic.

use crate::error::{Error, Result};
use crate::exactnum::{ln_abs, Decimal, FloatContext};

fn abs(x: &Decimal) -> Decimal {
    if x.repr().significand() < &dashu_int::IBig::ZERO {
        -x.clone()
    } else {
        x.clone()
    }
}

fn is_zero(x: &Decimal) -> bool {
    x.repr().significand().is_zero()
}

/// Solution of a square system together with `log10(max pivot / min pivot)`,
/// a cheap conditioning indicator.
pub struct Solved {
    pub x: Vec<Decimal>,
    pub log10_pivot_ratio: f64,
}

/// Gaussian elimination with partial pivoting.
pub fn solve(mut a: Vec<Vec<Decimal>>, mut b: Vec<Decimal>, ctx: &FloatContext) -> Result<Solved> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n), "square system expected");
    let mut pivots = Vec::with_capacity(n);
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| abs(&a[i][c]).cmp(&abs(&a[j][c]))).unwrap();
        if is_zero(&a[p][c]) {
            return Err(Error::RankDeficient(format!("column {c} has no pivot")));
        }
        a.swap(c, p);
        b.swap(c, p);
        pivots.push(ln_abs(&a[c][c]));
        for r in c + 1..n {
            if is_zero(&a[r][c]) {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let sub = &f * &a[c][k];
                a[r][k] = ctx.widen(&a[r][k] - &sub);
            }
            let sub = &f * &b[c];
            b[r] = ctx.widen(&b[r] - &sub);
        }
    }
    let mut x = vec![ctx.integer(0); n];
    for c in (0..n).rev() {
        let mut acc = b[c].clone();
        for k in c + 1..n {
            acc -= &a[c][k] * &x[k];
        }
        x[c] = ctx.widen(acc / &a[c][c]);
    }
    let hi = pivots.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = pivots.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(Solved { x, log10_pivot_ratio: (hi - lo) / std::f64::consts::LN_10 })
}

/// Weighted least squares `min Σ w_i (A_i·x − b_i)²` through the normal equations.
pub fn least_squares(rows: &[Vec<Decimal>], rhs: &[Decimal], weights: &[Decimal], ctx: &FloatContext) -> Result<Solved> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.len() < cols {
        return Err(Error::RankDeficient(format!("{} samples for {cols} unknowns", rows.len())));
    }
    let mut normal = vec![vec![ctx.integer(0); cols]; cols];
    let mut proj = vec![ctx.integer(0); cols];
    for ((row, y), w) in rows.iter().zip(rhs).zip(weights) {
        for i in 0..cols {
            let wi = w * &row[i];
            for j in i..cols {
                normal[i][j] += &wi * &row[j];
            }
            proj[i] += &wi * y;
        }
    }
    for i in 0..cols {
        for j in 0..i {
            normal[i][j] = normal[j][i].clone();
        }
    }
    solve(normal, proj, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, render_decimal};

    #[test]
    fn solves_small_system() {
        let ctx = FloatContext::new(30);
        let d = |n: i64| ctx.integer(n);
        // x + 2y = 5, 3x + 4y = 6  →  x = −4, y = 4.5
        let s = solve(vec![vec![d(1), d(2)], vec![d(3), d(4)]], vec![d(5), d(6)], &ctx).unwrap();
        assert_eq!(render_decimal(&s.x[0], 20), "-4");
        assert_eq!(render_decimal(&s.x[1], 20), "4.5");
        assert!(solve(vec![vec![d(1), d(2)], vec![d(2), d(4)]], vec![d(1), d(1)], &ctx).is_err());
    }

    #[test]
    fn least_squares_recovers_a_line() {
        let ctx = FloatContext::new(40);
        let xs: Vec<i64> = (1..=8).collect();
        let rows: Vec<Vec<Decimal>> = xs.iter().map(|&x| vec![ctx.integer(1), ctx.integer(x)]).collect();
        let rhs: Vec<Decimal> = xs.iter().map(|&x| ctx.rational(&rat(3 * x - 1, 7))).collect();
        let w = vec![ctx.integer(1); xs.len()];
        let s = least_squares(&rows, &rhs, &w, &ctx).unwrap();
        assert_eq!(render_decimal(&s.x[0], 30), render_decimal(&ctx.rational(&rat(-1, 7)), 30));
        assert_eq!(render_decimal(&s.x[1], 30), render_decimal(&ctx.rational(&rat(3, 7)), 30));
    }
}
