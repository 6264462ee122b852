use std::ops::{Add, Mul, Neg, Sub};

use super::{factorial, int, Rational};
use dashu_int::UBig;

/// Formal power series `Σ c_i t^i` known exactly up to `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series of the given order; missing coefficients are zero, extra ones dropped.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::ZERO);
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Rational::ONE], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`; zero past the truncation order is *not* implied,
    /// so asking beyond it panics.
    pub fn coeff(&self, i: usize) -> &Rational {
        assert!(i <= self.order(), "t^{i} lies beyond the truncation order {}", self.order());
        &self.coeffs[i]
    }

    pub fn set_coeff(&mut self, i: usize, q: Rational) {
        self.coeffs[i] = q;
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative inverse; `None` when the constant term vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let inv0 = Rational::ONE / c0;
        let mut out = vec![inv0.clone()];
        for n in 1..=self.order() {
            let mut s = Rational::ZERO;
            for k in 1..=n {
                let c = &self.coeffs[k];
                if !c.is_zero() {
                    s += c * &out[n - k];
                }
            }
            out.push(-(s * &inv0));
        }
        Some(Self { coeffs: out })
    }

    /// `self^k`. Uses the J.C.P. Miller recurrence when the constant term is
    /// invertible, binary powering otherwise.
    pub fn pow(&self, k: u64) -> Self {
        let order = self.order();
        if k == 0 {
            return Self::one(order);
        }
        let a = &self.coeffs;
        if a[0].is_zero() {
            let mut base = self.clone();
            let mut acc = Self::one(order);
            let mut e = k;
            while e > 0 {
                if e & 1 == 1 {
                    acc = &acc * &base;
                }
                e >>= 1;
                if e > 0 {
                    base = &base * &base;
                }
            }
            return acc;
        }
        let inv0 = Rational::ONE / &a[0];
        let k1 = int(k as i64 + 1);
        let mut b = vec![a[0].pow(k as isize)];
        for n in 1..=order {
            let mut s = Rational::ZERO;
            for j in 1..=n {
                if a[j].is_zero() {
                    continue;
                }
                let w = &k1 * int(j as i64) - int(n as i64);
                s += w * &a[j] * &b[n - j];
            }
            b.push(s * &inv0 / int(n as i64));
        }
        Self { coeffs: b }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::ZERO; order + 1];
        for (i, x) in self.coeffs.iter().enumerate().take(order + 1) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !y.is_zero() {
                    coeffs[i + j] += x * y;
                }
            }
        }
        TruncatedSeries { coeffs }
    }
}

/// `sin(t/2)/(t/2)` up to `t^order`.
fn sinc_half(order: usize) -> TruncatedSeries {
    let coeffs = (0..=order)
        .map(|i| {
            if i % 2 == 1 {
                return Rational::ZERO;
            }
            let k = i / 2;
            let den = factorial(2 * k as u64 + 1) * (UBig::from(4u8).pow(k));
            let q = Rational::from_parts(1.into(), den);
            if k % 2 == 0 {
                q
            } else {
                -q
            }
        })
        .collect();
    TruncatedSeries::new(coeffs, order)
}

/// `(t/2)/sin(t/2)` up to `t^order`.
pub fn series_s(order: usize) -> TruncatedSeries {
    sinc_half(order).inverse().expect("constant term is 1")
}

#[cfg(test)]
pub(crate) fn series_s_hyperbolic(order: usize) -> TruncatedSeries {
    let sinc = sinc_half(order);
    let flipped = sinc
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 4 == 2 { -c.clone() } else { c.clone() })
        .collect();
    TruncatedSeries::new(flipped, order).inverse().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    fn series(cs: &[Rational], order: usize) -> TruncatedSeries {
        TruncatedSeries::new(cs.to_vec(), order)
    }

    #[test]
    fn s_coefficients() {
        let s = series_s(6);
        assert_eq!(*s.coeff(0), int(1));
        assert_eq!(*s.coeff(2), rat(1, 24));
        assert_eq!(*s.coeff(4), rat(7, 5760));
        assert_eq!(*s.coeff(6), rat(31, 967680));
        assert_eq!(series_s(0), TruncatedSeries::one(0));
    }

    #[test]
    fn s_parity_and_sign() {
        let s = series_s(40);
        for (i, c) in s.coeffs().iter().enumerate() {
            if i % 2 == 1 {
                assert!(c.is_zero(), "odd coefficient t^{i}");
            } else {
                assert!(*c > Rational::ZERO, "t^{i} not positive");
            }
        }
    }

    #[test]
    fn hyperbolic_variant_flips_sign() {
        let h = series_s_hyperbolic(4);
        assert_eq!(*h.coeff(2), rat(-1, 24));
        assert_eq!(*h.coeff(4), rat(7, 5760));
    }

    #[test]
    fn small_products() {
        let a = series(&[int(1), int(1)], 2);
        let b = series(&[int(1), int(-1)], 2);
        assert_eq!(&a * &b, series(&[int(1), int(0), int(-1)], 2));
        let q = rat(3, 7);
        let c = series(&[int(1), int(0), q.clone()], 4);
        let sq = series(&[int(1), int(0), &q * int(2), int(0), &q * &q], 4);
        assert_eq!(c.pow(2), sq);
        assert_eq!(&c * &c, sq);
    }

    #[test]
    fn fourth_power_matches_s() {
        let a = series(&[int(1), int(0), rat(1, 24), int(0), rat(3, 640)], 4);
        let p = a.pow(4);
        assert_eq!(*p.coeff(4), rat(7, 240));
        assert_eq!(*p.coeff(4), series_s(4).coeff(4) * int(24));
    }

    #[test]
    fn order_is_minimum() {
        let a = TruncatedSeries::one(5);
        let b = TruncatedSeries::one(3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    fn arb_series(order: usize, nonzero_head: bool) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec((-9i64..9, 1u64..6), order + 1).prop_map(move |v| {
            let mut cs: Vec<Rational> = v.into_iter().map(|(n, d)| rat(n, d)).collect();
            if nonzero_head && cs[0].is_zero() {
                cs[0] = int(1);
            }
            TruncatedSeries::new(cs, order)
        })
    }

    proptest! {
        #[test]
        fn product_is_convolution(a in arb_series(6, false), b in arb_series(6, false)) {
            let p = &a * &b;
            for n in 0..=6 {
                let mut s = Rational::ZERO;
                for i in 0..=n {
                    s += a.coeff(i) * b.coeff(n - i);
                }
                prop_assert_eq!(p.coeff(n), &s);
            }
        }

        #[test]
        fn miller_matches_repeated_product(a in arb_series(5, true), k in 1u64..6) {
            let mut naive = TruncatedSeries::one(5);
            for _ in 0..k {
                naive = &naive * &a;
            }
            prop_assert_eq!(a.pow(k), naive);
        }

        #[test]
        fn binary_power_without_constant(a in arb_series(5, false), k in 1u64..5) {
            let mut a = a;
            a.set_coeff(0, Rational::ZERO);
            let mut naive = TruncatedSeries::one(5);
            for _ in 0..k {
                naive = &naive * &a;
            }
            prop_assert_eq!(a.pow(k), naive);
        }

        #[test]
        fn inverse_times_self_is_one(a in arb_series(6, true)) {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, TruncatedSeries::one(6));
        }
    }
}
