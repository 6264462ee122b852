use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;

use super::Rational;

/// Decimal arbitrary-precision float with round-half-even.
pub type Decimal = FBig<HalfEven, 10>;

/// Extra working digits carried on top of the requested precision.
const GUARD_DIGITS: usize = 20;

/// Decimal working precision for every numeric pipeline.
///
/// `digits` is the number of significant digits reported to the user;
/// arithmetic runs with a few guard digits on top.
#[derive(Clone, Debug)]
pub struct FloatContext {
    digits: usize,
    pi: Decimal,
}

impl PartialEq for FloatContext {
    fn eq(&self, other: &Self) -> bool {
        self.digits == other.digits
    }
}

impl Default for FloatContext {
    fn default() -> Self {
        Self::new(50)
    }
}

impl FloatContext {
    pub fn new(digits: usize) -> Self {
        assert!(digits > 0, "precision must be positive");
        let pi = Decimal::pi(digits + GUARD_DIGITS);
        Self { digits, pi }
    }

    /// A context whose working precision matches that of `x`.
    pub fn for_decimal(x: &Decimal) -> Self {
        Self::new(x.precision().saturating_sub(GUARD_DIGITS).max(1))
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    pub fn working_precision(&self) -> usize {
        self.digits + GUARD_DIGITS
    }

    pub fn doubled(&self) -> Self {
        Self::new(2 * self.digits)
    }

    pub fn pi(&self) -> &Decimal {
        &self.pi
    }

    /// π^(2e) at working precision.
    pub fn pi_even_power(&self, e: u32) -> Decimal {
        self.pi.sqr().powi(IBig::from(e))
    }

    pub fn rational(&self, q: &Rational) -> Decimal {
        q.to_float::<HalfEven, 10>(self.working_precision()).value()
    }

    pub fn integer(&self, n: i64) -> Decimal {
        self.widen(Decimal::from(n))
    }

    /// Re-tags `x` with the working precision so subsequent operations round there.
    pub fn widen(&self, x: Decimal) -> Decimal {
        x.with_precision(self.working_precision()).value()
    }

    /// Rounds to the reported number of significant digits.
    pub fn round(&self, x: &Decimal) -> Decimal {
        x.clone().with_precision(self.digits).value()
    }
}

/// Renders `x` rounded half-even to `digits` significant digits.
///
/// Plain positional notation is used for moderate exponents, scientific
/// notation (`1.2345e-12`) otherwise.
pub fn render_decimal(x: &Decimal, digits: usize) -> String {
    let x = x.clone().with_precision(digits.max(1)).value();
    let repr = x.repr();
    let sig = repr.significand();
    if *sig == IBig::ZERO {
        return "0".to_string();
    }
    let negative = *sig < IBig::ZERO;
    let mut mantissa = sig.unsigned_abs_string();
    let mut exponent = repr.exponent();
    while mantissa.len() > 1 && mantissa.ends_with('0') {
        mantissa.pop();
        exponent += 1;
    }
    // value = 0.mantissa × 10^(point)
    let point = exponent + mantissa.len() as isize;
    let body = if (-6..=24).contains(&point) {
        if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), mantissa)
        } else if point as usize >= mantissa.len() {
            format!("{}{}", mantissa, "0".repeat(point as usize - mantissa.len()))
        } else {
            let (head, tail) = mantissa.split_at(point as usize);
            format!("{head}.{tail}")
        }
    } else {
        let (head, tail) = mantissa.split_at(1);
        let tail = if tail.is_empty() { String::new() } else { format!(".{tail}") };
        format!("{head}{tail}e{}", point - 1)
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

trait AbsString {
    fn unsigned_abs_string(&self) -> String;
}

impl AbsString for IBig {
    fn unsigned_abs_string(&self) -> String {
        let s = self.to_string();
        s.trim_start_matches('-').to_string()
    }
}

/// Number of leading significant digits on which `a` and `b` agree, capped at `max`.
pub fn stable_digits(a: &Decimal, b: &Decimal, max: usize) -> usize {
    let diff = a - b;
    if diff.repr().significand().is_zero() {
        return max;
    }
    let scale = if a.repr().significand().is_zero() { b } else { a };
    if scale.repr().significand().is_zero() {
        return 0;
    }
    let rel = ln_abs(&diff) - ln_abs(scale);
    let digits = (-rel / std::f64::consts::LN_10).floor();
    if digits <= 0.0 {
        0
    } else {
        (digits as usize).min(max)
    }
}

/// Natural log of |x| as an `f64`, valid far outside the `f64` exponent range.
pub fn ln_abs(x: &Decimal) -> f64 {
    let repr = x.repr();
    let sig = repr.significand().to_string();
    let sig = sig.trim_start_matches('-');
    let lead: String = sig.chars().take(17).collect();
    let shift = sig.len() - lead.len();
    let lead: f64 = lead.parse().unwrap_or(0.0);
    lead.ln() + (repr.exponent() as f64 + shift as f64) * std::f64::consts::LN_10
}

pub fn to_f64(x: &Decimal) -> f64 {
    x.to_f64().value()
}
