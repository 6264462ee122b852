//! The number tower used by every other module.
//!
//! Everything labelled "exact" here is unbounded-precision rational
//! arithmetic. Decimal floats only appear through [`FloatContext`], when an
//! exact quantity is evaluated numerically.

mod float;
mod pi;
mod rational;
pub(crate) mod series;

pub use float::{ln_abs, render_decimal, stable_digits, to_f64, Decimal, FloatContext};
pub use pi::{PiMonomial, PiPoly};
pub use rational::{binomial, factorial, format_rational, int, parse_rational, rat, serde_rational, Rational};
pub use series::{series_s, TruncatedSeries};
