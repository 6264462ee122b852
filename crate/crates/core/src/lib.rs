//! Exact evaluation of reduced Masur-Veech volumes of strata of abelian
//! differentials, and of the coefficients of their large-genus expansion.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactnum`]: rationals, rational multiples of powers of π, polynomials
//!   in π², truncated power series and high-precision decimal evaluation.
//! * [`profiles`]: singularity profiles and the enumerators (compositions,
//!   ordered set partitions) that drive the volume recursion.
//! * [`volumes`]: the minimal-strata series identity, the multi-zero
//!   recursion (direct and fast), memoization and diagnostic splits.
//! * [`pochhammer`]: symbolic sums in the basis `1/(g^m (2g-3+n)_l)`.
//! * [`expansion`]: κ extraction, the bootstrap of the expansion
//!   coefficients, the independent least-squares fit and residual reports.

pub mod error;
pub mod exactnum;
pub mod expansion;
pub mod pochhammer;
pub mod profiles;
pub mod volumes;

pub use error::{Error, Result};
pub use exactnum::{Decimal, FloatContext, PiMonomial, PiPoly, Rational, TruncatedSeries};
pub use profiles::Profile;
pub use volumes::MemoStore;
