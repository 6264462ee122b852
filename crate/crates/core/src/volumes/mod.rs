//! Exact values `a(μ)` and the reduced volumes `v(μ)`.
//!
//! `a(μ) = |μ|! · v(μ) / (2 (2π)^{2g})` is rational. Minimal strata come from a
//! series identity, everything else from the multi-zero recursion, either
//! enumerated literally ([`a_value`]) or through the logarithm form
//! ([`a_value_fast`]). Both share a [`MemoStore`].

mod cache;
mod direct;
mod fast;
mod memo;
mod minimal;
mod setpoly;
mod split;

pub use cache::{load_cache, parse_cache, render_cache, save_cache, CACHE_HEADER};
pub use direct::{a_value, a_value_with};
pub use fast::{a_value_fast, MAX_FAST_MARKED};
pub use memo::MemoStore;
pub use minimal::minimal_strata_a;
pub use split::{diagnostic_split, kappa_tilde_prime, recombine, DiagnosticSplit, SplitConfig};

use dashu_int::UBig;

use crate::exactnum::{factorial, PiMonomial, Rational};
use crate::profiles::Profile;

/// `v(μ) = 2 (2π)^{2g} a(μ) / |μ|!`, a rational multiple of `π^{2g}`.
pub fn v_value(mu: &Profile, store: &MemoStore) -> PiMonomial {
    let Some(g) = mu.genus() else {
        return PiMonomial::zero();
    };
    let a = a_value_fast(mu, store);
    v_from_a(mu, g, &a)
}

pub(crate) fn v_from_a(mu: &Profile, g: u64, a: &Rational) -> PiMonomial {
    let scale = Rational::from(UBig::from(2u8) * UBig::from(4u8).pow(g as usize)) / Rational::from(factorial(mu.size()));
    PiMonomial::new(a * scale, g as u32)
}

/// `Vol(μ) = v(μ) / m(μ)`.
pub fn vol_value(mu: &Profile, store: &MemoStore) -> PiMonomial {
    let v = v_value(mu, store);
    let m = Rational::from(mu.product());
    PiMonomial::new(v.coeff() / m, v.pi_exp())
}
