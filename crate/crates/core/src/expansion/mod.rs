//! Coefficients of the large-genus expansion
//! `v(μ) ≈ Σ_{k+l<=r} c_{k,l} / (g^k (|μ|−1)_l)`.

mod bootstrap;
mod fit;
mod kappa;
mod linalg;
mod residual;
mod table;

pub use bootstrap::{bootstrap_expansion, bootstrap_step, bootstrap_sum, seed};
pub use fit::{balanced_profile, fit_expansion, sample_profiles, FitConfig, FitReport, Weighting};
pub use kappa::{exact_kappa_series, extract_kappa, known_kappa, MIN_STABLE_DIGITS};
pub use linalg::{least_squares, solve, Solved};
pub use residual::{eval_table, loglog_slope, recursion_residual, recursion_residual_with, report_on, Normalization, residual_report, summarize, BAND_WIDTH, ResidualReport, ResidualRow};
pub use table::{
    serde_decimal, CoefficientRecord, ExpansionTable, KappaSeries, KappaValue, Provenance, ResidualBand, ResidualSummary,
};
