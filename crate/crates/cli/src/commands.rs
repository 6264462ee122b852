use std::fmt::Write as _;

use mv_core::exactnum::{format_rational, ln_abs, render_decimal, FloatContext};
use mv_core::expansion::{
    balanced_profile, bootstrap_expansion, exact_kappa_series, extract_kappa, fit_expansion, loglog_slope,
    recursion_residual_with, ExpansionTable, FitConfig, KappaSeries, Normalization,
};
use mv_core::volumes::{a_value_fast, diagnostic_split, v_value, vol_value, SplitConfig};
use mv_core::{MemoStore, Profile};

use crate::args::{Cli, Command, Format, GRange};
use crate::report::{csv_field, CrossCheck, DecaySlope, DiagnoseOutput, FitOutput, MinimalRow, ValueJson, VolumeReport};
use crate::Failure;

/// First genus and window length used when κ has to be extracted numerically.
pub const KAPPA_G0: u64 = 41;
pub const KAPPA_COUNT: usize = 20;

pub fn dispatch(cli: &Cli, store: &MemoStore) -> Result<String, Failure> {
    let ctx = FloatContext::new(cli.digits as usize);
    match &cli.command {
        Command::Volume { positional, profile } => {
            let text = positional.as_deref().or(profile.as_deref()).unwrap_or_default();
            volume(text, cli.format, &ctx, store)
        }
        Command::Minimal { gmax } => Ok(minimal(*gmax, cli.format, &ctx, store)),
        Command::Coeffs { order } => coeffs(*order, cli.format, &ctx, store),
        Command::Fit { order, g_range, families, lambda } => {
            let cfg = FitConfig {
                families: families.clone(),
                g_range: g_range.lo..=g_range.hi,
                lambda: *lambda,
                digits: ctx.digits(),
                weighting: Default::default(),
            };
            fit(*order, &cfg, cli.format, &ctx, store)
        }
        Command::Diagnose { profile, g_range } => diagnose(profile, *g_range, cli.format, &ctx, store),
        Command::Verify => unreachable!("handled before the store is opened"),
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

pub fn parse_profile(text: &str) -> Result<Profile, Failure> {
    text.parse::<Profile>().map_err(|e| Failure::Usage(e.to_string()))
}

pub fn volume(text: &str, format: Format, ctx: &FloatContext, store: &MemoStore) -> Result<String, Failure> {
    let mu = parse_profile(text)?;
    if !mu.is_admissible() {
        eprintln!("warning: profile {mu} is not admissible (|μ| − n is odd); its volume is 0");
    }
    let v = v_value(&mu, store);
    let vol = vol_value(&mu, store);
    let report = VolumeReport {
        profile: mu.entries().to_vec(),
        genus: mu.genus(),
        n: mu.len(),
        v: ValueJson::new(&v, ctx),
        vol: ValueJson::new(&vol, ctx),
    };
    Ok(match format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("profile,genus,n,quantity,pi_power,rational,decimal\n");
            for (name, val) in [("v", &report.v), ("Vol", &report.vol)] {
                let genus = report.genus.map(|g| g.to_string()).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{},{genus},{},{name},{},{},{}",
                    csv_field(&mu.to_string()),
                    report.n,
                    val.pi_power,
                    val.rational,
                    val.decimal
                );
            }
            s
        }
        Format::Text => {
            let genus = report.genus.map(|g| g.to_string()).unwrap_or_else(|| "-".into());
            format!(
                "profile {mu}  (genus {genus}, n = {})\nv   = {v} ≈ {}\nVol = {vol} ≈ {}\n",
                report.n, report.v.decimal, report.vol.decimal
            )
        }
    })
}

pub fn minimal(gmax: u64, format: Format, ctx: &FloatContext, store: &MemoStore) -> String {
    let a = store.minimal(gmax as usize);
    let rows: Vec<MinimalRow> = (1..=gmax)
        .map(|g| {
            let mu = Profile::single(2 * g as u32 - 1);
            MinimalRow { g, a: format_rational(&a[g as usize - 1]), v: ValueJson::new(&v_value(&mu, store), ctx) }
        })
        .collect();
    match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("g,a,pi_power,v_rational,v_decimal\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{},{}", r.g, r.a, r.v.pi_power, r.v.rational, r.v.decimal);
            }
            s
        }
        Format::Text => {
            let width = rows.iter().map(|r| r.a.len()).max().unwrap_or(1).max(8);
            let mut s = format!("{:>4}  {:<width$}  {}\n", "g", "a(2g-1)", "v(2g-1)");
            for r in &rows {
                let _ = writeln!(s, "{:>4}  {:<width$}  {}", r.g, r.a, r.v.decimal);
            }
            s
        }
    }
}

/// Closed forms where available, otherwise numeric extraction.
pub fn kappa_for(order: u32, ctx: &FloatContext, store: &MemoStore) -> Result<KappaSeries, Failure> {
    match exact_kappa_series(order as usize, ctx) {
        Some(k) => Ok(k),
        None => Ok(extract_kappa(order as usize, KAPPA_G0, KAPPA_COUNT.max(order as usize + 1), ctx, store)?),
    }
}

fn render_table(table: &ExpansionTable, format: Format, digits: usize) -> String {
    match format {
        Format::Json => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
        Format::Csv => table.to_csv(),
        Format::Text => table.to_text(digits),
    }
}

pub fn coeffs(order: u32, format: Format, ctx: &FloatContext, store: &MemoStore) -> Result<String, Failure> {
    let kappas = kappa_for(order, ctx, store)?;
    let table = bootstrap_expansion(order, &kappas, store, ctx)?;
    Ok(render_table(&table, format, ctx.digits()))
}

pub fn fit(order: u32, cfg: &FitConfig, format: Format, ctx: &FloatContext, store: &MemoStore) -> Result<String, Failure> {
    if cfg.families.is_empty() {
        return Err(Failure::Usage("no sample families".into()));
    }
    let report = fit_expansion(order, cfg, store)?;
    let boot_order = order.max(1);
    let bootstrap = bootstrap_expansion(boot_order, &kappa_for(boot_order, ctx, store)?, store, ctx)?;
    let mut cross_validation = Vec::new();
    for f in &report.table.coefficients {
        let Some(b) = bootstrap.get(f.k, f.l) else { continue };
        let delta = ctx.round(&(&f.numeric - &b.numeric));
        let agrees = f.uncertainty.as_ref().is_some_and(|u| {
            let bound = u * &ctx.integer(10);
            let abs = if delta < mv_core::Decimal::ZERO { -delta.clone() } else { delta.clone() };
            abs <= bound
        });
        cross_validation.push(CrossCheck {
            k: f.k,
            l: f.l,
            fit: render_decimal(&f.numeric, ctx.digits()),
            bootstrap: render_decimal(&b.numeric, ctx.digits()),
            delta: render_decimal(&delta, 6),
            uncertainty: f.uncertainty.as_ref().map(|u| render_decimal(u, 6)),
            agrees,
        });
    }
    let out = FitOutput {
        samples: report.samples,
        log10_pivot_ratio: report.log10_pivot_ratio,
        fit: report.table,
        bootstrap,
        cross_validation,
    };
    Ok(match format {
        Format::Json => json(&out),
        Format::Csv => {
            let mut s = String::from("k,l,fit,bootstrap,delta,uncertainty,agrees\n");
            for c in &out.cross_validation {
                let u = c.uncertainty.clone().unwrap_or_default();
                let _ = writeln!(s, "{},{},{},{},{},{u},{}", c.k, c.l, c.fit, c.bootstrap, c.delta, c.agrees);
            }
            s
        }
        Format::Text => {
            let mut s = out.fit.to_text(ctx.digits());
            let _ = writeln!(s, "\n{} samples, normal-equation pivot spread 10^{:.1}", out.samples, out.log10_pivot_ratio);
            let _ = writeln!(s, "cross-validation against the inductive construction (agree: |Δ| <= 10·uncertainty):");
            for c in &out.cross_validation {
                let u = c.uncertainty.as_deref().unwrap_or("?");
                let verdict = if c.agrees { "agree" } else { "DIFFER" };
                let _ = writeln!(s, "  c_{{{},{}}}: Δ = {} (± {u})  {verdict}", c.k, c.l, c.delta);
            }
            s
        }
    })
}

fn decay_slope(range: GRange, norm: Normalization, ctx: &FloatContext, store: &MemoStore) -> Option<f64> {
    let pts: Vec<(f64, f64)> = (range.lo..=range.hi)
        .filter_map(|g| {
            let res = recursion_residual_with(&balanced_profile(g, 2), 1, norm, ctx, store)?;
            Some((g as f64, ln_abs(&res)))
        })
        .collect();
    loglog_slope(&pts)
}

pub fn diagnose(text: &str, range: GRange, format: Format, ctx: &FloatContext, store: &MemoStore) -> Result<String, Failure> {
    let mu = parse_profile(text)?;
    if mu.len() < 2 {
        return Err(Failure::Usage("diagnose needs a profile with at least two entries".into()));
    }
    let split = diagnostic_split(&mu, mu.size() as u32, SplitConfig::default(), store);
    let a = a_value_fast(&mu, store);
    let slopes = [(Normalization::Pochhammer, "(2g-3+n)_{2i}"), (Normalization::Bare, "none")]
        .into_iter()
        .map(|(norm, name)| DecaySlope {
            family: "(g,g)".into(),
            g_lo: range.lo,
            g_hi: range.hi,
            normalization: name.into(),
            slope: decay_slope(range, norm, ctx, store),
        })
        .collect();
    let out = DiagnoseOutput { profile: mu.entries().to_vec(), a: format_rational(&a), split, slopes };
    Ok(match format {
        Format::Json => json(&out),
        Format::Csv => {
            let mut s = String::from("quantity,m,l,D,value\n");
            for (m, q) in &out.split.by_m {
                let _ = writeln!(s, "A,{m},,,{}", format_rational(q));
            }
            for ((m, l), q) in &out.split.by_ml {
                let _ = writeln!(s, "A,{m},{l},,{}", format_rational(q));
            }
            for ((m, l, d), q) in &out.split.by_mld {
                let _ = writeln!(s, "A,{m},{l},{d},{}", format_rational(q));
            }
            for (m, q) in &out.split.barred {
                let _ = writeln!(s, "Abar,{m},,,{}", format_rational(q));
            }
            s
        }
        Format::Text => {
            let mut s = format!("profile {mu}: a = {}\n", out.a);
            for (m, q) in &out.split.by_m {
                let _ = writeln!(s, "A_{m} = {}", format_rational(q));
            }
            for ((m, l), q) in &out.split.by_ml {
                let _ = writeln!(s, "A_{m}^{l} = {}", format_rational(q));
            }
            for ((m, l, d), q) in &out.split.by_mld {
                let _ = writeln!(s, "A_{m}^{{{l},{d}}} = {}", format_rational(q));
            }
            for (m, q) in &out.split.barred {
                let _ = writeln!(s, "Abar_{m} = {}", format_rational(q));
            }
            for sl in &out.slopes {
                let slope = sl.slope.map(|x| format!("{x:.3}")).unwrap_or_else(|| "n/a".into());
                let _ = writeln!(
                    s,
                    "recursion remainder on {} for g in [{}, {}], denominator {}: log-log slope {slope}",
                    sl.family, sl.g_lo, sl.g_hi, sl.normalization
                );
            }
            s
        }
    })
}
