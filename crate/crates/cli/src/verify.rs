//! The property suite behind `mv verify`.

use std::fmt::Write as _;

use mv_core::exactnum::{int, ln_abs, rat, stable_digits, to_f64, FloatContext, PiPoly, Rational};
use mv_core::expansion::{
    balanced_profile, bootstrap_sum, exact_kappa_series, extract_kappa, loglog_slope, recursion_residual, seed,
    ExpansionTable,
};
use mv_core::pochhammer::{reduce_p, PochSum};
use mv_core::profiles::PairChoice;
use mv_core::volumes::{
    a_value, a_value_fast, a_value_with, diagnostic_split, kappa_tilde_prime, minimal_strata_a, parse_cache, recombine,
    render_cache, v_value, DiagnosticSplit, SplitConfig,
};
use mv_core::{MemoStore, PiMonomial, Profile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{Cli, Format};
use crate::commands::{KAPPA_COUNT, KAPPA_G0};
use crate::report::CheckResult;
use crate::Failure;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(s: &str) -> Profile {
    s.parse().expect("literal profile")
}

/// Admissible profiles with `|μ| <= size` and at most `len` entries.
fn sweep(size: u32, len: usize) -> Vec<Profile> {
    fn rec(rem: u32, max: u32, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Profile>) {
        if !cur.is_empty() {
            out.push(Profile::from_entries(cur.clone()));
        }
        if cur.len() < len {
            for k in 1..=max.min(rem) {
                cur.push(k);
                rec(rem - k, k, len, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(size, size, len, &mut Vec::new(), &mut out);
    out.retain(Profile::is_admissible);
    out
}

fn minimal_values() -> Outcome {
    let a = minimal_strata_a(50);
    ensure(a.len() == 50, || format!("{} values", a.len()))?;
    ensure(a[0] == rat(1, 24) && a[1] == rat(3, 640) && a[2] == rat(1525, 580608), || "a(1), a(3), a(5)".into())?;
    ensure(a.iter().all(|q| q > &Rational::ZERO), || "non-positive value".into())?;
    Ok("a(1), a(3), a(5) exact; 50 genera".into())
}

fn hand_values(store: &MemoStore) -> Outcome {
    ensure(a_value_fast(&p("1,1"), store) == rat(1, 12), || "a(1,1)".into())?;
    ensure(a_value_fast(&p("3,3"), store) == rat(153, 8960), || "a(3,3)".into())?;
    ensure(v_value(&p("3,3"), store) == PiMonomial::new(rat(17, 5600), 3), || "v(3,3)".into())?;
    ensure(v_value(&p("3"), store) == PiMonomial::new(rat(1, 40), 2), || "v(3)".into())?;
    Ok("a(1,1), a(3,3), v(3,3), v(3)".into())
}

fn marked_points(store: &MemoStore) -> Outcome {
    let list = ["1", "3", "5", "3,3", "1,1", "2,4", "1,3,4"];
    for s in list {
        let mu = p(s);
        ensure(v_value(&mu.with(1), store) == v_value(&mu, store), || format!("v({s},1) != v({s})"))?;
    }
    Ok(format!("{} profiles", list.len()))
}

fn pair_choice(rng: &mut ChaCha8Rng) -> Outcome {
    let (small, large, picked) = (MemoStore::new(), MemoStore::new(), MemoStore::new());
    let profiles: Vec<Profile> = sweep(12, 4).into_iter().filter(|mu| mu.len() >= 2).collect();
    for mu in &profiles {
        let a = a_value_with(mu, &small, PairChoice::Smallest);
        ensure(a == a_value_with(mu, &large, PairChoice::Largest), || format!("{mu}: smallest vs largest"))?;
    }
    let wide: Vec<Profile> = sweep(14, 4).into_iter().filter(|mu| mu.len() >= 3).collect();
    for _ in 0..20 {
        let mu = &wide[rng.gen_range(0..wide.len())];
        let i = rng.gen_range(0..mu.len());
        let j = (i + rng.gen_range(1..mu.len())) % mu.len();
        let a = a_value_with(mu, &picked, PairChoice::Positions(i, j));
        ensure(a == a_value(mu, &small), || format!("{mu}: positions ({i},{j})"))?;
    }
    Ok(format!("{} swept, 20 random position pairs", profiles.len()))
}

fn fast_vs_direct() -> Outcome {
    let (direct, fast) = (MemoStore::new(), MemoStore::new());
    let profiles = sweep(12, 4);
    for mu in &profiles {
        ensure(a_value_fast(mu, &fast) == a_value(mu, &direct), || format!("{mu}"))?;
    }
    Ok(format!("{} profiles", profiles.len()))
}

fn positivity(store: &MemoStore) -> Outcome {
    let profiles = sweep(14, 5);
    for mu in profiles.iter().filter(|mu| mu.genus() >= Some(2)) {
        ensure(v_value(mu, store).coeff() > &Rational::ZERO, || format!("v({mu}) <= 0"))?;
    }
    ensure(v_value(&p("2"), store).is_zero() && v_value(&p("1,2"), store).is_zero(), || "non-admissible".into())?;
    Ok(format!("{} profiles", profiles.len()))
}

fn split_identities(store: &MemoStore) -> Outcome {
    let profiles: Vec<Profile> = sweep(11, 4).into_iter().filter(|mu| mu.len() >= 2).collect();
    for mu in &profiles {
        let split = diagnostic_split(mu, mu.size() as u32, SplitConfig::default(), store);
        ensure(recombine(mu, &split) == a_value_fast(mu, store), || format!("{mu}: recombination"))?;
        let top = mu.len() as u32 - 2;
        for (&m, a_m) in split.by_m.iter().filter(|(&m, _)| m >= 2) {
            let parts = split.by_ml.iter().filter(|((mm, _), _)| *mm == m).fold(Rational::ZERO, |acc, (_, q)| acc + q);
            ensure(&parts == a_m, || format!("{mu}: Σ_l A_{m}^l"))?;
            if mu.len() >= 3 {
                let bar = split.barred.get(&m).cloned().unwrap_or(Rational::ZERO);
                let top_part = split.by_ml.get(&(m, top)).cloned().unwrap_or(Rational::ZERO);
                ensure(bar == a_m - top_part * int(m as i64), || format!("{mu}: barred part at m={m}"))?;
            }
        }
        ensure(!split.barred.contains_key(&1), || format!("{mu}: barred part at m=1"))?;
    }
    Ok(format!("{} profiles", profiles.len()))
}

fn kappa_tilde(store: &MemoStore) -> Outcome {
    ensure(kappa_tilde_prime(1, store) == PiMonomial::new(rat(1, 6), 1), || "κ̃'_1".into())?;
    ensure(kappa_tilde_prime(2, store) == PiMonomial::new(rat(91, 360), 2), || "κ̃'_2".into())?;
    Ok("κ̃'_1 = π²/6, κ̃'_2 = 91π⁴/360".into())
}

fn random_sum(rng: &mut ChaCha8Rng, max_degree: u32, min_l: u32) -> PochSum {
    let terms: Vec<((u32, u32), Rational)> = (0..rng.gen_range(1..6))
        .map(|_| {
            let (m, l) = (rng.gen_range(0..=3), rng.gen_range(min_l..=min_l + 3));
            ((m, l), rat(rng.gen_range(-9..=9), rng.gen_range(1..=7)))
        })
        .collect();
    PochSum::from_terms(max_degree, terms)
}

fn pochhammer_identities(rng: &mut ChaCha8Rng) -> Outcome {
    let value = |f: &PochSum, g: i64, n: i64| f.eval_rational(g, n).map_err(|e| e.to_string()).map(Option::unwrap);
    for _ in 0..100 {
        let (g, n) = (rng.gen_range(4..200i64), rng.gen_range(2..60i64));
        let f = random_sum(rng, 8, 0);
        ensure(value(&f.delta(), g, n)? == value(&f, g, n)? - value(&f, g, n - 1)?, || format!("Δ at ({g},{n})"))?;
        let h = random_sum(rng, 8, 2);
        let back = h.delta_inv().map_err(|e| e.to_string())?.delta();
        ensure(value(&back, g, n)? == value(&h, g, n)?, || format!("Δ∘Δ⁻¹ at ({g},{n})"))?;
        let poly: Vec<Rational> = (0..rng.gen_range(1..4)).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
        let l = poly.len() as u32 - 1 + rng.gen_range(0..3);
        let reduced = reduce_p(&poly, l).map_err(|e| e.to_string())?;
        let big_p = 2 * g - 3 + n;
        let mut num = Rational::ZERO;
        for (k, c) in poly.iter().enumerate() {
            num += c * Rational::from(big_p).pow(k as isize);
        }
        let mut poch = Rational::ONE;
        for j in 0..l as i64 {
            poch *= Rational::from(big_p - j);
        }
        ensure(value(&reduced, g, n)? == num / poch, || format!("reduce at ({g},{n})"))?;
    }
    Ok("100 random points".into())
}

fn shift_truncation() -> Outcome {
    let f = PochSum::from_terms(3, [((1, 0), int(1)), ((2, 1), int(-3)), ((1, 1), rat(1, 2)), ((0, 1), int(2))]);
    let mut detail = String::new();
    for r in [3u32, 4] {
        let approx = f.shift_expand(1, r);
        let mut pts = Vec::new();
        for g in [100i64, 1000, 10000] {
            let n = 3;
            let big_p = 2 * g - 3 + n;
            let target = f.eval_rational(g - 1, n - 1).unwrap().unwrap() / (Rational::from(big_p) * Rational::from(big_p - 1));
            let dev = approx.eval_rational(g, n).unwrap().unwrap() - target;
            pts.push((g as f64, to_f64(&FloatContext::new(30).rational(&dev)).abs().ln()));
        }
        let slope = loglog_slope(&pts).unwrap_or(0.0);
        ensure(slope <= -(r as f64 + 1.0) + 0.2, || format!("R={r}: slope {slope:.3}"))?;
        let _ = write!(detail, "R={r}: {slope:.2} ");
    }
    Ok(detail.trim_end().into())
}

fn kappa_extraction(ctx: &FloatContext, store: &MemoStore) -> Outcome {
    let k = extract_kappa(1, KAPPA_G0, KAPPA_COUNT, ctx, store).map_err(|e| e.to_string())?;
    let k0 = to_f64(&k.values[0].numeric);
    let k1 = to_f64(&k.values[1].numeric);
    let exact1 = -std::f64::consts::PI.powi(2) / 3.0;
    ensure((k0 - 4.0).abs() < 1e-6, || format!("κ_0 = {k0}"))?;
    ensure((k1 / exact1 - 1.0).abs() < 1e-3, || format!("κ_1 = {k1}"))?;
    Ok(format!("κ_0, κ_1 stable to {} and {} digits", k.values[0].stable_digits, k.values[1].stable_digits))
}

fn bootstrap(ctx: &FloatContext, store: &MemoStore) -> Outcome {
    let exact = exact_kappa_series(2, ctx).expect("closed forms through order 2");
    let q2 = bootstrap_sum(2, &exact, store).map_err(|e| e.to_string())?;
    ensure(q2.is_exact(), || "inexact order-2 coefficients".into())?;
    ensure(q2.clone().with_max_degree(1) == seed(), || "order 1 part".into())?;
    let c00 = q2.coeff(0, 0).and_then(|c| c.exact().cloned());
    let c01 = q2.coeff(0, 1).and_then(|c| c.exact().cloned());
    ensure(c00 == Some(PiPoly::constant(int(4))), || "c_{0,0}".into())?;
    ensure(c01 == Some(PiPoly::monomial(rat(-2, 3), 1)), || "c_{0,1}".into())?;
    let k3 = extract_kappa(3, KAPPA_G0, KAPPA_COUNT, ctx, store).map_err(|e| e.to_string())?;
    let q3 = bootstrap_sum(3, &k3, store).map_err(|e| e.to_string())?;
    ensure(q3.clone().with_max_degree(2) == q2, || "orders 2 and 3 are not nested".into())?;
    for (m, kv) in k3.values.iter().enumerate() {
        let mut sum = ctx.integer(0);
        for (c, s) in q3.at_n1_series(3) {
            sum += c.eval(ctx) * ctx.rational(s.coeff(m));
        }
        let digits = stable_digits(&sum, &kv.numeric, ctx.digits());
        ensure(digits >= kv.stable_digits.min(ctx.digits() - 5), || format!("κ_{m} reproduced to {digits} digits"))?;
    }
    Ok("exact through order 2, nested, κ reproduced".into())
}

fn recursion_decay(ctx: &FloatContext, store: &MemoStore) -> Outcome {
    let pts: Vec<(f64, f64)> = (10..=40)
        .map(|g| (g as f64, ln_abs(&recursion_residual(&balanced_profile(g, 2), 1, ctx, store).expect("pair profile"))))
        .collect();
    let slope = loglog_slope(&pts).unwrap_or(0.0);
    ensure(slope <= -3.5, || format!("slope {slope:.3}"))?;
    Ok(format!("slope {slope:.3} on (g,g), g in [10,40]"))
}

fn serialization(ctx: &FloatContext, store: &MemoStore) -> Outcome {
    let text = render_cache(store);
    let copy = MemoStore::new();
    parse_cache(&text, &copy).map_err(|e| e.to_string())?;
    ensure(render_cache(&copy) == text, || "cache text".into())?;
    let exact = exact_kappa_series(2, ctx).expect("closed forms");
    let table = mv_core::expansion::bootstrap_expansion(2, &exact, store, ctx).map_err(|e| e.to_string())?;
    let back: ExpansionTable = serde_json::from_str(&table.to_json()).map_err(|e| e.to_string())?;
    ensure(back == table, || "expansion table JSON".into())?;
    let split = diagnostic_split(&p("3,3,5"), 11, SplitConfig::default(), store);
    let back: DiagnosticSplit = serde_json::from_str(&serde_json::to_string(&split).unwrap()).map_err(|e| e.to_string())?;
    ensure(back == split, || "split JSON".into())?;
    Ok(format!("cache with {} entries, tables", copy.len()))
}

/// Runs every check on a fresh store.
pub fn suite(digits: usize, seed: u64) -> Vec<CheckResult> {
    let ctx = FloatContext::new(digits);
    let store = MemoStore::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks: Vec<(&str, Outcome)> = vec![
        ("minimal strata values", minimal_values()),
        ("hand-computed values", hand_values(&store)),
        ("simple zero leaves v unchanged", marked_points(&store)),
        ("order independence", pair_choice(&mut rng)),
        ("fast path equals direct recursion", fast_vs_direct()),
        ("positivity and admissibility", positivity(&store)),
        ("diagnostic split identities", split_identities(&store)),
        ("kappa-tilde constants", kappa_tilde(&store)),
        ("Pochhammer identities", pochhammer_identities(&mut rng)),
        ("shift truncation order", shift_truncation()),
        ("kappa extraction", kappa_extraction(&ctx, &store)),
        ("inductive construction", bootstrap(&ctx, &store)),
        ("recursion remainder decay", recursion_decay(&ctx, &store)),
        ("serialization round trips", serialization(&ctx, &store)),
    ];
    checks
        .into_iter()
        .map(|(name, outcome)| {
            let (passed, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult { name: name.into(), passed, detail }
        })
        .collect()
}

pub fn run(cli: &Cli) -> Result<String, Failure> {
    let results = suite(cli.digits as usize, cli.seed);
    let failed = results.iter().filter(|r| !r.passed).count();
    let out = match cli.format {
        Format::Json => serde_json::to_string_pretty(&results).expect("serializable") + "\n",
        Format::Csv => {
            let mut s = String::from("check,passed,detail\n");
            for r in &results {
                let _ = writeln!(s, "{},{},{}", crate::report::csv_field(&r.name), r.passed, crate::report::csv_field(&r.detail));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &results {
                let _ = writeln!(s, "{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
            }
            let _ = writeln!(s, "{}/{} checks passed", results.len() - failed, results.len());
            s
        }
    };
    if failed > 0 {
        Err(Failure::Verify(failed, out))
    } else {
        Ok(out)
    }
}
