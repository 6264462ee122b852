//! Acceptance checks. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails.

use std::time::{Duration, Instant};

use mv_core::exactnum::{ln_abs, rat, to_f64, FloatContext, PiPoly};
use mv_core::expansion::{
    balanced_profile, bootstrap_expansion, exact_kappa_series, extract_kappa, fit_expansion, loglog_slope,
    recursion_residual, FitConfig,
};
use mv_core::pochhammer::{reduce_p, PochSum};
use mv_core::profiles::PairChoice;
use mv_core::volumes::{a_value, a_value_fast, a_value_with, kappa_tilde_prime, minimal_strata_a, v_value};
use mv_core::{MemoStore, PiMonomial, Profile, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MINIMAL_BUDGET: Duration = Duration::from_secs(10);
const SWEEP_SIZE: u32 = 12;
const SWEEP_LEN: usize = 4;
const KAPPA0_ABS_TOL: f64 = 1e-6;
const KAPPA1_REL_TOL: f64 = 1e-3;
const KAPPA_G0: u64 = 41;
const KAPPA_COUNT: usize = 20;
const DIGITS: usize = 50;
const DISPLAY_REL_TOL: f64 = 1e-4;
const FIT_REL_TOL: f64 = 0.02;
const FIT_TARGET_C01: f64 = -6.5797;
const POCH_POINTS: usize = 100;
const SHIFT_SLOPE_SLACK: f64 = 0.2;
const RECURSION_SLOPE_MAX: f64 = -3.5;
const VERIFY_BUDGET: Duration = Duration::from_secs(600);

type Verdict = Result<String, String>;

fn p(s: &str) -> Profile {
    s.parse().unwrap()
}

fn check(cond: bool, ok: String, bad: String) -> Verdict {
    if cond {
        Ok(ok)
    } else {
        Err(bad)
    }
}

fn sweep() -> Vec<Profile> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Profile>) {
        if !cur.is_empty() {
            out.push(Profile::from_entries(cur.clone()));
        }
        if cur.len() < SWEEP_LEN {
            for k in 1..=max.min(rem) {
                cur.push(k);
                rec(rem - k, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(SWEEP_SIZE, SWEEP_SIZE, &mut Vec::new(), &mut out);
    out.retain(Profile::is_admissible);
    out
}

fn minimal_strata() -> Verdict {
    let start = Instant::now();
    let a = minimal_strata_a(50);
    let took = start.elapsed();
    check(
        a[1] == rat(3, 640) && a[2] == rat(1525, 580608) && a.len() == 50 && took < MINIMAL_BUDGET,
        format!("a(3) = 3/640, a(5) = 1525/580608, gmax = 50 in {took:.2?}"),
        format!("a(3) = {}, a(5) = {}, gmax = 50 in {took:.2?}", a[1], a[2]),
    )
}

fn multi_zero(store: &MemoStore) -> Verdict {
    let a11 = a_value_fast(&p("1,1"), store);
    let a33 = a_value_fast(&p("3,3"), store);
    let v33 = v_value(&p("3,3"), store);
    check(
        a11 == rat(1, 12) && a33 == rat(153, 8960) && v33 == PiMonomial::new(rat(17, 5600), 3),
        "a(1,1) = 1/12, a(3,3) = 153/8960, v(3,3) = 17/5600 · π^6".into(),
        format!("a(1,1) = {a11}, a(3,3) = {a33}, v(3,3) = {v33}"),
    )
}

fn simple_zero(store: &MemoStore) -> Verdict {
    let bad: Vec<&str> = ["1", "3", "5", "3,3", "1,1"]
        .into_iter()
        .filter(|s| v_value(&p(s).with(1), store) != v_value(&p(s), store))
        .collect();
    check(bad.is_empty(), "5 profiles".into(), format!("differs on {bad:?}"))
}

fn order_independence() -> Verdict {
    let start = Instant::now();
    let (small, large) = (MemoStore::new(), MemoStore::new());
    let profiles: Vec<Profile> = sweep().into_iter().filter(|mu| mu.len() >= 2).collect();
    let bad: Vec<String> = profiles
        .iter()
        .filter(|mu| a_value_with(mu, &small, PairChoice::Smallest) != a_value_with(mu, &large, PairChoice::Largest))
        .map(|mu| mu.to_string())
        .collect();
    let took = start.elapsed();
    check(
        bad.is_empty() && took < Duration::from_secs(60),
        format!("{} profiles in {took:.2?}", profiles.len()),
        format!("mismatch on {bad:?} ({took:.2?})"),
    )
}

fn oracle_equivalence() -> Verdict {
    let (direct, fast) = (MemoStore::new(), MemoStore::new());
    let profiles = sweep();
    let bad: Vec<String> =
        profiles.iter().filter(|mu| a_value_fast(mu, &fast) != a_value(mu, &direct)).map(|mu| mu.to_string()).collect();
    check(bad.is_empty(), format!("{} profiles", profiles.len()), format!("mismatch on {bad:?}"))
}

fn limit_constant(store: &MemoStore) -> Verdict {
    let start = Instant::now();
    let ctx = FloatContext::new(DIGITS);
    let k = extract_kappa(1, KAPPA_G0, KAPPA_COUNT, &ctx, store).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let k0 = to_f64(&k.values[0].numeric);
    let k1 = to_f64(&k.values[1].numeric);
    let exact1 = -std::f64::consts::PI.powi(2) / 3.0;
    let (d0, d1) = ((k0 - 4.0).abs(), (k1 / exact1 - 1.0).abs());
    check(
        d0 < KAPPA0_ABS_TOL && d1 < KAPPA1_REL_TOL && took < Duration::from_secs(60),
        format!("|κ_0 − 4| = {d0:.1e}, κ_1 relative error {d1:.1e}, {took:.2?}"),
        format!("κ_0 = {k0}, κ_1 = {k1}, {took:.2?}"),
    )
}

fn bootstrap_display(store: &MemoStore) -> Verdict {
    let ctx = FloatContext::new(DIGITS);
    let kappas = exact_kappa_series(2, &ctx).unwrap();
    let t = bootstrap_expansion(2, &kappas, store, &ctx).map_err(|e| e.to_string())?;
    let exact = |k, l| t.get(k, l).and_then(|c| c.exact.clone());
    let value = |k, l| to_f64(&t.get(k, l).unwrap().numeric);
    let pi2 = std::f64::consts::PI.powi(2);
    let target20 = (-27.0 * pi2 + pi2 * pi2) / 72.0;
    let target02 = pi2 / 6.0;
    let rel = |x: f64, y: f64| ((x - y) / y).abs();
    let head = exact(0, 0) == Some(PiPoly::constant(4.into())) && exact(0, 1) == Some(PiPoly::monomial(rat(-2, 3), 1));
    let (r20, r02) = (rel(value(2, 0), target20), rel(value(0, 2), target02));
    check(
        head && r20 < DISPLAY_REL_TOL && r02 < DISPLAY_REL_TOL,
        "c_{0,0}, c_{0,1} exact; c_{2,0}, c_{0,2} match".into(),
        format!(
            "c_{{0,0}}, c_{{0,1}} exact: {head}; c_{{2,0}} = {} (target {target20:.6}), c_{{0,2}} = {} (target {target02:.6})",
            value(2, 0),
            value(0, 2)
        ),
    )
}

fn independent_fit(store: &MemoStore) -> Verdict {
    let start = Instant::now();
    let cfg = FitConfig { families: vec![1, 2], g_range: 15..=40, digits: DIGITS, ..Default::default() };
    let report = fit_expansion(2, &cfg, store).map_err(|e| e.to_string())?;
    let c01 = to_f64(&report.table.get(0, 1).unwrap().numeric);
    let rel = (c01 / FIT_TARGET_C01 - 1.0).abs();
    check(
        rel < FIT_REL_TOL,
        format!("c_{{0,1}} = {c01:.5} ({:.2}% off), {} samples, {:.2?}", rel * 100.0, report.samples, start.elapsed()),
        format!("c_{{0,1}} = {c01:.5} ({:.2}% off)", rel * 100.0),
    )
}

fn pochhammer_algebra() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let value = |f: &PochSum, g: i64, n: i64| f.eval_rational(g, n).unwrap().unwrap();
    let random_sum = |rng: &mut ChaCha8Rng, min_l: u32| {
        let terms: Vec<((u32, u32), Rational)> = (0..rng.gen_range(1..6))
            .map(|_| ((rng.gen_range(0..=3), rng.gen_range(min_l..=min_l + 3)), rat(rng.gen_range(-9..=9), rng.gen_range(1..=7))))
            .collect();
        PochSum::from_terms(8, terms)
    };
    for _ in 0..POCH_POINTS {
        let (g, n) = (rng.gen_range(4..300i64), rng.gen_range(2..80i64));
        let f = random_sum(&mut rng, 0);
        if value(&f.delta(), g, n) != value(&f, g, n) - value(&f, g, n - 1) {
            return Err(format!("Δ fails at ({g},{n})"));
        }
        let h = random_sum(&mut rng, 2);
        if value(&h.delta_inv().unwrap().delta(), g, n) != value(&h, g, n) {
            return Err(format!("Δ∘Δ⁻¹ fails at ({g},{n})"));
        }
        let poly: Vec<Rational> = (0..rng.gen_range(1..4)).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
        let l = poly.len() as u32 - 1 + rng.gen_range(0..3);
        let big_p = 2 * g - 3 + n;
        let mut expected = Rational::ZERO;
        for (k, c) in poly.iter().enumerate() {
            expected += c * Rational::from(big_p).pow(k as isize);
        }
        for j in 0..l as i64 {
            expected /= Rational::from(big_p - j);
        }
        if value(&reduce_p(&poly, l).unwrap(), g, n) != expected {
            return Err(format!("reduceP fails at ({g},{n})"));
        }
    }
    let f = PochSum::from_terms(3, [((1, 0), 1.into()), ((2, 1), (-3).into()), ((1, 1), rat(1, 2)), ((0, 1), 2.into())]);
    let mut slopes = Vec::new();
    for r in [3u32, 4] {
        let approx = f.shift_expand(1, r);
        let ctx = FloatContext::new(30);
        let pts: Vec<(f64, f64)> = [100i64, 1000, 10000]
            .into_iter()
            .map(|g| {
                let big_p = 2 * g;
                let target = value(&f, g - 1, 2) / (Rational::from(big_p) * Rational::from(big_p - 1));
                (g as f64, ln_abs(&ctx.rational(&(value(&approx, g, 3) - target))))
            })
            .collect();
        let slope = loglog_slope(&pts).unwrap();
        if slope > -(r as f64 + 1.0) + SHIFT_SLOPE_SLACK {
            return Err(format!("shiftExpand R={r}: slope {slope:.3}"));
        }
        slopes.push(format!("R={r}: {slope:.2}"));
    }
    Ok(format!("{POCH_POINTS} random points; shift slopes {}", slopes.join(", ")))
}

fn recursion_residual_decay(store: &MemoStore) -> Verdict {
    let ctx = FloatContext::new(DIGITS);
    if kappa_tilde_prime(1, store) != PiMonomial::new(rat(1, 6), 1) {
        return Err("κ̃'_1 != π²/6".into());
    }
    let pts: Vec<(f64, f64)> = (10..=40)
        .map(|g| (g as f64, ln_abs(&recursion_residual(&balanced_profile(g, 2), 1, &ctx, store).unwrap())))
        .collect();
    let slope = loglog_slope(&pts).unwrap();
    check(slope <= RECURSION_SLOPE_MAX, format!("slope {slope:.3}"), format!("slope {slope:.3}"))
}

/// The suite behind `mv verify`, at its default precision and seed.
fn verify_suite() -> Verdict {
    let start = Instant::now();
    let results = mv_cli::verify::suite(DIGITS, 0);
    let took = start.elapsed();
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
    check(
        failed.is_empty() && took < VERIFY_BUDGET,
        format!("{} checks in {took:.2?}", results.len()),
        format!("failed {failed:?} in {took:.2?}"),
    )
}

#[test]
fn acceptance_criteria() {
    let store = MemoStore::new();
    let results: Vec<(&str, Verdict)> = vec![
        ("1 minimal strata", minimal_strata()),
        ("2 multi-zero values", multi_zero(&store)),
        ("3 simple zero", simple_zero(&store)),
        ("4 order independence", order_independence()),
        ("5 fast path oracle", oracle_equivalence()),
        ("6 limit constant", limit_constant(&store)),
        ("7 bootstrap coefficients", bootstrap_display(&store)),
        ("8 independent fit", independent_fit(&store)),
        ("9 Pochhammer algebra", pochhammer_algebra()),
        ("10 recursion remainder", recursion_residual_decay(&store)),
        ("11 verify suite", verify_suite()),
    ];
    let mut failed = Vec::new();
    for (name, verdict) in &results {
        match verdict {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                println!("FAIL {name}: {detail}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
