//! Browser bindings for three engine operations: a single volume, the
//! minimal-strata table and the expansion curve against exact volumes.
//!
//! Every entry point returns a JSON string; the plain-Rust functions in
//! [`api`] carry the logic so they can be tested natively.

use wasm_bindgen::prelude::*;

pub mod api {
    use mv_core::exactnum::{format_rational, render_decimal, to_f64, FloatContext};
    use mv_core::expansion::{balanced_profile, bootstrap_expansion, eval_table, exact_kappa_series, extract_kappa};
    use mv_core::volumes::{v_value, vol_value};
    use mv_core::{MemoStore, PiMonomial, Profile};
    use serde_json::{json, Value};

    /// Largest inputs accepted from the page, to keep the tab responsive.
    pub const MAX_SIZE: u64 = 120;
    pub const MAX_GMAX: u32 = 200;
    pub const MAX_DIGITS: u32 = 200;

    fn value(v: &PiMonomial, ctx: &FloatContext) -> Value {
        json!({
            "pi_power": 2 * v.pi_exp(),
            "rational": format_rational(v.coeff()),
            "decimal": render_decimal(&v.eval(ctx), ctx.digits()),
        })
    }

    fn context(digits: u32) -> Result<FloatContext, String> {
        if digits == 0 || digits > MAX_DIGITS {
            return Err(format!("digits must be in 1..={MAX_DIGITS}"));
        }
        Ok(FloatContext::new(digits as usize))
    }

    pub fn volume(profile: &str, digits: u32) -> Result<String, String> {
        let ctx = context(digits)?;
        let mu: Profile = profile.parse().map_err(|e| format!("{e}"))?;
        if mu.size() > MAX_SIZE {
            return Err(format!("|μ| = {} exceeds the demo limit {MAX_SIZE}", mu.size()));
        }
        let store = MemoStore::new();
        let out = json!({
            "profile": mu.entries(),
            "genus": mu.genus(),
            "n": mu.len(),
            "admissible": mu.is_admissible(),
            "v": value(&v_value(&mu, &store), &ctx),
            "Vol": value(&vol_value(&mu, &store), &ctx),
        });
        Ok(out.to_string())
    }

    pub fn minimal_table(gmax: u32, digits: u32) -> Result<String, String> {
        let ctx = context(digits)?;
        if gmax == 0 || gmax > MAX_GMAX {
            return Err(format!("gmax must be in 1..={MAX_GMAX}"));
        }
        let store = MemoStore::new();
        let a = store.minimal(gmax as usize);
        let rows: Vec<Value> = (1..=gmax)
            .map(|g| {
                let v = v_value(&Profile::single(2 * g - 1), &store);
                json!({ "g": g, "a": format_rational(&a[g as usize - 1]), "v": value(&v, &ctx) })
            })
            .collect();
        Ok(Value::Array(rows).to_string())
    }

    /// Coefficients of order `order` and, for the balanced profiles of length
    /// `n` with genus in `g_lo..=g_hi`, the truncated expansion next to the
    /// exact volume.
    pub fn expansion_curve(order: u32, n: u32, g_lo: u32, g_hi: u32) -> Result<String, String> {
        if !(1..=3).contains(&order) {
            return Err("order must be 1, 2 or 3".into());
        }
        if n == 0 || g_lo < 2 || g_lo > g_hi || g_hi > 60 {
            return Err("need n >= 1 and 2 <= g_lo <= g_hi <= 60".into());
        }
        let ctx = FloatContext::new(30);
        let store = MemoStore::new();
        let kappas = match exact_kappa_series(order as usize, &ctx) {
            Some(k) => k,
            None => extract_kappa(order as usize, 41, 20, &ctx, &store).map_err(|e| e.to_string())?,
        };
        let table = bootstrap_expansion(order, &kappas, &store, &ctx).map_err(|e| e.to_string())?;
        let points: Vec<Value> = (g_lo..=g_hi)
            .map(|g| {
                let mu = balanced_profile(g as u64, n as usize);
                json!({
                    "g": g,
                    "profile": mu.to_string(),
                    "exact": to_f64(&v_value(&mu, &store).eval(&ctx)),
                    "expansion": to_f64(&eval_table(&table, g as u64, n as usize, &ctx)),
                })
            })
            .collect();
        let coefficients: Value = serde_json::from_str(&table.to_json()).map_err(|e| e.to_string())?;
        Ok(json!({ "coefficients": coefficients, "points": points }).to_string())
    }
}

#[wasm_bindgen]
pub fn volume(profile: &str, digits: u32) -> Result<String, JsValue> {
    api::volume(profile, digits).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = minimalTable)]
pub fn minimal_table(gmax: u32, digits: u32) -> Result<String, JsValue> {
    api::minimal_table(gmax, digits).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = expansionCurve)]
pub fn expansion_curve(order: u32, n: u32, g_lo: u32, g_hi: u32) -> Result<String, JsValue> {
    api::expansion_curve(order, n, g_lo, g_hi).map_err(|e| JsValue::from_str(&e))
}
