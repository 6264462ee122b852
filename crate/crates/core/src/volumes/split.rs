//! Diagnostic decompositions of the multi-zero recursion and the constants
//! `κ̃'_i`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactnum::{binomial, int, PiMonomial, Rational};
use crate::profiles::{PairChoice, Profile};

use super::setpoly::SetPoly;
use super::{a_value_fast, MemoStore};

/// Which parts of [`DiagnosticSplit`] to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitConfig {
    pub by_distance: bool,
    pub barred: bool,
}

impl Default for SplitConfig {
    fn default() -> Self {
        Self { by_distance: true, barred: true }
    }
}

/// Partial sums of the recursion for one profile. Absent keys are zero.
///
/// * `by_m[m]`: all terms with `m` blocks.
/// * `by_ml[(m, l)]`: `m >= 2`, the first block carries exactly `l` marked entries.
/// * `by_mld[(m, l, D)]`: same, restricted to `d + d' = k1 + k2 − D`.
/// * `barred[m]`: terms whose partition has at least two non-empty blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticSplit {
    #[serde(with = "rational_map")]
    pub by_m: BTreeMap<u32, Rational>,
    #[serde(with = "rational_map")]
    pub by_ml: BTreeMap<(u32, u32), Rational>,
    #[serde(with = "rational_map")]
    pub by_mld: BTreeMap<(u32, u32, u32), Rational>,
    #[serde(with = "rational_map")]
    pub barred: BTreeMap<u32, Rational>,
}

mod rational_map {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exactnum::{format_rational, parse_rational, Rational};

    pub fn serialize<K: Serialize + Clone, S: Serializer>(map: &BTreeMap<K, Rational>, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(K, String)> = map.iter().map(|(k, q)| (k.clone(), format_rational(q))).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, K, D>(d: D) -> Result<BTreeMap<K, Rational>, D::Error>
    where
        K: Deserialize<'de> + Ord,
        D: Deserializer<'de>,
    {
        let pairs: Vec<(K, String)> = Vec::deserialize(d)?;
        pairs
            .into_iter()
            .map(|(k, q)| parse_rational(&q).map(|q| (k, q)).map_err(D::Error::custom))
            .collect()
    }
}

fn insert_nonzero<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, q: Rational) {
    if !q.is_zero() {
        map.insert(key, q);
    }
}

/// The generating element `B` of the recursion for `μ`, with `(k1, k2)` the
/// two smallest entries.
fn generator(mu: &Profile, store: &MemoStore) -> (SetPoly, usize, usize) {
    let (k1, k2, marked) = PairChoice::Smallest.split(mu).expect("need two entries");
    let (k1, k2) = (k1 as usize, k2 as usize);
    let t = marked.len();
    let mut b = SetPoly::zero(t, k1, k2);
    for s in 0..1usize << t {
        let block = Profile::from_entries((0..t).filter(|i| s >> i & 1 == 1).map(|i| marked.entries()[i]).collect());
        for d in 1..=k1 {
            for e in 1..=k2 {
                b.set(s, d, e, a_value_fast(&block.with((d + e - 1) as u32), store));
            }
        }
    }
    (b, k1, k2)
}

/// Exact diagnostic split of the recursion for `μ` (length ≥ 2), for
/// `1 <= m <= m_max`.
pub fn diagnostic_split(mu: &Profile, m_max: u32, config: SplitConfig, store: &MemoStore) -> DiagnosticSplit {
    let (b, k1, k2) = generator(mu, store);
    let full = b.full();
    let m_max = m_max.min(k1.min(k2) as u32);
    let mut out = DiagnosticSplit::default();

    let mut powers = vec![SetPoly::unit(mu.len() - 2, k1, k2)];
    for m in 1..=m_max as usize {
        let next = powers[m - 1].mul(&b);
        insert_nonzero(&mut out.by_m, m as u32, next.get(full, k1, k2).clone());
        powers.push(next);
    }

    for m in 2..=m_max as usize {
        let prev = &powers[m - 1];
        for s in 0..=full {
            let l = s.count_ones();
            for d in 1..k1 {
                for e in 1..k2 {
                    let term = b.get(s, d, e) * prev.get(full ^ s, k1 - d, k2 - e);
                    if term.is_zero() {
                        continue;
                    }
                    *out.by_ml.entry((m as u32, l)).or_insert(Rational::ZERO) += &term;
                    if config.by_distance {
                        let dist = (k1 + k2 - d - e) as u32;
                        *out.by_mld.entry((m as u32, l, dist)).or_insert(Rational::ZERO) += term;
                    }
                }
            }
        }
    }
    out.by_ml.retain(|_, q| !q.is_zero());
    out.by_mld.retain(|_, q| !q.is_zero());

    if config.barred {
        // (B_∅ + B⁺)^m, keeping only the terms with two or more factors from B⁺
        let empty = b.filter_sets(|s| s == 0);
        let plus = b.filter_sets(|s| s != 0);
        let mut empty_pow = vec![SetPoly::unit(mu.len() - 2, k1, k2)];
        let mut plus_pow = vec![SetPoly::unit(mu.len() - 2, k1, k2)];
        for j in 1..=m_max as usize {
            empty_pow.push(empty_pow[j - 1].mul(&empty));
            plus_pow.push(plus_pow[j - 1].mul(&plus));
        }
        for m in 1..=m_max as usize {
            let mut acc = Rational::ZERO;
            for j in 2..=m {
                let term = empty_pow[m - j].mul(&plus_pow[j]);
                acc += Rational::from(binomial(m as u64, j as u64)) * term.get(full, k1, k2);
            }
            insert_nonzero(&mut out.barred, m as u32, acc);
        }
    }
    out
}

/// `κ̃'_i = (2π)^{2i} Σ_{m>=1} Σ_{d+d'=2i} [x^d y^{d'}] B^m`, with
/// `B = Σ a(d + d' − 1) x^d y^{d'}`.
pub fn kappa_tilde_prime(i: u32, store: &MemoStore) -> PiMonomial {
    assert!(i >= 1);
    let top = 2 * i as usize;
    let minimal = store.minimal(i as usize);
    let b = |p: usize, q: usize| -> Rational {
        let s = p + q - 1;
        if s.is_multiple_of(2) {
            Rational::ZERO
        } else {
            minimal[(s - 1) / 2].clone()
        }
    };
    // G = B + B·G, restricted to total degree <= 2i
    let mut g = vec![vec![Rational::ZERO; top + 1]; top + 1];
    for total in 2..=top {
        for d in 1..total {
            let e = total - d;
            let mut acc = b(d, e);
            for p in 1..d {
                for q in 1..e {
                    let lower = &g[d - p][e - q];
                    if !lower.is_zero() {
                        acc += b(p, q) * lower;
                    }
                }
            }
            g[d][e] = acc;
        }
    }
    let sum = (1..top).fold(Rational::ZERO, |acc, d| acc + &g[d][top - d]);
    let four_pow = Rational::from(dashu_int::UBig::from(4u8).pow(i as usize));
    PiMonomial::new(sum * four_pow, i)
}

/// Recombines the per-`m` sums into `a(μ) = |μ| Σ_m A_m / m`.
pub fn recombine(mu: &Profile, split: &DiagnosticSplit) -> Rational {
    let s = split.by_m.iter().fold(Rational::ZERO, |acc, (m, q)| acc + q / int(*m as i64));
    s * int(mu.size() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::profiles::compositions;

    fn p(s: &str) -> Profile {
        s.parse().unwrap()
    }

    #[test]
    fn three_three_by_m() {
        let store = MemoStore::new();
        let split = diagnostic_split(&p("3,3"), 5, SplitConfig::default(), &store);
        assert_eq!(split.by_m[&1], rat(1525, 580608));
        assert_eq!(split.by_m[&2], rat(1, 2560));
        assert_eq!(split.by_m[&3], rat(1, 13824));
        assert_eq!(split.by_m.len(), 3);
        assert!(split.barred.is_empty());
        assert_eq!(recombine(&p("3,3"), &split), rat(153, 8960));
    }

    #[test]
    fn split_identities() {
        let store = MemoStore::new();
        for s in ["3,3,5", "2,3,3,4", "4,4,3", "2,2,5,5", "3,5,3"] {
            let mu = p(s);
            let split = diagnostic_split(&mu, 10, SplitConfig::default(), &store);
            assert_eq!(recombine(&mu, &split), a_value_fast(&mu, &store), "{s}");
            assert!(mu.is_admissible() && split.by_m.len() >= 2, "{s}");
            let n2 = mu.len() as u32 - 2;
            for (&m, a_m) in &split.by_m {
                let get = |l: u32| split.by_ml.get(&(m, l)).cloned().unwrap_or(Rational::ZERO);
                let bar = split.barred.get(&m).cloned().unwrap_or(Rational::ZERO);
                if m == 1 {
                    assert!(bar.is_zero());
                    continue;
                }
                let by_l = (0..=n2).fold(Rational::ZERO, |acc, l| acc + get(l));
                assert_eq!(by_l, *a_m, "{s} m={m}");
                for l in 0..=n2 {
                    let by_d = split
                        .by_mld
                        .iter()
                        .filter(|((mm, ll, _), _)| *mm == m && *ll == l)
                        .fold(Rational::ZERO, |acc, (_, q)| acc + q);
                    assert_eq!(by_d, get(l), "{s} m={m} l={l}");
                }
                assert_eq!(bar, a_m - get(n2) * int(m as i64), "{s} m={m}");
            }
        }
    }

    /// Literal sum over compositions of `d` and `d'` into `m` parts.
    fn a_two(d: u32, e: u32, m: usize, minimal: &[Rational]) -> Rational {
        let a = |s: u32| if s.is_multiple_of(2) { Rational::ZERO } else { minimal[(s as usize - 1) / 2].clone() };
        let mut total = Rational::ZERO;
        for x in compositions(d, m) {
            for y in compositions(e, m) {
                total += x.iter().zip(&y).fold(Rational::ONE, |acc, (u, v)| acc * a(u + v - 1));
            }
        }
        total
    }

    #[test]
    fn kappa_tilde_prime_values() {
        let store = MemoStore::new();
        assert_eq!(kappa_tilde_prime(1, &store), PiMonomial::new(rat(1, 6), 1));
        assert_eq!(kappa_tilde_prime(2, &store), PiMonomial::new(rat(91, 360), 2));
        let minimal = store.minimal(6);
        for i in 1..=5u32 {
            let mut sum = Rational::ZERO;
            for d in 1..2 * i {
                for m in 1..=d.min(2 * i - d) as usize {
                    sum += a_two(d, 2 * i - d, m, &minimal);
                }
            }
            let expected = PiMonomial::new(sum * Rational::from(dashu_int::UBig::from(4u8).pow(i as usize)), i);
            assert_eq!(kappa_tilde_prime(i, &store), expected, "i={i}");
        }
    }
}
