//! The multi-zero recursion as a logarithm.
//!
//! With `B = Σ_{S,d,d'} a(μ_S + (d+d'−1)) z^S x^d y^{d'}`, the recursion reads
//! `a(μ) = |μ| · [z^M x^{k1} y^{k2}] (−log(1 − B))`. The logarithm `L`
//! satisfies `θ_x L = θ_x B + B · θ_x L` (`θ_x = x ∂_x`), which gives each
//! coefficient of `L` from smaller ones without enumerating compositions.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::exactnum::{int, Rational};
use crate::profiles::{PairChoice, Profile};

use super::{direct, MemoStore};

/// Above this many marked entries the subset tables get too large and the
/// direct enumeration is used instead.
pub const MAX_FAST_MARKED: usize = 10;

/// `a(μ)`, same value as [`direct::a_value`].
pub fn a_value_fast(mu: &Profile, store: &MemoStore) -> Rational {
    if !mu.is_admissible() {
        return Rational::ZERO;
    }
    let entries = mu.entries();
    if entries.len() == 1 {
        return store.minimal_a(entries[0]);
    }
    if let Some(v) = store.get(mu) {
        return v;
    }
    if entries.len() == 2 {
        ensure_pairs(store, entries[1]);
        return store.peek(mu).expect("pair table covers this profile");
    }
    let value = if entries.len() - 2 > MAX_FAST_MARKED {
        direct::enumerate(mu, PairChoice::Smallest, &mut |sub| a_value_fast(sub, store))
    } else {
        subset_log(mu, store)
    };
    store.insert(mu.clone(), value.clone());
    value
}

/// Makes sure `a((i, j))` is stored for all `i, j <= bound`.
///
/// For two entries there are no marked points and `L_{i,j} = a((i,j))/(i+j)`,
/// so one sweep of the recurrence yields the whole square at once.
pub(crate) fn ensure_pairs(store: &MemoStore, bound: u32) {
    let mut done = store.pair_bound.lock().unwrap();
    if *done >= bound {
        return;
    }
    let k = bound as usize;
    let minimal = store.minimal(k);
    let b = |p: usize, q: usize| -> &Rational {
        let s = p + q - 1;
        if s.is_multiple_of(2) {
            &ZERO
        } else {
            &minimal[(s - 1) / 2]
        }
    };
    let mut l = vec![vec![Rational::ZERO; k + 1]; k + 1];
    for i in 1..=k {
        for j in i..=k {
            if (i + j) % 2 == 1 {
                continue;
            }
            let mu = Profile::from_entries(vec![i as u32, j as u32]);
            let size = int((i + j) as i64);
            let value = match store.peek(&mu) {
                Some(a) => &a / &size,
                None => {
                    let mut acc = int(i as i64) * b(i, j);
                    for p in 1..i {
                        for q in 1..j {
                            let bpq = b(p, q);
                            let lower = &l[i - p][j - q];
                            if !bpq.is_zero() && !lower.is_zero() {
                                acc += bpq * lower * int((i - p) as i64);
                            }
                        }
                    }
                    let value = acc / int(i as i64);
                    store.insert(mu, &value * &size);
                    value
                }
            };
            l[j][i] = value.clone();
            l[i][j] = value;
        }
    }
    *done = bound;
}

static ZERO: Rational = Rational::ZERO;

/// One evaluation with `1 <= n − 2 <= MAX_FAST_MARKED` marked entries.
fn subset_log(mu: &Profile, store: &MemoStore) -> Rational {
    let (k1, k2, marked) = PairChoice::Smallest.split(mu).expect("at least three entries");
    let (k1, k2) = (k1 as usize, k2 as usize);
    let t = marked.len();
    let full = (1usize << t) - 1;
    let smax = k1 + k2 - 1;
    let marked_entries = marked.entries();

    // a(M_S + (s)) for every subset S and 1 <= s <= k1 + k2 − 1
    let sub_profile = |s_mask: usize| -> Profile {
        Profile::from_entries((0..t).filter(|b| s_mask >> b & 1 == 1).map(|b| marked_entries[b]).collect())
    };
    store.minimal(smax.div_ceil(2));
    ensure_pairs(store, (*marked_entries.iter().max().unwrap()).max(smax as u32));
    let jobs: Vec<(usize, usize)> = (0..=full).flat_map(|s| (1..=smax).map(move |x| (s, x))).collect();
    let eval = |&(s, x): &(usize, usize)| a_value_fast(&sub_profile(s).with(x as u32), store);
    #[cfg(feature = "parallel")]
    let values: Vec<Rational> = jobs.par_iter().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let values: Vec<Rational> = jobs.iter().map(eval).collect();
    let val = |s: usize, x: usize| &values[s * smax + x - 1];

    let dim = (k1 + 1) * (k2 + 1);
    let at = |s: usize, i: usize, j: usize| s * dim + i * (k2 + 1) + j;
    let mut l = vec![Rational::ZERO; (full + 1) * dim];
    for s in 0..=full {
        for i in 1..=k1 {
            for j in 1..=k2 {
                let mut acc = int(i as i64) * val(s, i + j - 1);
                let mut sub = s;
                loop {
                    let rest = s ^ sub;
                    for p in 1..i {
                        for q in 1..j {
                            let bpq = val(sub, p + q - 1);
                            if bpq.is_zero() {
                                continue;
                            }
                            let lower = &l[at(rest, i - p, j - q)];
                            if !lower.is_zero() {
                                acc += bpq * lower * int((i - p) as i64);
                            }
                        }
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & s;
                }
                l[at(s, i, j)] = acc / int(i as i64);
            }
        }
    }

    // every (i, j) of the full subset is itself a profile of the same length
    let marked_size = marked.size() as i64;
    for i in 1..=k1 {
        for j in 1..=k2 {
            let other = marked.with(i as u32).with(j as u32);
            if other.is_admissible() && (i, j) != (k1, k2) {
                store.insert(other, &l[at(full, i, j)] * int(marked_size + (i + j) as i64));
            }
        }
    }
    &l[at(full, k1, k2)] * int(mu.size() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn hand_values() {
        let store = MemoStore::new();
        let a = |s: &str| a_value_fast(&s.parse().unwrap(), &store);
        assert_eq!(a("3,3"), rat(153, 8960));
        assert_eq!(a("1,1"), rat(1, 12));
        assert_eq!(a("1,2,3,4"), rat(12, 5));
        assert_eq!(a("2,2,2,2"), rat(28, 27));
    }

    #[test]
    fn pair_square_matches_direct() {
        let fast = MemoStore::new();
        ensure_pairs(&fast, 9);
        for i in 1..=9u32 {
            for j in i..=9 {
                let mu = Profile::from_entries(vec![i, j]);
                let expected = direct::a_value(&mu, &MemoStore::new());
                assert_eq!(fast.peek(&mu).unwrap_or(Rational::ZERO), expected, "({i},{j})");
            }
        }
    }

    #[test]
    fn byproducts_agree_with_direct() {
        let store = MemoStore::new();
        a_value_fast(&"4,4,5".parse().unwrap(), &store);
        for (mu, value) in store.entries() {
            if mu.len() == 3 {
                assert_eq!(value, direct::a_value(&mu, &MemoStore::new()), "({mu})");
            }
        }
    }

    #[test]
    fn cached_pairs_are_reused() {
        let store = MemoStore::new();
        ensure_pairs(&store, 6);
        let copy = MemoStore::new();
        for (p, q) in store.entries() {
            copy.insert(p, q);
        }
        copy.mark_clean();
        ensure_pairs(&copy, 6);
        assert!(!copy.is_dirty());
    }
}
