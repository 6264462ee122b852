//! The multi-zero recursion evaluated literally: sum over the number of
//! blocks `m`, ordered set partitions of the marked entries and pairs of
//! compositions of `k1` and `k2`.

use crate::exactnum::{int, Rational};
use crate::profiles::{compositions, ordered_set_partitions, PairChoice, Profile};

use super::MemoStore;

/// `a(μ)` by direct enumeration, with `(k1, k2)` the two smallest entries.
pub fn a_value(mu: &Profile, store: &MemoStore) -> Rational {
    a_value_with(mu, store, PairChoice::Smallest)
}

/// `a(μ)` by direct enumeration with the given pair selection.
///
/// `Smallest` and `Largest` apply at every level of the recursion;
/// `Positions` only at the top level, sub-profiles use `Smallest`. Values are
/// memoized in `store` whatever the choice, so comparing choices needs one
/// store per choice.
pub fn a_value_with(mu: &Profile, store: &MemoStore, pair: PairChoice) -> Rational {
    if !mu.is_admissible() {
        return Rational::ZERO;
    }
    if mu.len() == 1 {
        return store.minimal_a(mu.entries()[0]);
    }
    if let Some(v) = store.get(mu) {
        return v;
    }
    let inner = match pair {
        PairChoice::Positions(..) => PairChoice::Smallest,
        other => other,
    };
    let value = enumerate(mu, pair, &mut |sub| a_value_with(sub, store, inner));
    store.insert(mu.clone(), value.clone());
    value
}

/// One level of the recursion, with sub-profiles evaluated by `eval`.
pub(crate) fn enumerate(mu: &Profile, pair: PairChoice, eval: &mut dyn FnMut(&Profile) -> Rational) -> Rational {
    let (k1, k2, rest) = pair.split(mu).expect("recursion needs two entries");
    let marked: Vec<usize> = (0..rest.len()).collect();
    let mut total = Rational::ZERO;
    for m in 1..=k1.min(k2) as usize {
        let mut sum = Rational::ZERO;
        let mut alpha = ordered_set_partitions(&marked, m);
        while alpha.advance() {
            let blocks: Vec<Profile> = alpha
                .blocks()
                .iter()
                .map(|b| rest.sub_profile(b).expect("indices come from the profile"))
                .collect();
            let mut d = compositions(k1, m);
            while d.advance() {
                let mut e = compositions(k2, m);
                while e.advance() {
                    let mut prod = Rational::ONE;
                    for (i, block) in blocks.iter().enumerate() {
                        let factor = eval(&block.with(d.current()[i] + e.current()[i] - 1));
                        if factor.is_zero() {
                            prod = Rational::ZERO;
                            break;
                        }
                        prod *= factor;
                    }
                    sum += prod;
                }
            }
        }
        total += sum / int(m as i64);
    }
    total * int(mu.size() as i64)
}
