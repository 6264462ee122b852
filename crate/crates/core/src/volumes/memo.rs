use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Mutex, RwLock};

use crate::exactnum::Rational;
use crate::profiles::Profile;

use super::minimal::extend_minimal;

/// Shared write-once table of `a(μ)` values.
///
/// Safe to share between threads: reads take a shared lock, inserts an
/// exclusive one. A key that is inserted twice must receive the same value
/// both times.
#[derive(Debug, Default)]
pub struct MemoStore {
    table: RwLock<HashMap<Profile, Rational>>,
    minimal: RwLock<Vec<Rational>>,
    /// Largest `K` such that every `a((i, j))` with `i, j <= K` is in `table`.
    pub(super) pair_bound: Mutex<u32>,
    hits: AtomicU64,
    misses: AtomicU64,
    dirty: AtomicBool,
}

impl MemoStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Counted lookup.
    pub fn get(&self, mu: &Profile) -> Option<Rational> {
        let found = self.peek(mu);
        let counter = if found.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    /// Lookup that leaves the statistics untouched.
    pub fn peek(&self, mu: &Profile) -> Option<Rational> {
        self.table.read().unwrap().get(mu).cloned()
    }

    pub fn contains(&self, mu: &Profile) -> bool {
        self.table.read().unwrap().contains_key(mu)
    }

    /// Inserts `a(μ)`. Re-inserting an existing key is a no-op, and panics if
    /// the value differs, since that can only come from an arithmetic bug.
    pub fn insert(&self, mu: Profile, value: Rational) {
        let mut table = self.table.write().unwrap();
        match table.get(&mu) {
            Some(old) => assert_eq!(*old, value, "conflicting values stored for ({mu})"),
            None => {
                table.insert(mu, value);
                self.dirty.store(true, Ordering::Relaxed);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    /// True when entries were added since creation, loading, or the last
    /// [`mark_clean`](Self::mark_clean).
    pub fn is_dirty(&self) -> bool {
        self.dirty.load(Ordering::Relaxed)
    }

    pub fn mark_clean(&self) {
        self.dirty.store(false, Ordering::Relaxed);
    }

    /// All entries sorted by profile.
    pub fn entries(&self) -> Vec<(Profile, Rational)> {
        let mut out: Vec<_> = self.table.read().unwrap().iter().map(|(p, q)| (p.clone(), q.clone())).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// `a(1), a(3), …, a(2·gmax − 1)`, computing and storing what is missing.
    pub fn minimal(&self, gmax: usize) -> Vec<Rational> {
        {
            let known = self.minimal.read().unwrap();
            if known.len() >= gmax {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return known[..gmax].to_vec();
            }
        }
        let mut known = self.minimal.write().unwrap();
        if known.len() < gmax {
            self.recover_minimal(&mut known);
            if known.len() >= gmax {
                self.hits.fetch_add(1, Ordering::Relaxed);
            }
        }
        if known.len() < gmax {
            let start = known.len();
            *known = extend_minimal(&known, gmax);
            self.misses.fetch_add((gmax - start) as u64, Ordering::Relaxed);
            for (g, value) in known.iter().enumerate().skip(start) {
                self.insert(Profile::single(2 * g as u32 + 1), value.clone());
            }
        }
        known[..gmax].to_vec()
    }

    /// `a(k)` for a single entry `k`; zero when `k` is even.
    pub fn minimal_a(&self, k: u32) -> Rational {
        if k.is_multiple_of(2) {
            return Rational::ZERO;
        }
        let g = (k as usize).div_ceil(2);
        {
            let known = self.minimal.read().unwrap();
            if let Some(v) = known.get(g - 1) {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return v.clone();
            }
        }
        self.minimal(g)[g - 1].clone()
    }

    /// Pulls a contiguous run of singleton values out of the table, e.g. after
    /// loading a cache file.
    fn recover_minimal(&self, known: &mut Vec<Rational>) {
        let table = self.table.read().unwrap();
        while let Some(v) = table.get(&Profile::single(2 * known.len() as u32 + 1)) {
            known.push(v.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn write_once_and_counters() {
        let store = MemoStore::new();
        let mu: Profile = "3,3".parse().unwrap();
        assert!(store.get(&mu).is_none());
        store.insert(mu.clone(), rat(153, 8960));
        store.insert(mu.clone(), rat(153, 8960));
        assert_eq!(store.get(&mu), Some(rat(153, 8960)));
        assert_eq!((store.hits(), store.misses()), (1, 1));
        assert!(store.is_dirty());
        store.mark_clean();
        assert!(!store.is_dirty());
    }

    #[test]
    #[should_panic(expected = "conflicting")]
    fn conflicting_insert_panics() {
        let store = MemoStore::new();
        store.insert(Profile::single(1), rat(1, 24));
        store.insert(Profile::single(1), rat(1, 23));
    }

    #[test]
    fn minimal_values_are_stored_and_recovered() {
        let store = MemoStore::new();
        let first = store.minimal(4);
        assert_eq!(store.peek(&Profile::single(7)), Some(first[3].clone()));
        let reloaded = MemoStore::new();
        for (p, q) in store.entries() {
            reloaded.insert(p, q);
        }
        assert_eq!(reloaded.minimal(4), first);
        assert_eq!(reloaded.misses(), 0);
    }
}
