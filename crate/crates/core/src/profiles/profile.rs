use std::fmt;
use std::str::FromStr;

use dashu_int::UBig;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("a profile needs at least one entry")]
    Empty,
    #[error("profile entries must be positive, got {0}")]
    NonPositive(i64),
    #[error("cannot parse profile {0:?}")]
    Parse(String),
    #[error("index {index} out of range for a profile of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("the pair reduction needs at least two entries")]
    TooShort,
    #[error("merged entry {k1}+{k2}-1-2*{k} is below 1")]
    MergeBelowOne { k1: u32, k2: u32, k: u32 },
}

/// A multiset of zero orders plus one, stored ascending.
///
/// Non-admissible profiles are valid values: they show up as intermediate
/// sub-profiles of the recursion and simply carry volume zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Profile {
    entries: Vec<u32>,
}

impl Profile {
    /// Sorts `raw` ascending. Rejects empty input and non-positive entries.
    pub fn canonicalize(raw: &[i64]) -> Result<Self, ProfileError> {
        if raw.is_empty() {
            return Err(ProfileError::Empty);
        }
        let mut entries = Vec::with_capacity(raw.len());
        for &k in raw {
            if k < 1 || k > u32::MAX as i64 {
                return Err(ProfileError::NonPositive(k));
            }
            entries.push(k as u32);
        }
        entries.sort_unstable();
        Ok(Self { entries })
    }

    /// Builds from already-positive entries in any order. Empty is allowed.
    pub fn from_entries(mut entries: Vec<u32>) -> Self {
        assert!(entries.iter().all(|&k| k >= 1), "profile entries must be positive");
        entries.sort_unstable();
        Self { entries }
    }

    pub fn single(k: u32) -> Self {
        Self::from_entries(vec![k])
    }

    /// The empty profile, neutral for concatenation.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// |μ|, the sum of the entries.
    pub fn size(&self) -> u64 {
        self.entries.iter().map(|&k| k as u64).sum()
    }

    /// m(μ), the product of the entries.
    pub fn product(&self) -> UBig {
        self.entries.iter().fold(UBig::ONE, |acc, &k| acc * UBig::from(k))
    }

    pub fn is_admissible(&self) -> bool {
        (self.size() + self.len() as u64).is_multiple_of(2)
    }

    /// `(|μ| - n + 2) / 2`, or `None` when that is not an integer.
    pub fn genus(&self) -> Option<u64> {
        self.is_admissible().then(|| (self.size() + 2 - self.len() as u64) / 2)
    }

    pub fn concat(&self, other: &Profile) -> Profile {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self::from_entries(entries)
    }

    /// Appends one entry.
    pub fn with(&self, k: u32) -> Profile {
        let mut entries = self.entries.clone();
        let pos = entries.partition_point(|&e| e < k);
        entries.insert(pos, k);
        Self { entries }
    }

    /// μ_E for 0-based positions `indices`.
    pub fn sub_profile(&self, indices: &[usize]) -> Result<Profile, ProfileError> {
        let mut entries = Vec::with_capacity(indices.len());
        for &i in indices {
            let k = *self.entries.get(i).ok_or(ProfileError::IndexOutOfRange { index: i, len: self.len() })?;
            entries.push(k);
        }
        Ok(Self::from_entries(entries))
    }

    /// μ^(k): merges the two smallest entries into `k1 + k2 - 1 - 2k`.
    pub fn reduce(&self, k: u32) -> Result<Profile, ProfileError> {
        self.reduce_with(k, PairChoice::Smallest)
    }

    pub fn reduce_with(&self, k: u32, pair: PairChoice) -> Result<Profile, ProfileError> {
        let (k1, k2, rest) = pair.split(self)?;
        let merged = (k1 + k2) as i64 - 1 - 2 * k as i64;
        if merged < 1 {
            return Err(ProfileError::MergeBelowOne { k1, k2, k });
        }
        Ok(rest.with(merged as u32))
    }
}

/// Which two entries play the role of `(k1, k2)` in the recursion.
///
/// The recursion is symmetric, so every choice gives the same value; the
/// non-default choices exist to test exactly that.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PairChoice {
    #[default]
    Smallest,
    Largest,
    /// Two distinct 0-based positions in the canonical entry list.
    Positions(usize, usize),
}

impl PairChoice {
    /// Returns `(k1, k2, remaining profile)`.
    pub fn split(self, mu: &Profile) -> Result<(u32, u32, Profile), ProfileError> {
        let n = mu.len();
        if n < 2 {
            return Err(ProfileError::TooShort);
        }
        let (i, j) = match self {
            PairChoice::Smallest => (0, 1),
            PairChoice::Largest => (n - 1, n - 2),
            PairChoice::Positions(i, j) => (i, j),
        };
        for index in [i, j] {
            if index >= n {
                return Err(ProfileError::IndexOutOfRange { index, len: n });
            }
        }
        assert!(i != j, "pair positions must differ");
        let rest = mu
            .entries
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != i && p != j)
            .map(|(_, &k)| k)
            .collect();
        Ok((mu.entries[i], mu.entries[j], Profile { entries: rest }))
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Profile {
    type Err = ProfileError;

    /// Comma-separated positive integers in any order, e.g. `"7,3,5"`.
    fn from_str(s: &str) -> Result<Self, ProfileError> {
        let bad = || ProfileError::Parse(s.to_string());
        if s.trim().is_empty() {
            return Err(ProfileError::Empty);
        }
        let raw = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::canonicalize(&raw)
    }
}

impl Serialize for Profile {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Profile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<i64> = Vec::deserialize(d)?;
        Profile::canonicalize(&raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Profile {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let mu = Profile::canonicalize(&[5, 3, 7]).unwrap();
        assert_eq!(mu.entries(), &[3, 5, 7]);
        assert_eq!((mu.len(), mu.size(), mu.genus()), (3, 15, Some(7)));
        assert_eq!(p("3").genus(), Some(2));
        assert_eq!(p("2").genus(), None);
        assert!(!p("2").is_admissible());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Profile::canonicalize(&[]), Err(ProfileError::Empty));
        assert_eq!(Profile::canonicalize(&[3, 0]), Err(ProfileError::NonPositive(0)));
        assert!("3,,4".parse::<Profile>().is_err());
        assert!("a".parse::<Profile>().is_err());
        assert!("-1".parse::<Profile>().is_err());
        assert_eq!("".parse::<Profile>(), Err(ProfileError::Empty));
    }

    #[test]
    fn reductions() {
        assert_eq!(p("3,3").reduce(0).unwrap(), p("5"));
        assert_eq!(p("3,3").reduce(1).unwrap(), p("3"));
        assert_eq!(p("2,3,9").reduce(0).unwrap(), p("4,9"));
        assert!(matches!(p("1,1").reduce(1), Err(ProfileError::MergeBelowOne { .. })));
        assert_eq!(p("3").reduce(0), Err(ProfileError::TooShort));
        assert_eq!(p("2,3,9").reduce_with(0, PairChoice::Largest).unwrap(), p("2,11"));
    }

    #[test]
    fn concatenation_and_subprofiles() {
        assert_eq!(p("3").concat(&p("1")), p("1,3"));
        assert_eq!(p("1,1").concat(&Profile::empty()), p("1,1"));
        assert_eq!(p("2,3,9").sub_profile(&[1, 2]).unwrap(), p("3,9"));
        assert!(p("2,3,9").sub_profile(&[3]).is_err());
        assert_eq!(p("2,9").with(3), p("2,3,9"));
    }

    #[test]
    fn text_and_json() {
        assert_eq!(p("7, 3,5").to_string(), "3,5,7");
        let json = serde_json::to_string(&p("5,1")).unwrap();
        assert_eq!(json, "[1,5]");
        assert_eq!(serde_json::from_str::<Profile>(&json).unwrap(), p("1,5"));
        assert!(serde_json::from_str::<Profile>("[0]").is_err());
    }

    proptest! {
        #[test]
        fn reduce_keeps_genus(raw in proptest::collection::vec(1i64..12, 2..6)) {
            let mu = Profile::canonicalize(&raw).unwrap();
            let red = mu.reduce(0).unwrap();
            prop_assert_eq!(red.len(), mu.len() - 1);
            prop_assert_eq!(red.genus(), mu.genus());
            let (k1, k2) = (mu.entries()[0], mu.entries()[1]);
            for k in 0..=((k1 + k2 - 2) / 2) {
                let r = mu.reduce(k).unwrap();
                if let Some(g) = mu.genus() {
                    prop_assert_eq!(r.genus(), Some(g - k as u64));
                }
            }
        }

        #[test]
        fn order_does_not_matter(raw in proptest::collection::vec(1i64..50, 1..8), seed in any::<u64>()) {
            let mut shuffled = raw.clone();
            let len = shuffled.len();
            shuffled.rotate_left((seed as usize) % len);
            prop_assert_eq!(Profile::canonicalize(&raw), Profile::canonicalize(&shuffled));
        }
    }
}
