//! Singularity profiles and the combinatorial enumerators used by the
//! multi-zero recursion.

mod enumerate;
mod profile;

pub use enumerate::{compositions, ordered_set_partitions, CompositionCursor, OrderedSetPartitionCursor};
pub use profile::{PairChoice, Profile, ProfileError};
