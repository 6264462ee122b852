use thiserror::Error;

use crate::profiles::ProfileError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Profile(#[from] ProfileError),

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("invalid π-polynomial literal {0:?}")]
    ParsePiPoly(String),

    #[error("inverse difference undefined on Q_{{{m},{l}}}: needs l >= 2")]
    DeltaInvDomain { m: u32, l: u32 },

    #[error("polynomial of degree {degree} cannot be reduced against (P)_{l}")]
    ReduceDegree { degree: usize, l: u32 },

    #[error("Pochhammer factor vanishes at g={g}, n={n} (P={p}, l={l})")]
    VanishingDenominator { g: i64, n: i64, p: i64, l: u32 },

    #[error("κ-series has order {have}, need at least {need}")]
    KappaTooShort { have: usize, need: usize },

    #[error("unstable κ extraction: κ_{index} stable to only {digits} digits")]
    UnstableKappa { index: usize, digits: usize },

    #[error("invalid extraction window: {0}")]
    Window(String),

    #[error("rank-deficient least-squares system: {0}")]
    RankDeficient(String),

    #[error("cache line {line}: {reason}")]
    Cache { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
