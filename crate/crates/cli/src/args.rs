use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mv", version, about = "Exact Masur-Veech volumes and their large-genus expansion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Significant digits for decimal output.
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..=2000))]
    pub digits: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Memo cache file (default: ~/.cache/mv/memo.mvcache).
    #[arg(long, global = true, env = "MV_CACHE", value_name = "PATH")]
    pub cache: Option<PathBuf>,

    /// Neither read nor write the memo cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Print cache statistics to stderr.
    #[arg(long, global = true)]
    pub stats: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// v(μ) and Vol(μ) of one stratum.
    Volume {
        /// Profile such as `3,3` (entries are zero orders plus one).
        #[arg(value_name = "PROFILE", required_unless_present = "profile")]
        positional: Option<String>,
        #[arg(long, conflicts_with = "positional")]
        profile: Option<String>,
    },
    /// a(2g−1) and v(2g−1) for g = 1..gmax.
    Minimal {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=5000))]
        gmax: u64,
    },
    /// Expansion coefficients by the inductive construction.
    Coeffs {
        #[arg(short = 'r', long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=12))]
        order: u32,
    },
    /// Expansion coefficients by least squares on exact volumes, compared
    /// with the inductive construction.
    Fit {
        #[arg(short = 'r', long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(0..=6))]
        order: u32,
        #[arg(long, default_value = "15:40")]
        g_range: GRange,
        /// Profile lengths of the sample families.
        #[arg(long, default_value = "1,2,3", value_delimiter = ',')]
        families: Vec<usize>,
        /// Largest allowed n/g.
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
    },
    /// Runs the property suite; exits with status 4 on any failure.
    Verify,
    /// Split tables of the recursion for one profile and remainder decay rates.
    Diagnose {
        #[arg(long)]
        profile: String,
        #[arg(long, default_value = "10:40")]
        g_range: GRange,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Inclusive genus range `A:B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GRange {
    pub lo: u64,
    pub hi: u64,
}

impl FromStr for GRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected A:B, got {s:?}"))?;
        let lo: u64 = a.trim().parse().map_err(|_| format!("bad lower genus {a:?}"))?;
        let hi: u64 = b.trim().parse().map_err(|_| format!("bad upper genus {b:?}"))?;
        if lo < 2 || lo > hi {
            return Err(format!("need 2 <= A <= B, got {lo}:{hi}"));
        }
        Ok(GRange { lo, hi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_ranges() {
        assert_eq!("10:40".parse::<GRange>(), Ok(GRange { lo: 10, hi: 40 }));
        assert!("40:10".parse::<GRange>().is_err());
        assert!("1:5".parse::<GRange>().is_err());
        assert!("7".parse::<GRange>().is_err());
    }

    #[test]
    fn parses_global_flags_after_the_command() {
        let cli = Cli::try_parse_from(["mv", "coeffs", "-r", "3", "--format", "json", "--no-cache"]).unwrap();
        assert!(matches!(cli.command, Command::Coeffs { order: 3 }));
        assert_eq!(cli.format, Format::Json);
        assert!(cli.no_cache);
        assert_eq!(cli.digits, 50);
    }
}
