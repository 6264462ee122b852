//! Command layer of the `mv` tool: argument types, command handlers and the
//! verification suite.

pub mod args;
pub mod commands;
pub mod report;
pub mod verify;

use std::path::PathBuf;

use mv_core::volumes::{load_cache, save_cache};
use mv_core::MemoStore;

use args::{Cli, Command};

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(mv_core::Error),
    /// Number of failed checks and the rendered report.
    Verify(usize, String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Compute(_) => 3,
            Failure::Verify(..) => 4,
        }
    }
}

impl From<mv_core::Error> for Failure {
    fn from(e: mv_core::Error) -> Self {
        Failure::Compute(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "usage: {msg}"),
            Failure::Compute(e) => write!(f, "{e}"),
            Failure::Verify(n, _) => write!(f, "{n} verification check(s) failed"),
        }
    }
}

fn default_cache_path() -> Option<PathBuf> {
    std::env::var_os("HOME").map(|home| PathBuf::from(home).join(".cache/mv/memo.mvcache"))
}

fn cache_path(cli: &Cli) -> Option<PathBuf> {
    if cli.no_cache {
        None
    } else {
        cli.cache.clone().or_else(default_cache_path)
    }
}

/// Runs one command; the cache is loaded before and saved after it.
pub fn run(cli: &Cli) -> Result<String, Failure> {
    if let Command::Verify = cli.command {
        return verify::run(cli);
    }
    let path = cache_path(cli);
    let store = match &path {
        Some(p) => load_cache(p)?,
        None => MemoStore::new(),
    };
    let out = commands::dispatch(cli, &store);
    if let Some(p) = &path {
        if store.is_dirty() {
            if let Err(e) = save_cache(&store, p) {
                eprintln!("warning: could not write cache {}: {e}", p.display());
            }
        }
    }
    if cli.stats {
        eprintln!("cache: {} entries, {} hits, {} misses", store.len(), store.hits(), store.misses());
    }
    out
}
