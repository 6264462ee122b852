//! Plain-text persistence for [`MemoStore`].
//!
//! ```text
//! MVCACHE v1
//! a 1,1 1/12
//! a 1,3 3/640
//! ```
//!
//! Lines after the header are sorted; every line must re-render to exactly
//! itself.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational};
use crate::profiles::Profile;

use super::MemoStore;

pub const CACHE_HEADER: &str = "MVCACHE v1";

fn entry_line(mu: &Profile, q: &crate::exactnum::Rational) -> String {
    format!("a {mu} {}", format_rational(q))
}

pub fn render_cache(store: &MemoStore) -> String {
    let mut lines: Vec<String> = store.entries().iter().map(|(mu, q)| entry_line(mu, q)).collect();
    lines.sort();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum::<usize>() + 12);
    out.push_str(CACHE_HEADER);
    out.push('\n');
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Parses cache text into `store`. Nothing is inserted unless every line is valid.
pub fn parse_cache(text: &str, store: &MemoStore) -> Result<usize> {
    let mut lines = text.lines();
    if lines.next() != Some(CACHE_HEADER) {
        return Err(Error::Cache { line: 1, reason: format!("expected header {CACHE_HEADER:?}") });
    }
    let mut parsed = Vec::new();
    let mut previous: Option<&str> = None;
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let bad = |reason: &str| Error::Cache { line: lineno, reason: reason.to_string() };
        let mut fields = line.split(' ');
        let (Some("a"), Some(mu), Some(q), None) = (fields.next(), fields.next(), fields.next(), fields.next()) else {
            return Err(bad("expected `a <profile> <p/q>`"));
        };
        let mu: Profile = mu.parse().map_err(|e| bad(&format!("{e}")))?;
        let q = parse_rational(q).map_err(|e| bad(&format!("{e}")))?;
        if entry_line(&mu, &q) != line {
            return Err(bad("entry is not in canonical form"));
        }
        if previous.is_some_and(|p| p >= line) {
            return Err(bad("entries are not strictly sorted"));
        }
        previous = Some(line);
        parsed.push((mu, q));
    }
    let count = parsed.len();
    for (mu, q) in parsed {
        store.insert(mu, q);
    }
    Ok(count)
}

/// Loads a cache file into a fresh store; a missing file gives an empty store.
pub fn load_cache(path: &Path) -> Result<MemoStore> {
    let store = MemoStore::new();
    match fs::read_to_string(path) {
        Ok(text) => {
            parse_cache(&text, &store)?;
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
        Err(e) => return Err(e.into()),
    }
    store.mark_clean();
    Ok(store)
}

/// Writes the store atomically (temporary file, then rename).
pub fn save_cache(store: &MemoStore, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let tmp = path.with_extension("tmp");
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(render_cache(store).as_bytes())?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    store.mark_clean();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::volumes::a_value_fast;

    #[test]
    fn round_trip() {
        let store = MemoStore::new();
        a_value_fast(&"3,3,3".parse().unwrap(), &store);
        let text = render_cache(&store);
        assert!(text.starts_with("MVCACHE v1\na 1 1/24\n"));
        let back = MemoStore::new();
        assert_eq!(parse_cache(&text, &back).unwrap(), store.len());
        assert_eq!(render_cache(&back), text);
    }

    #[test]
    fn rejects_malformed_lines() {
        let cases = [
            "MVCACHE v2\n",
            "MVCACHE v1\na 3,1 1/40\n",
            "MVCACHE v1\na 3 2/4\n",
            "MVCACHE v1\na 3 3/640 x\n",
            "MVCACHE v1\nb 3 3/640\n",
            "MVCACHE v1\na 3 3/640\na 1 1/24\n",
            "MVCACHE v1\na 1 1/24\na 1 1/24\n",
            "MVCACHE v1\na 0 1/24\n",
        ];
        for text in cases {
            let store = MemoStore::new();
            assert!(parse_cache(text, &store).is_err(), "{text:?}");
            assert!(store.is_empty());
        }
    }
}
