//! Append-only JSON-lines store of verdict records.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use grassdense::DimensionVector;

use crate::record::{Settings, VerdictRecord};

pub const CACHE_ENV: &str = "GRASSDENSE_CACHE";

/// `$GRASSDENSE_CACHE`, else `$XDG_CACHE_HOME/grassdense/verdicts.jsonl`,
/// else `~/.cache/grassdense/verdicts.jsonl`.
pub fn default_path() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os(CACHE_ENV) {
        return Some(PathBuf::from(p));
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("grassdense").join("verdicts.jsonl"))
}

pub struct Cache {
    path: PathBuf,
    by_canonical: HashMap<DimensionVector, Vec<VerdictRecord>>,
    /// Lines that failed to parse while loading.
    pub skipped: usize,
}

impl Cache {
    /// Loads the file if it exists; unreadable lines are skipped with a
    /// warning on stderr.
    pub fn open(path: &Path) -> io::Result<Cache> {
        let mut cache = Cache {
            path: path.to_path_buf(),
            by_canonical: HashMap::new(),
            skipped: 0,
        };
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e),
        };
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<VerdictRecord>(line) {
                Ok(r) => cache
                    .by_canonical
                    .entry(r.vector.canonical())
                    .or_default()
                    .push(r),
                Err(e) => {
                    eprintln!("warning: {}:{}: skipping corrupt cache line: {e}", path.display(), i + 1);
                    cache.skipped += 1;
                }
            }
        }
        Ok(cache)
    }

    /// A stored record for exactly this vector and these settings.
    pub fn get(&self, v: &DimensionVector, settings: &Settings) -> Option<&VerdictRecord> {
        self.by_canonical
            .get(&v.canonical())?
            .iter()
            .find(|r| r.vector == *v && r.settings == *settings)
    }

    pub fn append(&mut self, r: &VerdictRecord) -> io::Result<()> {
        if let Some(dir) = self.path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let line = serde_json::to_string(r).map_err(io::Error::other)?;
        writeln!(f, "{line}")?;
        self.by_canonical
            .entry(r.vector.canonical())
            .or_default()
            .push(r.clone());
        Ok(())
    }
}
