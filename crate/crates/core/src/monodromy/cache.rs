//! On-disk memo of raw tuple counts.
//!
//! One UTF-8 file, one record per line: `canonical-profile-key<TAB>raw_count`.
//! Writes go to a temporary file in the same directory followed by a rename,
//! so readers never observe a half-written file.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{count_factorizations, FactorizationCount, OracleConfig};
use crate::combinatorics::RamificationProfile;
use crate::error::Result;

pub const CACHE_FILE: &str = "hurwitz-counts.tsv";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// The stored record was unreadable; it was recomputed and overwritten.
    Repaired,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub path: PathBuf,
    pub entries: usize,
    pub corrupt_lines: usize,
    pub bytes: u64,
}

#[derive(Clone, Debug)]
pub struct CountCache {
    dir: PathBuf,
}

enum Record {
    Valid(u128),
    Corrupt,
}

impl CountCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CountCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self) -> PathBuf {
        self.dir.join(CACHE_FILE)
    }

    fn read(&self) -> Result<BTreeMap<String, Record>> {
        let path = self.path();
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
            Err(e) => return Err(e.into()),
        };
        let mut records = BTreeMap::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            match line.split_once('\t') {
                Some((key, count)) => {
                    let rec = count.trim().parse::<u128>().map_or(Record::Corrupt, Record::Valid);
                    records.insert(key.to_string(), rec);
                }
                None => {
                    records.insert(line.to_string(), Record::Corrupt);
                }
            }
        }
        Ok(records)
    }

    pub fn get(&self, key: &str) -> Result<Option<std::result::Result<u128, ()>>> {
        Ok(self.read()?.get(key).map(|r| match r {
            Record::Valid(v) => Ok(*v),
            Record::Corrupt => Err(()),
        }))
    }

    /// Inserts or replaces one record; unreadable lines are dropped on rewrite.
    pub fn put(&self, key: &str, raw_count: u128) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut records: BTreeMap<String, u128> = self
            .read()?
            .into_iter()
            .filter_map(|(k, r)| match r {
                Record::Valid(v) => Some((k, v)),
                Record::Corrupt => None,
            })
            .collect();
        records.insert(key.to_string(), raw_count);

        let tmp = self.dir.join(format!(".{CACHE_FILE}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            for (k, v) in &records {
                writeln!(f, "{k}\t{v}")?;
            }
            f.sync_all()?;
        }
        fs::rename(&tmp, self.path())?;
        Ok(())
    }

    pub fn stats(&self) -> Result<CacheStats> {
        let records = self.read()?;
        let corrupt_lines = records.values().filter(|r| matches!(r, Record::Corrupt)).count();
        let bytes = fs::metadata(self.path()).map(|m| m.len()).unwrap_or(0);
        Ok(CacheStats {
            path: self.path(),
            entries: records.len() - corrupt_lines,
            corrupt_lines,
            bytes,
        })
    }
}

/// [`count_factorizations`] memoized by the profile's canonical key.
pub fn count_cached(
    profile: &RamificationProfile,
    cache: &CountCache,
    config: &OracleConfig,
) -> Result<(FactorizationCount, CacheOutcome)> {
    let key = profile.canonical_key();
    let outcome = match cache.get(&key)? {
        Some(Ok(raw)) => return Ok((FactorizationCount::new(profile, raw), CacheOutcome::Hit)),
        Some(Err(())) => {
            log::warn!("corrupt cache entry for {key} in {}; recomputing", cache.path().display());
            CacheOutcome::Repaired
        }
        None => CacheOutcome::Miss,
    };
    let fresh = count_factorizations(profile, config)?;
    cache.put(&key, fresh.raw_count)?;
    Ok((fresh, outcome))
}
