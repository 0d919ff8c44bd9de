//! A store of crank tables M(·, n) for every `2 ≤ n ≤ n_max`, built once and
//! then shared read-only, with an optional JSON file on disk.
//!
//! File format (`crank-tables.json`): an object keyed by `n`, each value a
//! count table `{"n": .., "counts": [[m, M(m, n)], ...]}`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::table::{crank_counts_recurrence, crank_counts_with, partition_count, CountTable};

/// Environment variable naming the directory of the persistent cache.
pub const CACHE_DIR_ENV: &str = "CRANKMARK_CACHE_DIR";

pub const CACHE_FILE: &str = "crank-tables.json";

/// How M(m, n) is obtained for tables that are not cached yet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TableSource {
    /// Counting over the number of ones and the parts above it.
    #[default]
    Recurrence,
    /// Streaming every partition of `n`.
    Enumeration,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrankTableCache {
    tables: BTreeMap<u32, CountTable>,
}

impl CrankTableCache {
    /// Tables for `2 ≤ n ≤ n_max`.
    pub fn compute(n_max: u32, source: TableSource, exec: Exec) -> Result<Self> {
        let mut cache = CrankTableCache::default();
        cache.extend(n_max, source, exec)?;
        Ok(cache)
    }

    /// Reads the cache file in `dir` if present, fills in anything missing
    /// up to `n_max`, and writes the file back when it grew.
    pub fn load_or_compute(
        dir: &Path,
        n_max: u32,
        source: TableSource,
        exec: Exec,
    ) -> Result<Self> {
        let path = dir.join(CACHE_FILE);
        let mut cache = if path.exists() {
            Self::read(&path)?
        } else {
            CrankTableCache::default()
        };
        if cache.extend(n_max, source, exec)? {
            fs::create_dir_all(dir)?;
            cache.write(&path)?;
        }
        Ok(cache)
    }

    /// As [`CrankTableCache::load_or_compute`] when the cache directory is
    /// set in the environment, otherwise in memory only.
    pub fn from_env(n_max: u32, source: TableSource, exec: Exec) -> Result<Self> {
        match cache_dir_from_env() {
            Some(dir) => Self::load_or_compute(&dir, n_max, source, exec),
            None => Self::compute(n_max, source, exec),
        }
    }

    fn extend(&mut self, n_max: u32, source: TableSource, exec: Exec) -> Result<bool> {
        let missing: Vec<u32> = (2..=n_max)
            .filter(|n| !self.tables.contains_key(n))
            .collect();
        if missing.is_empty() {
            return Ok(false);
        }
        let built = match source {
            TableSource::Recurrence => exec.map(missing, crank_counts_recurrence),
            TableSource::Enumeration => missing
                .into_iter()
                .map(|n| crank_counts_with(n, exec))
                .collect(),
        };
        for table in built {
            let table = table?;
            self.tables.insert(table.n(), table);
        }
        Ok(true)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let tables: BTreeMap<u32, CountTable> = serde_json::from_str(&text)?;
        for (&n, table) in &tables {
            if table.n() != n || n < 2 || table.total() != partition_count(n) {
                return Err(Error::invalid(format!(
                    "corrupt cache entry for n = {n} in {}",
                    path.display()
                )));
            }
        }
        Ok(CrankTableCache { tables })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&self.tables)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn get(&self, n: u32) -> Option<&CountTable> {
        self.tables.get(&n)
    }

    pub fn n_max(&self) -> u32 {
        self.tables.keys().next_back().copied().unwrap_or(0)
    }
}

pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}
