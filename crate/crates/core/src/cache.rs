//! On-disk cache of `ℓ(k)` reports: one JSON file per `(k, mode, sum_cap)`.
//!
//! An entry is only reused when its key and tool version both match.
//! Writes go to a temporary file in the cache directory which is then
//! renamed over the target, so readers never see a partial entry.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::enumeration::{compute_ell, EllReport, EnumConfig, EnumError, Mode};
use crate::TOOL_VERSION;

/// Overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "ZEROSUM_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub k: u32,
    pub mode: Mode,
    pub sum_cap: u64,
}

impl CacheKey {
    pub fn of(cfg: &EnumConfig) -> Self {
        CacheKey {
            k: cfg.k,
            mode: cfg.mode,
            sum_cap: cfg.sum_cap,
        }
    }

    fn file_name(&self) -> String {
        format!("ell-k{}-{}-cap{}.json", self.k, self.mode, self.sum_cap)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: CacheKey,
    pub report: EllReport,
    pub tool_version: String,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// An entry existed but was written by another tool version.
    Stale,
    Disabled,
}

impl CacheStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CacheStatus::Hit => "hit",
            CacheStatus::Miss => "miss",
            CacheStatus::Stale => "stale",
            CacheStatus::Disabled => "disabled",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$ZEROSUM_CACHE_DIR`, else `zerosum` under the platform cache directory.
    pub fn from_env() -> Option<Self> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Some(Cache::at(dir)),
            _ => dirs::cache_dir().map(|d| Cache::at(d.join("zerosum"))),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    /// Reads the entry for `key`, if one exists and parses.
    pub fn read(&self, key: &CacheKey) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// The cached report for `key` and the lookup outcome.
    pub fn load(&self, key: &CacheKey) -> (Option<EllReport>, CacheStatus) {
        match self.read(key) {
            Some(entry) if entry.key == *key && entry.tool_version == TOOL_VERSION => {
                (Some(entry.report), CacheStatus::Hit)
            }
            Some(_) => (None, CacheStatus::Stale),
            None => (None, CacheStatus::Miss),
        }
    }

    pub fn store_entry(&self, entry: &CacheEntry) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        let json = serde_json::to_string_pretty(entry).map_err(io::Error::other)?;
        tmp.write_all(json.as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path_for(&entry.key))
            .map_err(|e| e.error)?;
        Ok(())
    }

    pub fn store(&self, key: &CacheKey, report: &EllReport) -> io::Result<()> {
        let created_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        self.store_entry(&CacheEntry {
            key: *key,
            report: report.clone(),
            tool_version: TOOL_VERSION.to_string(),
            created_at,
        })
    }
}

/// Outcome of [`cached_ell`]. A failed cache write does not fail the
/// computation; it is reported in `store_error`.
#[derive(Debug)]
pub struct CachedEll {
    pub report: EllReport,
    pub status: CacheStatus,
    pub store_error: Option<io::Error>,
}

/// [`compute_ell`] through the cache. Configurations with a length window
/// bypass the cache, since the key does not record one.
pub fn cached_ell(cache: Option<&Cache>, cfg: &EnumConfig) -> Result<CachedEll, EnumError> {
    let cache = match cache {
        Some(c) if cfg.length_window.is_none() => c,
        _ => {
            return Ok(CachedEll {
                report: compute_ell(cfg)?,
                status: CacheStatus::Disabled,
                store_error: None,
            })
        }
    };
    cfg.validate()?;
    let key = CacheKey::of(cfg);
    let (hit, status) = cache.load(&key);
    if let Some(report) = hit {
        return Ok(CachedEll {
            report,
            status,
            store_error: None,
        });
    }
    let report = compute_ell(cfg)?;
    let store_error = cache.store(&key, &report).err();
    Ok(CachedEll {
        report,
        status,
        store_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cold_then_warm() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let cfg = EnumConfig::new(3, Mode::Brute);
        let cold = cached_ell(Some(&cache), &cfg).unwrap();
        assert_eq!(cold.status, CacheStatus::Miss);
        assert!(cold.store_error.is_none());
        let warm = cached_ell(Some(&cache), &cfg).unwrap();
        assert_eq!(warm.status, CacheStatus::Hit);
        assert_eq!(
            serde_json::to_string_pretty(&warm.report).unwrap(),
            serde_json::to_string_pretty(&cold.report).unwrap()
        );
    }

    #[test]
    fn other_version_is_stale() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let cfg = EnumConfig::new(2, Mode::Brute);
        let key = CacheKey::of(&cfg);
        let report = compute_ell(&cfg).unwrap();
        cache
            .store_entry(&CacheEntry {
                key,
                report,
                tool_version: "0.0.0-old".into(),
                created_at: 0,
            })
            .unwrap();
        assert_eq!(cache.load(&key).1, CacheStatus::Stale);
        let fresh = cached_ell(Some(&cache), &cfg).unwrap();
        assert_eq!(fresh.status, CacheStatus::Stale);
        assert_eq!(cache.load(&key).1, CacheStatus::Hit);
    }

    #[test]
    fn windowed_runs_bypass_cache() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let cfg = EnumConfig::new(2, Mode::Brute).with_length_window(3, 3);
        let out = cached_ell(Some(&cache), &cfg).unwrap();
        assert_eq!(out.status, CacheStatus::Disabled);
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
    }

    #[test]
    fn distinct_keys_use_distinct_files() {
        let cache = Cache::at("/nonexistent");
        let a = CacheKey {
            k: 3,
            mode: Mode::Brute,
            sum_cap: 9,
        };
        let b = CacheKey {
            k: 3,
            mode: Mode::Pruned,
            sum_cap: 9,
        };
        let c = CacheKey {
            k: 3,
            mode: Mode::Brute,
            sum_cap: 10,
        };
        assert_ne!(cache.path_for(&a), cache.path_for(&b));
        assert_ne!(cache.path_for(&a), cache.path_for(&c));
    }
}
