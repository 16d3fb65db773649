//! Content-addressed JSON cache for polynomial and operator tables.
//!
//! An entry is keyed by the SHA-256 of its configuration slice and the crate
//! version and stores a checksum of its payload. A mismatching checksum or an
//! unreadable file is treated as a miss, and the entry is rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Result;

pub const ENV_VAR: &str = "GRASSQDE_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
    /// The stored entry failed its checksum and was recomputed.
    Corrupt,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    key: Value,
    checksum: String,
    payload: Value,
}

fn digest(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Cache {
        Cache { dir }
    }

    /// Uses `dir` if given, otherwise the environment variable, otherwise no cache.
    pub fn from_env(dir: Option<PathBuf>) -> Cache {
        Cache { dir: dir.or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from)) }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, key: &Value) -> Option<PathBuf> {
        let material = format!("{}|{}", env!("CARGO_PKG_VERSION"), key);
        self.dir.as_ref().map(|d| d.join(format!("{}.json", digest(&material))))
    }

    fn load<T: DeserializeOwned>(path: &Path, key: &Value) -> Option<std::result::Result<T, ()>> {
        let text = fs::read_to_string(path).ok()?;
        let parsed: std::result::Result<Entry, _> = serde_json::from_str(&text);
        let Ok(entry) = parsed else {
            return Some(Err(()));
        };
        if entry.version != env!("CARGO_PKG_VERSION") || &entry.key != key {
            return Some(Err(()));
        }
        if digest(&entry.payload.to_string()) != entry.checksum {
            return Some(Err(()));
        }
        Some(serde_json::from_value(entry.payload).map_err(|_| ()))
    }

    /// Returns the cached value for `key`, or computes and stores it.
    pub fn get_or_compute<T, F>(&self, key: &Value, compute: F) -> Result<(T, CacheStatus)>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        let Some(path) = self.path_for(key) else {
            return Ok((compute()?, CacheStatus::Disabled));
        };
        let status = match Self::load::<T>(&path, key) {
            Some(Ok(v)) => return Ok((v, CacheStatus::Hit)),
            Some(Err(())) => {
                eprintln!("warning: cache entry {} is corrupt, recomputing", path.display());
                CacheStatus::Corrupt
            }
            None => CacheStatus::Miss,
        };
        let value = compute()?;
        let payload = serde_json::to_value(&value)?;
        let entry = Entry {
            version: env!("CARGO_PKG_VERSION").into(),
            key: key.clone(),
            checksum: digest(&payload.to_string()),
            payload,
        };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(&path, serde_json::to_string(&entry)?)?;
        Ok((value, status))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn hit_miss_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let key = json!({"table": "test", "n": 4});
        let (v, s) = cache.get_or_compute(&key, || Ok(vec![1, 2, 3])).unwrap();
        assert_eq!((v, s), (vec![1, 2, 3], CacheStatus::Miss));
        let (_, s) = cache.get_or_compute::<Vec<i32>, _>(&key, || unreachable!()).unwrap();
        assert_eq!(s, CacheStatus::Hit);

        let other = json!({"table": "test", "n": 5});
        let (_, s) = cache.get_or_compute(&other, || Ok(vec![0])).unwrap();
        assert_eq!(s, CacheStatus::Miss);

        let path = cache.path_for(&key).unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("[1,2,3]", "[1,2,4]");
        fs::write(&path, text).unwrap();
        let (v, s) = cache.get_or_compute(&key, || Ok(vec![1, 2, 3])).unwrap();
        assert_eq!((v, s), (vec![1, 2, 3], CacheStatus::Corrupt));
    }
}
