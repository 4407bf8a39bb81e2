//! On-disk result cache. Entries are keyed by engine version, group
//! fingerprint, operation label, parameters and the active limits; a lookup that fails for any
//! reason is treated as a miss, so deleting the directory never changes
//! results.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub engine_version: String,
    pub fingerprint: String,
    pub operation: String,
    pub parameters: serde_json::Value,
    pub limits: icpi_core::Limits,
}

impl CacheKey {
    pub fn new(fingerprint: String, operation: &str, parameters: serde_json::Value) -> Self {
        CacheKey {
            engine_version: icpi_core::ENGINE_VERSION.to_string(),
            fingerprint,
            operation: operation.to_string(),
            parameters,
            limits: icpi_core::limits(),
        }
    }

    fn file_name(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("key serializes");
        format!("{}.json", hex::encode(Sha256::digest(bytes)))
    }
}

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    key: CacheKey,
    value: T,
}

pub struct Cache {
    dir: Option<PathBuf>,
    pub hits: usize,
    /// Engine computations performed because no cached result was usable.
    pub evaluations: usize,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache {
            dir,
            hits: 0,
            evaluations: 0,
        }
    }

    fn lookup<T: DeserializeOwned>(&self, key: &CacheKey) -> Option<T> {
        let path = self.dir.as_ref()?.join(key.file_name());
        let text = fs::read_to_string(path).ok()?;
        let entry: Entry<T> = serde_json::from_str(&text).ok()?;
        (entry.key == *key).then_some(entry.value)
    }

    fn store<T: Serialize>(&self, key: &CacheKey, value: &T) -> Result<(), CliError> {
        let Some(dir) = &self.dir else { return Ok(()) };
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let text = serde_json::to_vec(&Entry {
            key: key.clone(),
            value,
        })
        .map_err(|e| CliError::Usage(e.to_string()))?;
        write_atomically(&dir.join(key.file_name()), &text)
    }

    /// Returns the cached value for `key`, or computes, stores and returns it.
    /// `compute` reports how many engine evaluations it performed.
    pub fn get_or_compute<T, F>(&mut self, key: CacheKey, compute: F) -> Result<T, CliError>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<(T, usize), CliError>,
    {
        if let Some(v) = self.lookup(&key) {
            self.hits += 1;
            return Ok(v);
        }
        let (value, n) = compute()?;
        self.evaluations += n;
        self.store(&key, &value)?;
        Ok(value)
    }
}

/// Writes `bytes` to a temporary file beside `path` and renames it into place.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| CliError::io(&dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}
