//! On-disk memo of path labelings that had to be found by search.
//!
//! The file is a versioned JSON map from request key to label sequence.
//! Readers share an in-memory snapshot; writers take an exclusive lock on a
//! sidecar `.lock` file, merge with whatever is on disk, and replace the file
//! atomically, so concurrent processes never lose each other's entries.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Environment variable naming the cache file.
pub const CACHE_ENV: &str = "GRACEFUL_PATH_CACHE";

pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug)]
pub struct PathCache {
    path: PathBuf,
    entries: RwLock<BTreeMap<String, Vec<usize>>>,
}

impl PathCache {
    /// Opens the cache at `path`. A missing file is an empty cache; a file
    /// written by another format version is ignored and replaced on the next
    /// write.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let entries = read_entries(&path)?;
        Ok(PathCache {
            path,
            entries: RwLock::new(entries),
        })
    }

    /// Opens the cache named by [`CACHE_ENV`], if set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(p) if !p.is_empty() => Self::open(PathBuf::from(p)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.read().map(|e| e.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &str) -> Option<Vec<usize>> {
        self.entries.read().ok()?.get(key).cloned()
    }

    /// Records an entry in memory and on disk.
    pub fn insert(&self, key: &str, labels: &[usize]) -> Result<()> {
        let lock_path = self.path.with_extension("lock");
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let lock = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&lock_path)?;
        lock.lock()?;

        let mut on_disk = read_entries(&self.path)?;
        on_disk.insert(key.to_string(), labels.to_vec());
        write_entries(&self.path, &on_disk)?;
        drop(lock);

        if let Ok(mut entries) = self.entries.write() {
            entries.extend(on_disk);
        }
        Ok(())
    }
}

fn read_entries(path: &Path) -> Result<BTreeMap<String, Vec<usize>>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(e.into()),
    };
    let value: serde_json::Value = serde_json::from_reader(BufReader::new(file))
        .map_err(|e| invalid!("cache file {} is not valid JSON: {e}", path.display()))?;
    if value.get("version").and_then(|v| v.as_u64()) != Some(u64::from(CACHE_FORMAT_VERSION)) {
        return Ok(BTreeMap::new());
    }
    let parsed: CacheFile = serde_json::from_value(value)
        .map_err(|e| invalid!("cache file {} is malformed: {e}", path.display()))?;
    Ok(parsed.entries)
}

fn write_entries(path: &Path, entries: &BTreeMap<String, Vec<usize>>) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    let doc = CacheFile {
        version: CACHE_FORMAT_VERSION,
        entries: entries.clone(),
    };
    serde_json::to_writer(&mut tmp, &doc)?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_merge() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("paths.json");
        let a = PathCache::open(&path).unwrap();
        let b = PathCache::open(&path).unwrap();
        assert!(a.is_empty());
        a.insert("k1", &[0, 2, 1]).unwrap();
        b.insert("k2", &[1, 0]).unwrap();
        assert_eq!(b.get("k1"), Some(vec![0, 2, 1]));
        let c = PathCache::open(&path).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.get("k2"), Some(vec![1, 0]));
    }

    #[test]
    fn other_version_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("paths.json");
        fs::write(&path, r#"{"version": 999, "entries": {"k": [0]}}"#).unwrap();
        let cache = PathCache::open(&path).unwrap();
        assert!(cache.is_empty());
        cache.insert("k", &[0, 1]).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.contains("\"version\":1"));
    }

    #[test]
    fn garbage_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("paths.json");
        fs::write(&path, "not json").unwrap();
        assert!(PathCache::open(&path).is_err());
    }
}
