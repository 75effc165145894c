//! Persistent result cache: one JSON document keyed by the canonical
//! moduli string, entries carrying the report, the tool version and a
//! timestamp.  A version bump is a cache miss; a corrupt file is
//! rebuilt with a warning.

use std::collections::BTreeMap;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::report::JsonReport;

pub const CACHE_DIR_ENV: &str = "DAVENPORT_CACHE_DIR";
pub const CACHE_FILE_NAME: &str = "davenport-cache.json";

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub tool_version: String,
    pub timestamp: u64,
    pub report: JsonReport,
}

#[derive(Default, Serialize, Deserialize)]
struct CacheDocument {
    entries: BTreeMap<String, CacheEntry>,
}

pub struct Cache {
    path: PathBuf,
    doc: CacheDocument,
}

impl Cache {
    /// Loads the cache; a missing file starts empty, an unparsable file
    /// starts empty with a warning string returned for the caller to
    /// print.  Read errors other than "not found" are real I/O failures.
    pub fn open(path: &Path) -> io::Result<(Cache, Option<String>)> {
        match std::fs::read_to_string(path) {
            Ok(text) => match serde_json::from_str::<CacheDocument>(&text) {
                Ok(doc) => Ok((Cache { path: path.to_owned(), doc }, None)),
                Err(e) => Ok((
                    Cache { path: path.to_owned(), doc: CacheDocument::default() },
                    Some(format!("cache {} is corrupt ({e}); rebuilding", path.display())),
                )),
            },
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                Ok((Cache { path: path.to_owned(), doc: CacheDocument::default() }, None))
            }
            Err(e) => Err(e),
        }
    }

    /// Entry for the key, only if it was written by this tool version.
    pub fn get(&self, key: &str) -> Option<&CacheEntry> {
        self.doc
            .entries
            .get(key)
            .filter(|e| e.tool_version == tool_version())
    }

    pub fn put(&mut self, key: String, report: JsonReport) {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        self.doc.entries.insert(
            key.clone(),
            CacheEntry { key, tool_version: tool_version().to_owned(), timestamp, report },
        );
    }

    pub fn save(&self) -> io::Result<()> {
        if let Some(parent) = self.path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        let mut text = serde_json::to_string_pretty(&self.doc).expect("cache serializes");
        text.push('\n');
        std::fs::write(&self.path, text)
    }
}

/// Cache location: an explicit `--cache` path wins, otherwise the file
/// lives in `$DAVENPORT_CACHE_DIR`; with neither, caching is off.
pub fn resolve_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| {
        std::env::var_os(CACHE_DIR_ENV).map(|dir| PathBuf::from(dir).join(CACHE_FILE_NAME))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use davenport_core::search::davenport_semigroup;
    use davenport_core::ring::RingSpec;
    use davenport_core::Limits;

    fn temp_file(name: &str) -> PathBuf {
        let mut p = std::env::temp_dir();
        p.push(format!("davenport-cache-test-{}-{name}", std::process::id()));
        p
    }

    #[test]
    fn roundtrip_identity() {
        let path = temp_file("roundtrip.json");
        let _ = std::fs::remove_file(&path);

        let ring = RingSpec::new(vec![4]).unwrap();
        let report = davenport_semigroup(&ring, &Limits::default()).unwrap();
        let json = crate::report::JsonReport::from_report(&report);

        let (mut cache, warn) = Cache::open(&path).unwrap();
        assert!(warn.is_none());
        cache.put("4".into(), json.clone());
        cache.save().unwrap();

        let (cache, warn) = Cache::open(&path).unwrap();
        assert!(warn.is_none());
        let entry = cache.get("4").unwrap();
        assert_eq!(entry.report, json);
        assert_eq!(entry.report.d_semigroup, 3);
        assert_eq!(entry.tool_version, tool_version());

        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn corrupt_cache_rebuilds_with_warning() {
        let path = temp_file("corrupt.json");
        std::fs::write(&path, "{ not json").unwrap();
        let (cache, warn) = Cache::open(&path).unwrap();
        assert!(warn.is_some());
        assert!(cache.get("4").is_none());
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn version_mismatch_is_a_miss() {
        let path = temp_file("version.json");
        let _ = std::fs::remove_file(&path);
        let ring = RingSpec::new(vec![4]).unwrap();
        let report = davenport_semigroup(&ring, &Limits::default()).unwrap();
        let json = crate::report::JsonReport::from_report(&report);

        let (mut cache, _) = Cache::open(&path).unwrap();
        cache.put("4".into(), json);
        cache.doc.entries.get_mut("4").unwrap().tool_version = "0.0.0-other".into();
        cache.save().unwrap();

        let (cache, _) = Cache::open(&path).unwrap();
        assert!(cache.get("4").is_none());
        std::fs::remove_file(&path).unwrap();
    }
}
