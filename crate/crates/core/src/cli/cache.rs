//! Content-addressed on-disk cache of formula records.
//!
//! The address is the SHA-256 of the canonical JSON of the key
//! `(schema_version, n, levi_class, cartan, component, engine)`. Writes go
//! through a temporary file in the cache directory followed by a rename, so
//! readers never observe a partial entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::record::{ComponentRecord, FormulaRecord, SCHEMA_VERSION};
use crate::error::Result;
use crate::formulas::Engine;
use crate::levi::LeviClass;

pub const CACHE_ENV: &str = "ORBITFOURIER_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CacheKey {
    pub schema_version: u32,
    pub n: usize,
    pub levi_class: LeviClass,
    pub cartan: usize,
    pub component: ComponentRecord,
    pub engine: Engine,
}

impl CacheKey {
    pub fn of(record: &FormulaRecord) -> CacheKey {
        CacheKey {
            schema_version: record.schema_version,
            n: record.n,
            levi_class: record.levi_class.clone(),
            cartan: record.cartan,
            component: record.component.clone(),
            engine: record.provenance.engine,
        }
    }

    pub fn new(n: usize, levi_class: LeviClass, cartan: usize, component: ComponentRecord, engine: Engine) -> CacheKey {
        CacheKey { schema_version: SCHEMA_VERSION, n, levi_class, cartan, component, engine }
    }

    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(self).expect("keys always serialize");
        hex::encode(Sha256::digest(&json))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PutOutcome {
    Stored,
    AlreadyPresent,
}

/// Cache directory: explicit flag, then `ORBITFOURIER_CACHE`, then the user
/// cache directory.
pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(p);
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(p).join("orbitfourier");
    }
    if let Some(home) = std::env::var_os("HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(home).join(".cache").join("orbitfourier");
    }
    PathBuf::from(".orbitfourier-cache")
}

#[derive(Clone, Debug)]
pub struct FormulaCache {
    dir: PathBuf,
}

impl FormulaCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<FormulaCache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(FormulaCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    pub fn put(&self, record: &FormulaRecord) -> Result<PutOutcome> {
        let path = self.path_for(&CacheKey::of(record));
        let json = record.to_json();
        if let Ok(existing) = fs::read_to_string(&path) {
            if existing == json {
                return Ok(PutOutcome::AlreadyPresent);
            }
        }
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(json.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(PutOutcome::Stored)
    }

    /// `Ok(None)` on a miss. Unreadable or invalid entries count as misses
    /// and are reported through the log.
    pub fn get(&self, key: &CacheKey) -> Result<Option<FormulaRecord>> {
        let path = self.path_for(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => {
                log::warn!("cache entry {} unreadable, treating as miss: {e}", path.display());
                return Ok(None);
            }
        };
        let record = match FormulaRecord::from_json(&text) {
            Ok(r) => r,
            Err(e) => {
                log::warn!("cache entry {} is corrupt, treating as miss: {e}", path.display());
                return Ok(None);
            }
        };
        if CacheKey::of(&record) != *key {
            log::warn!("cache entry {} holds a different key, treating as miss", path.display());
            return Ok(None);
        }
        if let Err(e) = record.to_formula() {
            log::warn!("cache entry {} fails validation, treating as miss: {e}", path.display());
            return Ok(None);
        }
        Ok(Some(record))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::nilpotent_ft_direct;
    use crate::rootdata::{make_cartan, Component};

    fn sample() -> FormulaRecord {
        let f = nilpotent_ft_direct(
            &LeviClass::new(vec![2, 1]).unwrap(),
            &Component::standard(make_cartan(3, 0).unwrap()),
        )
        .unwrap();
        FormulaRecord::from_formula(&f, None)
    }

    #[test]
    fn put_get_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = FormulaCache::open(dir.path()).unwrap();
        let rec = sample();
        let key = CacheKey::of(&rec);
        assert_eq!(cache.get(&key).unwrap(), None);
        assert_eq!(cache.put(&rec).unwrap(), PutOutcome::Stored);
        assert_eq!(cache.put(&rec).unwrap(), PutOutcome::AlreadyPresent);
        assert_eq!(cache.get(&key).unwrap(), Some(rec));
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn corrupt_entry_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = FormulaCache::open(dir.path()).unwrap();
        let rec = sample();
        let key = CacheKey::of(&rec);
        fs::write(cache.path_for(&key), "{ not json").unwrap();
        assert_eq!(cache.get(&key).unwrap(), None);
        // A later put repairs it.
        assert_eq!(cache.put(&rec).unwrap(), PutOutcome::Stored);
        assert_eq!(cache.get(&key).unwrap(), Some(rec));
    }

    #[test]
    fn flag_wins_over_environment() {
        let p = Path::new("/tmp/explicit");
        assert_eq!(resolve_dir(Some(p)), p);
    }
}
