//! In-memory and on-disk caches for pattern reductions and strands.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::pattern::{PatternReduction, PivotPolicy};
use super::strand::{ReducedStrand, StrandJson};
use super::CechError;

pub const CACHE_ENV: &str = "WEYMAN_CACHE_DIR";

/// Policy, number of cones and cover (`None` for an empty pattern).
pub(crate) type PatternKey = (PivotPolicy, usize, Option<Vec<u32>>);
pub(crate) type StrandKey = (String, PivotPolicy, Vec<i64>, Vec<u32>);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub memory_hits: u64,
    pub disk_hits: u64,
    pub misses: u64,
    pub corrupt: u64,
    pub patterns: usize,
    pub strands: usize,
    pub disk_entries: usize,
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    checksum: String,
    strand: StrandJson,
}

/// Shared cache. Cloning a context shares its store.
#[derive(Default)]
pub struct StrandStore {
    pub(crate) patterns: RwLock<HashMap<PatternKey, Arc<PatternReduction>>>,
    pub(crate) strands: RwLock<HashMap<StrandKey, Arc<ReducedStrand>>>,
    pub(crate) emin: RwLock<HashMap<(String, PivotPolicy, Vec<i64>), Vec<u32>>>,
    dir: Option<PathBuf>,
    memory_hits: AtomicU64,
    disk_hits: AtomicU64,
    misses: AtomicU64,
    corrupt: AtomicU64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let d = Sha256::digest(bytes);
    d.iter().map(|b| format!("{b:02x}")).collect()
}

impl StrandStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        StrandStore { dir: Some(dir.into()), ..Self::default() }
    }

    /// Uses the directory named by `WEYMAN_CACHE_DIR` if set.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Self::with_dir(PathBuf::from(d)),
            _ => Self::in_memory(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            memory_hits: self.memory_hits.load(Ordering::Relaxed),
            disk_hits: self.disk_hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            corrupt: self.corrupt.load(Ordering::Relaxed),
            patterns: self.patterns.read().unwrap().len(),
            strands: self.strands.read().unwrap().len(),
            disk_entries: self.disk_files().len(),
        }
    }

    fn disk_files(&self) -> Vec<PathBuf> {
        let Some(dir) = &self.dir else { return Vec::new() };
        let Ok(rd) = fs::read_dir(dir) else { return Vec::new() };
        rd.filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect()
    }

    /// Drops every cached object, in memory and on disk.
    pub fn clear(&self) -> Result<usize, CechError> {
        self.patterns.write().unwrap().clear();
        self.strands.write().unwrap().clear();
        self.emin.write().unwrap().clear();
        let files = self.disk_files();
        for f in &files {
            fs::remove_file(f).map_err(|e| CechError::Io(e.to_string()))?;
        }
        Ok(files.len())
    }

    pub(crate) fn file_key(rays: &[Vec<i64>], cones: &[Vec<usize>], key: &StrandKey) -> String {
        let v = serde_json::json!({
            "rays": rays,
            "maxCones": cones,
            "alpha": key.2,
            "e": key.3,
            "policy": format!("{:?}", key.1),
        });
        sha256_hex(v.to_string().as_bytes())
    }

    pub(crate) fn get_strand(&self, key: &StrandKey, file: &str) -> Option<Arc<ReducedStrand>> {
        if let Some(s) = self.strands.read().unwrap().get(key) {
            self.memory_hits.fetch_add(1, Ordering::Relaxed);
            return Some(s.clone());
        }
        let path = self.dir.as_ref()?.join(format!("{file}.json"));
        let text = fs::read_to_string(&path).ok()?;
        let parsed: Option<Envelope> = serde_json::from_str(&text).ok();
        let valid = parsed.filter(|env| {
            serde_json::to_string(&env.strand).map(|s| sha256_hex(s.as_bytes())).ok().as_deref()
                == Some(env.checksum.as_str())
        });
        match valid {
            Some(env) if env.strand.alpha == key.2 && env.strand.e == key.3 => {
                self.disk_hits.fetch_add(1, Ordering::Relaxed);
                let s = Arc::new(ReducedStrand::from_json(env.strand));
                self.strands.write().unwrap().insert(key.clone(), s.clone());
                Some(s)
            }
            _ => {
                self.corrupt.fetch_add(1, Ordering::Relaxed);
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    pub(crate) fn put_strand(&self, key: StrandKey, file: &str, s: Arc<ReducedStrand>) -> Result<(), CechError> {
        self.misses.fetch_add(1, Ordering::Relaxed);
        if let Some(dir) = &self.dir {
            fs::create_dir_all(dir).map_err(|e| CechError::Io(e.to_string()))?;
            let strand = s.to_json();
            let body = serde_json::to_string(&strand).map_err(|e| CechError::Io(e.to_string()))?;
            let env = Envelope { checksum: sha256_hex(body.as_bytes()), strand };
            let text = serde_json::to_string(&env).map_err(|e| CechError::Io(e.to_string()))?;
            let tmp = dir.join(format!("{file}.tmp"));
            fs::write(&tmp, text).map_err(|e| CechError::Io(e.to_string()))?;
            fs::rename(&tmp, dir.join(format!("{file}.json"))).map_err(|e| CechError::Io(e.to_string()))?;
        }
        self.strands.write().unwrap().insert(key, s);
        Ok(())
    }
}
