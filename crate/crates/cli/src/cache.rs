//! Content-addressed result cache with checksum validation.
//!
//! Entries are keyed by (module, canonical parameter hash, crate version);
//! a corrupted payload is detected by its checksum and silently recomputed.
//! An unwritable cache directory degrades to uncached operation with a
//! warning.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn fnv64(data: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in data {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// Cache rooted at `CYCLEFORGE_CACHE`, falling back to a directory under
    /// the user cache location. A directory that cannot be created disables
    /// caching with a warning.
    pub fn from_env() -> Cache {
        let dir = std::env::var_os("CYCLEFORGE_CACHE")
            .map(PathBuf::from)
            .or_else(|| {
                std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("cycleforge"))
            });
        match dir {
            Some(d) => Cache::at(d),
            None => {
                eprintln!("warning: no cache directory available; running uncached");
                Cache { dir: None }
            }
        }
    }

    pub fn at(dir: PathBuf) -> Cache {
        match fs::create_dir_all(&dir) {
            Ok(()) => Cache { dir: Some(dir) },
            Err(e) => {
                eprintln!(
                    "warning: cache directory {} unusable ({e}); running uncached",
                    dir.display()
                );
                Cache { dir: None }
            }
        }
    }

    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    fn entry_path(&self, module: &str, params_key: &str, suffix: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let hash = fnv64(params_key.as_bytes());
        Some(dir.join(format!("{module}-{hash:016x}-v{VERSION}{suffix}")))
    }

    /// Fetch a payload; checksum failures count as misses.
    pub fn get(&self, module: &str, params_key: &str) -> Option<Vec<u8>> {
        let path = self.entry_path(module, params_key, ".bin")?;
        let raw = fs::read(&path).ok()?;
        if raw.len() < 8 {
            return None;
        }
        let (body, tail) = raw.split_at(raw.len() - 8);
        let stored = u64::from_le_bytes(tail.try_into().ok()?);
        if fnv64(body) != stored {
            eprintln!(
                "warning: cache entry {} failed its checksum; recomputing",
                path.display()
            );
            return None;
        }
        Some(body.to_vec())
    }

    pub fn put(&self, module: &str, params_key: &str, payload: &[u8]) {
        let Some(path) = self.entry_path(module, params_key, ".bin") else {
            return;
        };
        let mut data = payload.to_vec();
        data.extend_from_slice(&fnv64(payload).to_le_bytes());
        if let Err(e) = fs::write(&path, data) {
            eprintln!("warning: could not write cache entry {} ({e})", path.display());
        }
    }

    /// Single-slot checkpoint store for a long search.
    pub fn checkpoint_store(&self, module: &str, params_key: &str) -> FileCheckpointStore {
        FileCheckpointStore {
            path: self.entry_path(module, params_key, ".ckpt"),
        }
    }

    pub fn clear_checkpoint(&self, module: &str, params_key: &str) {
        if let Some(path) = self.entry_path(module, params_key, ".ckpt") {
            let _ = fs::remove_file(path);
        }
    }
}

pub struct FileCheckpointStore {
    path: Option<PathBuf>,
}

impl cycleforge::hurwitz::CheckpointStore for FileCheckpointStore {
    fn load(&mut self) -> io::Result<Option<Vec<u8>>> {
        let Some(path) = &self.path else {
            return Ok(None);
        };
        match fs::read(path) {
            Ok(data) => Ok(Some(data)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn save(&mut self, bytes: &[u8]) -> io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let tmp = path.with_extension("ckpt.tmp");
        fs::write(&tmp, bytes)?;
        fs::rename(&tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn put_get_round_trip() {
        let dir = std::env::temp_dir().join(format!("cycleforge-cache-test-{}", std::process::id()));
        let cache = Cache::at(dir.clone());
        cache.put("unit", "k", b"payload");
        assert_eq!(cache.get("unit", "k").as_deref(), Some(&b"payload"[..]));
        // corruption is detected
        let path = cache.entry_path("unit", "k", ".bin").unwrap();
        let mut raw = fs::read(&path).unwrap();
        raw[0] ^= 0xff;
        fs::write(&path, raw).unwrap();
        assert_eq!(cache.get("unit", "k"), None);
        let _ = fs::remove_dir_all(dir);
    }
}
