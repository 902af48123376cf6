//! On-disk cache for expensive artifacts, keyed by (schema version, q, kind).
//!
//! Each entry is one file: a single JSON header line carrying the key and an
//! FNV-1a content hash, followed by the raw payload bytes. Loads succeed only
//! on an exact key match and a verified hash. A lock file in the cache root
//! keeps concurrent writers out (advisory).

use serde::{Deserialize, Serialize};
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

/// Current schema version; entries from other versions are ignored.
pub const CACHE_SCHEMA: u32 = 1;

/// Environment variable selecting the cache root.
pub const CACHE_DIR_ENV: &str = "GSP4_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache header: {0}")]
    Header(#[from] serde_json::Error),
    #[error("cache entry {path} failed its hash check")]
    HashMismatch { path: PathBuf },
    #[error("cache entry key mismatch at {path}")]
    KeyMismatch { path: PathBuf },
    #[error("cache lock at {0} is held by another process")]
    Locked(PathBuf),
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct Header {
    schema: u32,
    q: u64,
    kind: String,
    hash: String,
    len: u64,
}

/// FNV-1a 64-bit content hash.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// A cache directory with an advisory writer lock.
pub struct Cache {
    root: PathBuf,
    _lock: Option<LockFile>,
    pub enabled: bool,
}

struct LockFile {
    path: PathBuf,
}

impl Drop for LockFile {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

impl Cache {
    /// Opens (creating if needed) the cache under `root`, taking the lock.
    pub fn open(root: &Path) -> Result<Cache, CacheError> {
        fs::create_dir_all(root)?;
        let lock_path = root.join(".lock");
        let mut acquired = None;
        for _ in 0..25 {
            match fs::OpenOptions::new().write(true).create_new(true).open(&lock_path) {
                Ok(mut f) => {
                    let _ = writeln!(f, "{}", std::process::id());
                    acquired = Some(LockFile { path: lock_path.clone() });
                    break;
                }
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    std::thread::sleep(std::time::Duration::from_millis(200));
                }
                Err(e) => return Err(e.into()),
            }
        }
        let lock = acquired.ok_or(CacheError::Locked(lock_path))?;
        Ok(Cache { root: root.to_path_buf(), _lock: Some(lock), enabled: true })
    }

    /// Resolves the cache root from the environment (or the default under the
    /// user cache dir) and opens it; `enabled = false` yields a no-op cache.
    pub fn from_env(enabled: bool) -> Result<Cache, CacheError> {
        if !enabled {
            return Ok(Cache { root: PathBuf::new(), _lock: None, enabled: false });
        }
        let root = std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("gsp4-cache"));
        Cache::open(&root)
    }

    fn path_for(&self, q: u64, kind: &str) -> PathBuf {
        self.root.join(format!("{kind}-q{q}-v{CACHE_SCHEMA}.bin"))
    }

    /// Stores a payload under `(schema, q, kind)`.
    pub fn save(&self, q: u64, kind: &str, payload: &[u8]) -> Result<(), CacheError> {
        if !self.enabled {
            return Ok(());
        }
        let header = Header {
            schema: CACHE_SCHEMA,
            q,
            kind: kind.to_string(),
            hash: format!("{:016x}", fnv1a64(payload)),
            len: payload.len() as u64,
        };
        let path = self.path_for(q, kind);
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            serde_json::to_writer(&mut f, &header)?;
            f.write_all(b"\n")?;
            f.write_all(payload)?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Loads the payload for `(schema, q, kind)`, verifying key and hash;
    /// `Ok(None)` when absent.
    pub fn load(&self, q: u64, kind: &str) -> Result<Option<Vec<u8>>, CacheError> {
        if !self.enabled {
            return Ok(None);
        }
        let path = self.path_for(q, kind);
        let mut f = match fs::File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut bytes = Vec::new();
        f.read_to_end(&mut bytes)?;
        let nl = bytes
            .iter()
            .position(|&b| b == b'\n')
            .ok_or(CacheError::HashMismatch { path: path.clone() })?;
        let header: Header = serde_json::from_slice(&bytes[..nl])?;
        if header.schema != CACHE_SCHEMA || header.q != q || header.kind != kind {
            return Err(CacheError::KeyMismatch { path });
        }
        let payload = &bytes[nl + 1..];
        if payload.len() as u64 != header.len
            || format!("{:016x}", fnv1a64(payload)) != header.hash
        {
            return Err(CacheError::HashMismatch { path });
        }
        Ok(Some(payload.to_vec()))
    }
}

/// Little-endian encoding helpers for binary payloads.
pub fn encode_u64s(values: &[u64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(values.len() * 8);
    for v in values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_u64s(bytes: &[u8]) -> Option<Vec<u64>> {
    if !bytes.len().is_multiple_of(8) {
        return None;
    }
    Some(bytes.chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().unwrap())).collect())
}

pub fn encode_u32s(values: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(values.len() * 4);
    for v in values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_u32s(bytes: &[u8]) -> Option<Vec<u32>> {
    if !bytes.len().is_multiple_of(4) {
        return None;
    }
    Some(bytes.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect())
}
