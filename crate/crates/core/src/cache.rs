//! Versioned on-disk cache for Macdonald tables and kernels.
//!
//! Files carry a format-version header and are written atomically under an
//! exclusive lock file; identical content is never rewritten, so warming is
//! byte-idempotent. A version mismatch refuses the file (read and write) and
//! reports; it never silently recomputes into an old-format file.

use crate::error::{Error, Result};
use crate::jsonio::{
    multisym_from_json, multisym_to_json, partition_from_json, partition_to_json,
    symfunc_from_json, symfunc_to_json, to_canonical_string,
};
use crate::kernel::{cached_kernel_keys, hlv_kernel, install_kernel, KernelResult};
use crate::macdonald::MacdonaldTable;
use crate::partition::Partition;
use serde_json::{json, Value};
use std::fs;
use std::path::{Path, PathBuf};

pub const CACHE_FORMAT_VERSION: u32 = 1;

pub const CACHE_DIR_ENV: &str = "CHARVAR_CACHE_DIR";

/// A cache directory handle.
pub struct CacheDir {
    dir: PathBuf,
}

/// Exclusive lock file; removed on drop.
struct LockGuard {
    path: PathBuf,
}

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

fn acquire_lock(dir: &Path) -> Result<LockGuard> {
    let path = dir.join("cache.lock");
    for _ in 0..500 {
        match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(_) => return Ok(LockGuard { path }),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                std::thread::sleep(std::time::Duration::from_millis(10));
            }
            Err(e) => return Err(Error::CacheIo(e.to_string())),
        }
    }
    Err(Error::CacheIo("could not acquire cache lock".to_string()))
}

impl CacheDir {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::CacheIo(e.to_string()))?;
        Ok(CacheDir { dir })
    }

    /// Resolves the directory from an explicit flag, the environment, or the
    /// documented default `~/.cache/charvar`.
    pub fn resolve(explicit: Option<&str>) -> Result<Self> {
        if let Some(d) = explicit {
            return CacheDir::new(d);
        }
        if let Ok(d) = std::env::var(CACHE_DIR_ENV) {
            if !d.is_empty() {
                return CacheDir::new(d);
            }
        }
        let home = std::env::var("HOME").unwrap_or_else(|_| ".".to_string());
        CacheDir::new(PathBuf::from(home).join(".cache").join("charvar"))
    }

    pub fn path(&self) -> &Path {
        &self.dir
    }

    fn macdonald_path(&self) -> PathBuf {
        self.dir.join(format!("macdonald_v{CACHE_FORMAT_VERSION}.json"))
    }

    fn kernel_path(&self, n: u32, g: u32, k: usize) -> PathBuf {
        self.dir
            .join(format!("kernel_v{CACHE_FORMAT_VERSION}_n{n}_g{g}_k{k}.json"))
    }

    fn check_version(&self, v: &Value, kind: &str) -> Result<()> {
        let found = v
            .get("format_version")
            .and_then(|x| x.as_u64())
            .unwrap_or(0) as u32;
        if found != CACHE_FORMAT_VERSION {
            return Err(Error::CacheVersion {
                found,
                expected: CACHE_FORMAT_VERSION,
            });
        }
        if v.get("kind").and_then(|x| x.as_str()) != Some(kind) {
            return Err(Error::CacheIo(format!("cache file is not a {kind} file")));
        }
        Ok(())
    }

    /// Loads Macdonald entries into the in-process table. Missing file is
    /// fine; a version mismatch is an error. Returns entries loaded.
    pub fn load_macdonald(&self) -> Result<usize> {
        let path = self.macdonald_path();
        if !path.exists() {
            return Ok(0);
        }
        let text = fs::read_to_string(&path).map_err(|e| Error::CacheIo(e.to_string()))?;
        let v: Value =
            serde_json::from_str(&text).map_err(|e| Error::CacheIo(e.to_string()))?;
        self.check_version(&v, "macdonald")?;
        let entries = v
            .get("entries")
            .and_then(|e| e.as_array())
            .ok_or_else(|| Error::CacheIo("missing entries".to_string()))?;
        let table = MacdonaldTable::global();
        let mut loaded = 0;
        for pair in entries {
            let arr = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::CacheIo("malformed entry".to_string()))?;
            let lam = partition_from_json(&arr[0])?;
            let f = symfunc_from_json(&arr[1], lam.size().max(1) as usize)?;
            table.insert_checked(lam, f)?;
            loaded += 1;
        }
        Ok(loaded)
    }

    /// Persists the in-process Macdonald table. Returns true when the file
    /// changed on disk.
    pub fn save_macdonald(&self) -> Result<bool> {
        let _lock = acquire_lock(&self.dir)?;
        let path = self.macdonald_path();
        if path.exists() {
            // refuse to overwrite an unreadable or wrong-version file
            let text = fs::read_to_string(&path).map_err(|e| Error::CacheIo(e.to_string()))?;
            let v: Value =
                serde_json::from_str(&text).map_err(|e| Error::CacheIo(e.to_string()))?;
            self.check_version(&v, "macdonald")?;
        }
        let snapshot = MacdonaldTable::global().snapshot();
        let entries: Vec<Value> = snapshot
            .iter()
            .map(|(lam, f)| json!([partition_to_json(lam), symfunc_to_json(f)]))
            .collect();
        let doc = json!({
            "format_version": CACHE_FORMAT_VERSION,
            "kind": "macdonald",
            "entries": Value::Array(entries),
        });
        write_if_changed(&path, &to_canonical_string(&doc))
    }

    /// Loads a kernel file if present.
    pub fn load_kernel(&self, n: u32, g: u32, k: usize) -> Result<bool> {
        let path = self.kernel_path(n, g, k);
        if !path.exists() {
            return Ok(false);
        }
        let text = fs::read_to_string(&path).map_err(|e| Error::CacheIo(e.to_string()))?;
        let v: Value =
            serde_json::from_str(&text).map_err(|e| Error::CacheIo(e.to_string()))?;
        self.check_version(&v, "kernel")?;
        let kernel = multisym_from_json(
            v.get("kernel")
                .ok_or_else(|| Error::CacheIo("missing kernel".to_string()))?,
        )?;
        install_kernel(KernelResult::from_parts(n, g, k, kernel)?);
        Ok(true)
    }

    /// Persists one computed kernel. Returns true when the file changed.
    pub fn save_kernel(&self, kr: &KernelResult) -> Result<bool> {
        let _lock = acquire_lock(&self.dir)?;
        let path = self.kernel_path(kr.n, kr.g, kr.k);
        if path.exists() {
            let text = fs::read_to_string(&path).map_err(|e| Error::CacheIo(e.to_string()))?;
            let v: Value =
                serde_json::from_str(&text).map_err(|e| Error::CacheIo(e.to_string()))?;
            self.check_version(&v, "kernel")?;
        }
        let doc = json!({
            "format_version": CACHE_FORMAT_VERSION,
            "kind": "kernel",
            "n": kr.n,
            "g": kr.g,
            "k": kr.k,
            "kernel": multisym_to_json(kr.kernel()),
        });
        write_if_changed(&path, &to_canonical_string(&doc))
    }

    /// Precomputes Macdonald tables to degree n and the (n, g, k) kernel,
    /// persisting both. Idempotent: a second warm writes nothing.
    pub fn warm(&self, n: u32, g: u32, k: usize) -> Result<Value> {
        self.load_macdonald()?;
        self.load_kernel(n, g, k)?;
        for d in 1..=n {
            for lam in Partition::all(d) {
                crate::macdonald::htilde(&lam)?;
            }
        }
        let kr = hlv_kernel(n, g, k)?;
        let macdonald_changed = self.save_macdonald()?;
        let kernel_changed = self.save_kernel(&kr)?;
        Ok(json!({
            "warmed": {"n": n, "g": g, "k": k},
            "macdonald_written": macdonald_changed,
            "kernel_written": kernel_changed,
        }))
    }

    /// Reports entry counts and file sizes.
    pub fn status(&self) -> Result<Value> {
        let mut kernels = Vec::new();
        let mut files = Vec::new();
        let mut macdonald_entries = 0usize;
        if self.macdonald_path().exists() {
            let text = fs::read_to_string(self.macdonald_path())
                .map_err(|e| Error::CacheIo(e.to_string()))?;
            let v: Value =
                serde_json::from_str(&text).map_err(|e| Error::CacheIo(e.to_string()))?;
            self.check_version(&v, "macdonald")?;
            macdonald_entries = v
                .get("entries")
                .and_then(|e| e.as_array())
                .map_or(0, |a| a.len());
        }
        let rd = fs::read_dir(&self.dir).map_err(|e| Error::CacheIo(e.to_string()))?;
        let mut names: Vec<(String, u64)> = Vec::new();
        for entry in rd {
            let entry = entry.map_err(|e| Error::CacheIo(e.to_string()))?;
            let name = entry.file_name().to_string_lossy().to_string();
            let size = entry
                .metadata()
                .map_err(|e| Error::CacheIo(e.to_string()))?
                .len();
            names.push((name, size));
        }
        names.sort();
        for (name, size) in names {
            if let Some(rest) = name
                .strip_prefix(&format!("kernel_v{CACHE_FORMAT_VERSION}_"))
                .and_then(|r| r.strip_suffix(".json"))
            {
                let fields: Vec<&str> = rest.split('_').collect();
                if fields.len() == 3 {
                    let n = fields[0].trim_start_matches('n').parse::<u32>().ok();
                    let g = fields[1].trim_start_matches('g').parse::<u32>().ok();
                    let k = fields[2].trim_start_matches('k').parse::<u32>().ok();
                    if let (Some(n), Some(g), Some(k)) = (n, g, k) {
                        kernels.push(json!([n, g, k]));
                    }
                }
            }
            if name.ends_with(".json") {
                files.push(json!({"file": name, "bytes": size}));
            }
        }
        Ok(json!({
            "dir": self.dir.to_string_lossy(),
            "macdonald_entries": macdonald_entries,
            "kernels": kernels,
            "in_memory_kernels": cached_kernel_keys()
                .iter()
                .map(|&(n, g, k)| json!([n, g, k]))
                .collect::<Vec<_>>(),
            "files": files,
        }))
    }

    /// Removes versioned cache files only. Returns how many were removed.
    pub fn clear(&self) -> Result<u32> {
        let _lock = acquire_lock(&self.dir)?;
        let mut removed = 0;
        let rd = fs::read_dir(&self.dir).map_err(|e| Error::CacheIo(e.to_string()))?;
        for entry in rd {
            let entry = entry.map_err(|e| Error::CacheIo(e.to_string()))?;
            let name = entry.file_name().to_string_lossy().to_string();
            let versioned = name
                .strip_prefix("macdonald_v")
                .or_else(|| name.strip_prefix("kernel_v"))
                .is_some_and(|r| r.ends_with(".json"));
            if versioned {
                fs::remove_file(entry.path()).map_err(|e| Error::CacheIo(e.to_string()))?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

/// Atomic write that skips identical content. Returns true when written.
fn write_if_changed(path: &Path, content: &str) -> Result<bool> {
    if let Ok(existing) = fs::read_to_string(path) {
        if existing == content {
            return Ok(false);
        }
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, content).map_err(|e| Error::CacheIo(e.to_string()))?;
    fs::rename(&tmp, path).map_err(|e| Error::CacheIo(e.to_string()))?;
    Ok(true)
}
