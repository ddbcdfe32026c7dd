//! On-disk cache of direct computations, one JSON file per `(n, k, mode)`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use cuplen_core::ComputedData;
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

/// The only cached computation: the oriented characteristic subalgebra.
pub const ORIENTED_MODE: &str = "oriented";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    schema: u32,
    n: u32,
    k: u32,
    mode: String,
    data: ComputedData,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache file {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("cache file {path} rejected: {reason}")]
    Rejected { path: PathBuf, reason: String },
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn path(&self, n: u32, k: u32, mode: &str) -> PathBuf {
        self.dir.join(format!("gr_{n}_{k}_{mode}.json"))
    }

    /// `Ok(None)` on a miss; malformed or mismatched files are errors.
    pub fn load(&self, n: u32, k: u32) -> Result<Option<ComputedData>, CacheError> {
        let path = self.path(n, k, ORIENTED_MODE);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let reject = |reason: String| CacheError::Rejected { path: path.clone(), reason };
        let entry: Entry = serde_json::from_str(&text).map_err(|e| reject(e.to_string()))?;
        if entry.schema != SCHEMA {
            return Err(reject(format!("schema {} (expected {SCHEMA})", entry.schema)));
        }
        if (entry.n, entry.k, entry.mode.as_str()) != (n, k, ORIENTED_MODE)
            || (entry.data.n, entry.data.k) != (n, k)
        {
            return Err(reject("key does not match file name".into()));
        }
        Ok(Some(entry.data))
    }

    /// Writes to a temporary file in the cache directory, then renames.
    pub fn store(&self, data: &ComputedData) -> Result<(), CacheError> {
        let path = self.path(data.n, data.k, ORIENTED_MODE);
        let io_err = |source| CacheError::Io { path: path.clone(), source };
        fs::create_dir_all(&self.dir).map_err(io_err)?;
        let entry = Entry { schema: SCHEMA, n: data.n, k: data.k, mode: ORIENTED_MODE.into(), data: data.clone() };
        let mut body = serde_json::to_string_pretty(&entry).expect("serializable");
        body.push('\n');
        let tmp = temp_name(&self.dir, &path);
        let write = || -> io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(body.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, &path)
        };
        write().map_err(|e| {
            let _ = fs::remove_file(&tmp);
            io_err(e)
        })
    }
}

fn temp_name(dir: &Path, target: &Path) -> PathBuf {
    let name = target.file_name().and_then(|s| s.to_str()).unwrap_or("entry");
    let unique = format!(
        ".{name}.{}.{:?}.tmp",
        std::process::id(),
        std::thread::current().id()
    )
    .replace(['(', ')'], "");
    dir.join(unique)
}
