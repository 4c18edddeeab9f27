//! Optional on-disk memo of Kostka–Foulkes polynomials.
//!
//! When `QUIVINV_CACHE_DIR` names an existing directory, the in-memory table is loaded from
//! and saved to `kostka_foulkes.v1` inside it. The file is plain text: a header line, then one
//! `shape<TAB>content<TAB>polynomial` entry per line with the polynomial in machine format.
//! A missing directory disables persistence; a file with another header is ignored.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::exactalg::LaurentPolyQ;
use crate::partitions::{export_kf_cache, import_kf_cache, Partition};

pub const CACHE_ENV: &str = "QUIVINV_CACHE_DIR";
pub const CACHE_FILE: &str = "kostka_foulkes.v1";
const HEADER: &str = "quivinv kostka-foulkes cache v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed cache entry at line {line}: {text}")]
    Malformed { line: usize, text: String },
}

/// The cache directory from the environment, if it names an existing directory.
pub fn cache_dir() -> Option<PathBuf> {
    let dir = PathBuf::from(std::env::var_os(CACHE_ENV)?);
    dir.is_dir().then_some(dir)
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Loads entries from `dir` into memory; returns how many were read.
pub fn load(dir: &Path) -> Result<usize, CacheError> {
    let path = dir.join(CACHE_FILE);
    if !path.exists() {
        return Ok(0);
    }
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == HEADER => {}
        _ => return Ok(0),
    }
    let mut entries = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let malformed = || CacheError::Malformed {
            line: i + 1,
            text: line.to_string(),
        };
        let mut parts = line.split('\t');
        let (Some(a), Some(b), Some(p), None) = (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(malformed());
        };
        let shape: Partition = a.parse().map_err(|_| malformed())?;
        let content: Partition = b.parse().map_err(|_| malformed())?;
        let poly = LaurentPolyQ::parse_machine(p).ok_or_else(malformed)?;
        entries.push((shape, content, poly));
    }
    let n = entries.len();
    import_kf_cache(entries);
    Ok(n)
}

/// Writes the whole in-memory table to `dir`; returns the number of entries written.
pub fn save(dir: &Path) -> Result<usize, CacheError> {
    let path = dir.join(CACHE_FILE);
    let tmp = dir.join(format!("{CACHE_FILE}.tmp{}", std::process::id()));
    let entries = export_kf_cache();
    let mut out = String::with_capacity(64 * entries.len() + HEADER.len() + 1);
    out.push_str(HEADER);
    out.push('\n');
    for (a, b, p) in &entries {
        out.push_str(&format!("{a}\t{b}\t{}\n", p.to_machine_string()));
    }
    {
        let mut f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
        f.write_all(out.as_bytes()).map_err(io_err(&tmp))?;
    }
    fs::rename(&tmp, &path).map_err(io_err(&path))?;
    Ok(entries.len())
}

/// [`load`] from the environment's directory; `Ok(None)` when persistence is disabled.
pub fn load_from_env() -> Result<Option<usize>, CacheError> {
    cache_dir().map(|d| load(&d)).transpose()
}

/// [`save`] to the environment's directory; `Ok(None)` when persistence is disabled.
pub fn save_to_env() -> Result<Option<usize>, CacheError> {
    cache_dir().map(|d| save(&d)).transpose()
}
