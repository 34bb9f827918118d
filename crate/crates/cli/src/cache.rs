//! On-disk cache of enumerated monoids.
//!
//! Each entry is one JSON file named `<family>-<n>-<hash>.json`, where the
//! hash is a SHA-256 digest of the defining presentation. A lookup only hits
//! when the stored hash, the format version and the completeness flag all
//! match, so editing the relations invalidates old entries.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use origami_monoid::presentation::Presentation;
use origami_monoid::FiniteMonoid;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CacheFamily {
    Origami,
    Jones,
    Product,
}

impl CacheFamily {
    pub fn name(self) -> &'static str {
        match self {
            CacheFamily::Origami => "origami",
            CacheFamily::Jones => "jones",
            CacheFamily::Product => "product",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub format_version: u32,
    pub family: CacheFamily,
    pub n: usize,
    pub presentation_hash: String,
    pub complete: bool,
    /// Defining relations plus the completed rules.
    pub presentation: Presentation,
    pub monoid: FiniteMonoid,
}

/// Hex SHA-256 of the relations and term order, ignoring completed rules.
pub fn presentation_hash(p: &Presentation) -> String {
    let bare = Presentation { status: None, rules: None, ..p.clone() };
    let bytes = serde_json::to_vec(&bare).expect("presentation serialises");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub struct MonoidCache {
    dir: PathBuf,
}

impl MonoidCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        MonoidCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, family: CacheFamily, n: usize, hash: &str) -> PathBuf {
        self.dir.join(format!("{}-{}-{}.json", family.name(), n, &hash[..16]))
    }

    /// A complete entry for exactly this presentation, if one is stored.
    pub fn load(&self, family: CacheFamily, n: usize, presentation: &Presentation) -> Option<CacheEntry> {
        let hash = presentation_hash(presentation);
        let text = fs::read_to_string(self.path(family, n, &hash)).ok()?;
        let mut entry: CacheEntry = serde_json::from_str(&text).ok()?;
        let valid = entry.format_version == FORMAT_VERSION
            && entry.family == family
            && entry.n == n
            && entry.presentation_hash == hash
            && entry.complete
            && entry.monoid.complete;
        if !valid {
            return None;
        }
        entry.monoid.reindex();
        Some(entry)
    }

    /// Writes via a temporary file in the cache directory and renames it
    /// into place.
    pub fn store(&self, entry: &CacheEntry) -> std::io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(entry.family, entry.n, &entry.presentation_hash);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, entry)?;
        tmp.flush()?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(path)
    }

    /// Cache files, sorted by name.
    pub fn list(&self) -> std::io::Result<Vec<PathBuf>> {
        let mut out = Vec::new();
        match fs::read_dir(&self.dir) {
            Ok(rd) => {
                for e in rd {
                    let p = e?.path();
                    if p.extension().is_some_and(|x| x == "json") {
                        out.push(p);
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        out.sort();
        Ok(out)
    }

    /// Removes every cache file; returns how many were removed.
    pub fn clear(&self) -> std::io::Result<usize> {
        let files = self.list()?;
        for f in &files {
            fs::remove_file(f)?;
        }
        Ok(files.len())
    }
}

/// Header fields of a cache file, read without the monoid body.
#[derive(Debug, Deserialize)]
pub struct EntrySummary {
    pub format_version: u32,
    pub family: CacheFamily,
    pub n: usize,
    pub presentation_hash: String,
    pub complete: bool,
}

pub fn summarize(path: &Path) -> Option<EntrySummary> {
    serde_json::from_str(&fs::read_to_string(path).ok()?).ok()
}
