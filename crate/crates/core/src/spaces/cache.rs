use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::SpaceRequest;
use crate::algebra::GroupAlgebraElement;
use crate::error::{Error, Result};
use crate::linalg::SubspaceBasis;

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "BIMANIN_CACHE";

/// Counters for cache traffic and kernel computations.
#[derive(Debug, Default)]
pub struct Stats {
    pub hits: AtomicU64,
    pub misses: AtomicU64,
    pub writes: AtomicU64,
    pub kernels: AtomicU64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StatsSnapshot {
    pub cache_hits: u64,
    pub cache_misses: u64,
    pub cache_writes: u64,
    pub kernels_computed: u64,
}

impl Stats {
    pub fn snapshot(&self) -> StatsSnapshot {
        StatsSnapshot {
            cache_hits: self.hits.load(Ordering::Relaxed),
            cache_misses: self.misses.load(Ordering::Relaxed),
            cache_writes: self.writes.load(Ordering::Relaxed),
            kernels_computed: self.kernels.load(Ordering::Relaxed),
        }
    }
}

/// On-disk store of computed annihilators, one JSON file per request.
#[derive(Clone, Debug)]
pub struct BasisCache {
    dir: PathBuf,
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(BasisCache { dir })
    }

    /// `BIMANIN_CACHE` if set, else `fallback`.
    pub fn from_env_or(fallback: Option<&Path>) -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Self::new(PathBuf::from(d)).map(Some),
            _ => fallback.map(Self::new).transpose(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// The key covers the generator list, so editing an ideal invalidates old entries.
    pub fn key(req: &SpaceRequest, generators: &[GroupAlgebraElement]) -> String {
        let mut h = Sha256::new();
        for g in generators {
            h.update(g.to_string().as_bytes());
            h.update(b";");
        }
        let digest = h.finalize();
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        format!("{}-{}-{}-{}-{hex}", req.ideal.name(), req.w1, req.w2, req.parity.name())
    }

    pub fn load(&self, key: &str) -> Option<SubspaceBasis> {
        let text = fs::read_to_string(self.dir.join(format!("{key}.json"))).ok()?;
        let raw: SubspaceBasis = serde_json::from_str(&text).ok()?;
        // Re-validate: a hand-edited or truncated entry must not leak through.
        SubspaceBasis::try_from_rref(raw.ambient_dim(), raw.into_rows())
    }

    /// Writes to a temporary file and renames it, so readers never see partial files.
    pub fn store(&self, key: &str, basis: &SubspaceBasis) -> Result<()> {
        let target = self.dir.join(format!("{key}.json"));
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        let body = serde_json::to_vec(basis).map_err(|e| Error::Cache(e.to_string()))?;
        let mut f = fs::File::create(&tmp).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
        f.write_all(&body).map_err(|e| Error::Cache(e.to_string()))?;
        f.sync_all().map_err(|e| Error::Cache(e.to_string()))?;
        fs::rename(&tmp, &target).map_err(|e| Error::Cache(format!("{}: {e}", target.display())))
    }
}
