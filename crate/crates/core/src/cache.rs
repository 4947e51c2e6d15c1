//! On-disk cache of weight enumerations.
//!
//! One file per (type, cap). The first line is a header object
//! `{"schema_version":1,"type":"A2","cap":"27"}`, every following line one
//! entry `{"weight":[..],"dim":"..."}`. A file whose header does not match
//! the request, or that fails to parse, is ignored.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::census::CensusEntry;
use crate::error::Result;
use crate::rootsystem::LieType;
use crate::weyldim::{DimValue, Weight};

pub const CACHE_SCHEMA_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "LIECENSUS_CACHE";

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct Header {
    schema_version: u32,
    #[serde(rename = "type")]
    lie_type: LieType,
    cap: String,
}

#[derive(Serialize, Deserialize)]
struct Line {
    weight: Weight,
    dim: DimValue,
}

#[derive(Clone, Debug)]
pub struct WeightCache {
    dir: PathBuf,
}

impl WeightCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        WeightCache { dir: dir.into() }
    }

    /// Cache rooted at `$LIECENSUS_CACHE`, if set and non-empty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(WeightCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, ty: LieType, cap: u64) -> PathBuf {
        self.dir
            .join(format!("{ty}_cap{cap}_v{CACHE_SCHEMA_VERSION}.jsonl"))
    }

    pub fn load(&self, ty: LieType, cap: u64) -> Option<Vec<CensusEntry>> {
        let file = fs::File::open(self.path_for(ty, cap)).ok()?;
        let mut lines = BufReader::new(file).lines();
        let header: Header = serde_json::from_str(&lines.next()?.ok()?).ok()?;
        let want = Header {
            schema_version: CACHE_SCHEMA_VERSION,
            lie_type: ty,
            cap: cap.to_string(),
        };
        if header != want {
            return None;
        }
        let mut out = Vec::new();
        for line in lines {
            let line: Line = serde_json::from_str(&line.ok()?).ok()?;
            if line.weight.len() != ty.rank() {
                return None;
            }
            out.push(CensusEntry {
                lie_type: ty,
                weight: line.weight,
                dim: line.dim,
            });
        }
        Some(out)
    }

    /// Writes to a temporary file and renames it into place, so concurrent
    /// readers see either the old file or the complete new one.
    pub fn store(&self, ty: LieType, cap: u64, entries: &[CensusEntry]) -> Result<()> {
        static SEQ: AtomicU64 = AtomicU64::new(0);
        fs::create_dir_all(&self.dir)?;
        let final_path = self.path_for(ty, cap);
        let tmp = self.dir.join(format!(
            ".{ty}_cap{cap}.{}.{}.tmp",
            std::process::id(),
            SEQ.fetch_add(1, Ordering::Relaxed)
        ));
        {
            let mut out = BufWriter::new(fs::File::create(&tmp)?);
            let header = Header {
                schema_version: CACHE_SCHEMA_VERSION,
                lie_type: ty,
                cap: cap.to_string(),
            };
            writeln!(out, "{}", serde_json::to_string(&header).expect("header serializes"))?;
            for e in entries {
                let line = Line {
                    weight: e.weight.clone(),
                    dim: e.dim.clone(),
                };
                writeln!(out, "{}", serde_json::to_string(&line).expect("entry serializes"))?;
            }
            out.flush()?;
        }
        fs::rename(&tmp, &final_path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{enumerate_weights, enumerate_weights_cached};
    use crate::rootsystem::Family;

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = WeightCache::new(dir.path());
        let ty = LieType::new(Family::B, 3).unwrap();
        assert!(cache.load(ty, 50).is_none());
        let first = enumerate_weights_cached(ty, 50, Some(&cache)).unwrap();
        assert!(cache.path_for(ty, 50).exists());
        assert_eq!(cache.load(ty, 50).unwrap(), first);
        assert_eq!(first, enumerate_weights(ty, 50).unwrap());
        // different cap is a different key
        assert!(cache.load(ty, 51).is_none());
    }

    #[test]
    fn mismatched_header_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = WeightCache::new(dir.path());
        let ty = LieType::new(Family::A, 2).unwrap();
        let path = cache.path_for(ty, 10);
        fs::write(
            &path,
            "{\"schema_version\":0,\"type\":\"A2\",\"cap\":\"10\"}\n{\"weight\":[0,0],\"dim\":\"1\"}\n",
        )
        .unwrap();
        assert!(cache.load(ty, 10).is_none());
        fs::write(&path, "{\"schema_version\":1,\"type\":\"A2\",\"cap\":\"10\"}\nnot json\n").unwrap();
        assert!(cache.load(ty, 10).is_none());
        // recomputes and overwrites
        let got = enumerate_weights_cached(ty, 10, Some(&cache)).unwrap();
        assert_eq!(cache.load(ty, 10).unwrap(), got);
    }
}
