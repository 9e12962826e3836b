//! Persistent multiplicity memo: one JSONL file per embedding fingerprint.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use branchlab::asymptotics::format_weight;
use branchlab::lie::parse_coords;
use branchlab::{Brancher, Embedding, MultiplicityOracle, Result, Weight};
use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "BRANCHLAB_CACHE";
pub const DEFAULT_DIR: &str = ".branchlab-cache";

#[derive(Serialize, Deserialize)]
struct Record {
    fingerprint: String,
    mu: String,
    lambda: String,
    m: u64,
}

type Key = (Vec<i64>, Vec<i64>);

fn parse_key(s: &str) -> Option<Vec<i64>> {
    let blocks: Option<Vec<Vec<i64>>> = s.split(';').map(|b| parse_coords(b).ok()).collect();
    blocks.map(|b| b.into_iter().flatten().collect())
}

fn read_records(path: &Path, fingerprint: &str) -> BTreeMap<Key, u64> {
    let Ok(file) = std::fs::File::open(path) else { return BTreeMap::new() };
    BufReader::new(file)
        .lines()
        .map_while(std::result::Result::ok)
        .filter_map(|line| serde_json::from_str::<Record>(&line).ok())
        .filter(|r| r.fingerprint == fingerprint)
        .filter_map(|r| Some(((parse_key(&r.mu)?, parse_key(&r.lambda)?), r.m)))
        .collect()
}

/// A [`Brancher`] whose multiplicity queries go through the disk memo.
pub struct CachedOracle {
    brancher: Brancher,
    fingerprint: String,
    path: Option<PathBuf>,
    known: RwLock<BTreeMap<Key, u64>>,
    fresh: RwLock<BTreeMap<Key, u64>>,
}

impl CachedOracle {
    /// `dir = None` disables persistence.
    pub fn open(embedding: Embedding, fingerprint: String, dir: Option<&Path>) -> Self {
        let path = dir.map(|d| d.join(format!("{fingerprint}.jsonl")));
        let known = path.as_deref().map(|p| read_records(p, &fingerprint)).unwrap_or_default();
        CachedOracle {
            brancher: Brancher::new(embedding),
            fingerprint,
            path,
            known: RwLock::new(known),
            fresh: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn brancher(&self) -> &Brancher {
        &self.brancher
    }

    /// Merges new entries with the file on disk and replaces it atomically.
    pub fn flush(&self) -> std::io::Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        let fresh = self.fresh.read().unwrap();
        if fresh.is_empty() {
            return Ok(());
        }
        let dir = path.parent().unwrap_or(Path::new("."));
        std::fs::create_dir_all(dir)?;
        let mut all = read_records(path, &self.fingerprint);
        all.extend(fresh.iter().map(|(k, v)| (k.clone(), *v)));
        let e = self.brancher.embedding();
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        for ((mu, lambda), m) in &all {
            let r = Record {
                fingerprint: self.fingerprint.clone(),
                mu: format_weight(e.target(), &Weight(mu.clone())),
                lambda: format_weight(e.source(), &Weight(lambda.clone())),
                m: *m,
            };
            writeln!(tmp, "{}", serde_json::to_string(&r).expect("record serializes"))?;
        }
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

impl MultiplicityOracle for CachedOracle {
    fn embedding(&self) -> &Embedding {
        self.brancher.embedding()
    }

    fn multiplicity(&self, mu: &Weight, lambda: &Weight) -> Result<u64> {
        let key = (mu.0.clone(), lambda.0.clone());
        if let Some(m) = self.known.read().unwrap().get(&key) {
            return Ok(*m);
        }
        let m = self.brancher.multiplicity(mu, lambda)?;
        self.known.write().unwrap().insert(key.clone(), m);
        if self.path.is_some() {
            self.fresh.write().unwrap().insert(key, m);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::load;

    #[test]
    fn roundtrip_and_merge() {
        let dir = tempfile::tempdir().unwrap();
        let e = load("diag:A1").unwrap();
        let a = CachedOracle::open(e.embedding.clone(), e.fingerprint.clone(), Some(dir.path()));
        assert_eq!(a.multiplicity(&Weight(vec![2]), &Weight(vec![2, 2])).unwrap(), 1);
        a.flush().unwrap();
        let b = CachedOracle::open(e.embedding.clone(), e.fingerprint.clone(), Some(dir.path()));
        assert_eq!(b.known.read().unwrap().len(), 1);
        assert_eq!(b.multiplicity(&Weight(vec![1]), &Weight(vec![2, 2])).unwrap(), 0);
        b.flush().unwrap();
        let c = CachedOracle::open(e.embedding.clone(), e.fingerprint, Some(dir.path()));
        assert_eq!(c.known.read().unwrap().len(), 2);
        let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
    }

    #[test]
    fn garbage_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let e = load("diag:A1").unwrap();
        let path = dir.path().join(format!("{}.jsonl", e.fingerprint));
        std::fs::write(&path, "not json\n{\"fingerprint\":\"other\",\"mu\":\"0\",\"lambda\":\"1;1\",\"m\":7}\n").unwrap();
        let o = CachedOracle::open(e.embedding, e.fingerprint, Some(dir.path()));
        assert_eq!(o.multiplicity(&Weight(vec![0]), &Weight(vec![1, 1])).unwrap(), 1);
    }
}
