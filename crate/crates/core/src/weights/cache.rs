use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use super::{Scheme, WeightResult};

/// Append-only JSONL store of weight results.
///
/// Each record is written with a single `write_all` of one full line, so a
/// crash leaves at worst one truncated trailing line, which is skipped on load.
#[derive(Debug)]
pub struct WeightCache {
    path: Option<PathBuf>,
    inner: Mutex<Inner>,
}

#[derive(Debug, Default)]
struct Inner {
    map: HashMap<(String, Scheme), WeightResult>,
    file: Option<File>,
}

impl Inner {
    fn insert(&mut self, r: WeightResult) {
        let k = (r.key.clone(), r.scheme);
        match self.map.get(&k) {
            Some(old) if old.samples > r.samples => {}
            _ => {
                self.map.insert(k, r);
            }
        }
    }
}

impl WeightCache {
    pub fn in_memory() -> Self {
        WeightCache { path: None, inner: Mutex::new(Inner::default()) }
    }

    /// Opens (creating if needed) a cache file; unreadable lines are skipped with a warning.
    pub fn open(path: impl AsRef<Path>) -> io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut inner = Inner::default();
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for (no, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<WeightResult>(&line) {
                    Ok(r) => inner.insert(r),
                    Err(e) => log::warn!("{}:{}: skipping corrupt cache line: {e}", path.display(), no + 1),
                }
            }
        }
        inner.file = Some(OpenOptions::new().create(true).append(true).open(&path)?);
        Ok(WeightCache { path: Some(path), inner: Mutex::new(inner) })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// The record with the highest sample count, if any.
    pub fn get(&self, key: &str, scheme: Scheme) -> Option<WeightResult> {
        self.inner.lock().unwrap().map.get(&(key.to_string(), scheme)).cloned()
    }

    pub fn put(&self, r: WeightResult) -> io::Result<()> {
        let mut inner = self.inner.lock().unwrap();
        if let Some(f) = inner.file.as_mut() {
            let mut line = serde_json::to_string(&r).map_err(io::Error::other)?;
            line.push('\n');
            f.write_all(line.as_bytes())?;
            f.flush()?;
        }
        inner.insert(r);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Content hash of the current records, for report provenance.
    pub fn snapshot_id(&self) -> String {
        let inner = self.inner.lock().unwrap();
        let mut recs: Vec<&WeightResult> = inner.map.values().collect();
        recs.sort_by(|a, b| (&a.key, a.scheme).cmp(&(&b.key, b.scheme)));
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for r in recs {
            for b in format!("{}|{}|{:x}|{}|{}", r.key, r.scheme, r.value.to_bits(), r.samples, r.seed).bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        format!("{h:016x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(key: &str, value: f64, samples: u64) -> WeightResult {
        WeightResult { key: key.into(), scheme: Scheme::HalfPlane, value, stderr: 0.01, samples, seed: 1 }
    }

    #[test]
    fn put_get_round_trip_and_persistence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.jsonl");
        let c = WeightCache::open(&path).unwrap();
        assert!(c.get("a", Scheme::HalfPlane).is_none());
        c.put(rec("a", 0.5, 100)).unwrap();
        assert_eq!(c.get("a", Scheme::HalfPlane).unwrap().value, 0.5);
        c.put(rec("a", 0.49, 1000)).unwrap();
        c.put(rec("a", 0.7, 10)).unwrap();
        drop(c);
        let c = WeightCache::open(&path).unwrap();
        assert_eq!(c.get("a", Scheme::HalfPlane).unwrap().value, 0.49);
        assert!(c.get("a", Scheme::QuadrantW0).is_none());
    }

    #[test]
    fn corrupt_lines_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.jsonl");
        let good = serde_json::to_string(&rec("b", 0.25, 10)).unwrap();
        std::fs::write(&path, format!("{{not json\n{good}\n{{\"key\": \"trunc")).unwrap();
        let c = WeightCache::open(&path).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.get("b", Scheme::HalfPlane).unwrap().value, 0.25);
    }
}
