//! On-disk cache of point-count prefixes.
//!
//! One file per (curve, prime), named by a SHA-256 of the label and the
//! coefficient vector:
//!
//! ```text
//! twistscope-cache  v1
//! tool  <crate version>
//! label  <label>
//! coeffs  <ascending, comma-separated>
//! p  <prime>
//! counts  <N_1,...,N_k>
//! sha256  <hex digest of the lines above>
//! ```
//!
//! Any number of readers may share a directory. Writes from one process go
//! through a single mutex-guarded writer and land by rename, so a reader
//! sees either the old file or the new one. A file that fails any check is
//! a miss; it is logged and overwritten by the next write.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use log::warn;
use sha2::{Digest, Sha256};

use crate::curvecount::{CountError, CountSource, CountVector, Counter, CurveModel};

pub const CACHE_ENV: &str = "TWISTSCOPE_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".twistscope-cache";
const HEADER: &str = "twistscope-cache\tv1";

#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    version: String,
    writer: Mutex<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit(CountVector),
    Miss,
    /// Present but unusable; the reason is logged.
    Corrupt(String),
}

impl DiskCache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        Self::with_version(dir, env!("CARGO_PKG_VERSION"))
    }

    /// A cache whose records are tagged with `version` instead of the crate
    /// version.
    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache { dir, version: version.to_string(), writer: Mutex::new(0) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, curve: &CurveModel, p: u64) -> PathBuf {
        let mut h = Sha256::new();
        h.update(curve.label().as_bytes());
        h.update([0u8]);
        for c in curve.f_coeffs() {
            h.update(c.to_le_bytes());
        }
        let digest = hex::encode(h.finalize());
        self.dir.join(format!("{}-p{p}.counts", &digest[..24]))
    }

    fn body(&self, curve: &CurveModel, counts: &CountVector) -> String {
        let join = |v: &[String]| v.join(",");
        format!(
            "{HEADER}\ntool\t{}\nlabel\t{}\ncoeffs\t{}\np\t{}\ncounts\t{}\n",
            self.version,
            curve.label(),
            join(&curve.f_coeffs().iter().map(i64::to_string).collect::<Vec<_>>()),
            counts.p,
            join(&counts.counts.iter().map(u64::to_string).collect::<Vec<_>>()),
        )
    }

    pub fn get(&self, curve: &CurveModel, p: u64) -> Lookup {
        let path = self.path_for(curve, p);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return self.corrupt(&path, e.to_string()),
        };
        match self.decode(curve, p, &text) {
            Ok(Some(cv)) => Lookup::Hit(cv),
            Ok(None) => Lookup::Miss,
            Err(reason) => self.corrupt(&path, reason),
        }
    }

    fn corrupt(&self, path: &Path, reason: String) -> Lookup {
        warn!("ignoring cache file {}: {reason}", path.display());
        Lookup::Corrupt(reason)
    }

    /// `Ok(None)` for a well-formed record written by another version.
    fn decode(&self, curve: &CurveModel, p: u64, text: &str) -> Result<Option<CountVector>, String> {
        let (body, digest_line) = text
            .trim_end_matches('\n')
            .rsplit_once('\n')
            .ok_or("truncated record")?;
        let digest = digest_line.strip_prefix("sha256\t").ok_or("missing checksum")?;
        if hex::encode(Sha256::digest(format!("{body}\n").as_bytes())) != digest {
            return Err("checksum mismatch".into());
        }
        let lines: Vec<&str> = body.lines().collect();
        if lines.len() != 6 || lines[0] != HEADER {
            return Err("unexpected layout".into());
        }
        let field = |i: usize, tag: &str| {
            lines[i].strip_prefix(tag).and_then(|r| r.strip_prefix('\t')).ok_or(format!("missing {tag}"))
        };
        if field(1, "tool")? != self.version {
            return Ok(None);
        }
        let counts: Vec<u64> = field(5, "counts")?
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| format!("bad count {s:?}")))
            .collect::<Result<_, _>>()?;
        let expected = self.body(curve, &CountVector::new(p, counts.clone()));
        if format!("{body}\n") != expected {
            return Err("record does not belong to this curve and prime".into());
        }
        let cv = CountVector::new(p, counts);
        plausible(curve, &cv)?;
        Ok(Some(cv))
    }

    /// Atomically replaces the record for `(curve, counts.p)`.
    pub fn put(&self, curve: &CurveModel, counts: &CountVector) -> io::Result<()> {
        let body = self.body(curve, counts);
        let text = format!("{body}sha256\t{}\n", hex::encode(Sha256::digest(body.as_bytes())));
        let path = self.path_for(curve, counts.p);
        let mut serial = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        *serial += 1;
        let tmp = path.with_extension(format!("tmp{}-{}", std::process::id(), *serial));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, &path)
    }
}

/// Counts within the Weil range, and a full prefix must give a valid
/// L-polynomial.
fn plausible(curve: &CurveModel, cv: &CountVector) -> Result<(), String> {
    let g = curve.genus();
    if cv.len() > 2 * g {
        return Err("more counts than needed".into());
    }
    for (i, &n) in cv.counts.iter().enumerate() {
        let q = (cv.p as f64).powi(i as i32 + 1);
        if ((n as f64) - q - 1.0).abs() > 2.0 * g as f64 * q.sqrt() + 1.0 {
            return Err(format!("N_{} = {n} is outside the Weil range", i + 1));
        }
    }
    if cv.len() >= g {
        crate::curvecount::lpoly_from_counts(&cv.prefix(g), g).map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// A [`Counter`] in front of an optional [`DiskCache`].
///
/// Cached prefixes are extended rather than recomputed. When the budget
/// stops short of the requested length, the longest affordable prefix is
/// still computed and stored before the error is returned.
#[derive(Debug)]
pub struct CachedCounter {
    pub counter: Counter,
    pub cache: Option<DiskCache>,
}

impl CachedCounter {
    pub fn new(counter: Counter, cache: Option<DiskCache>) -> Self {
        CachedCounter { counter, cache }
    }

    fn store(&self, curve: &CurveModel, cv: &CountVector) {
        if let Some(cache) = &self.cache {
            if let Err(e) = cache.put(curve, cv) {
                warn!("could not write cache record for {} at {}: {e}", curve.label(), cv.p);
            }
        }
    }
}

impl CountSource for CachedCounter {
    fn counts(&self, curve: &CurveModel, p: u64, m: usize) -> Result<CountVector, CountError> {
        let known = match self.cache.as_ref().map(|c| c.get(curve, p)) {
            Some(Lookup::Hit(cv)) => cv,
            _ => CountVector::new(p, Vec::new()),
        };
        if known.len() >= m {
            return Ok(known.prefix(m));
        }
        match self.counter.extend(curve, &known, m) {
            Ok(cv) => {
                self.store(curve, &cv);
                Ok(cv)
            }
            Err(CountError::BudgetExceeded { required, budget }) => {
                let reachable = (known.len() + 1..m)
                    .rev()
                    .find(|&k| Counter::required_work(p, known.len(), k) <= budget as u128);
                if let Some(k) = reachable {
                    let partial = self.counter.extend(curve, &known, k)?;
                    self.store(curve, &partial);
                }
                Err(CountError::BudgetExceeded { required, budget })
            }
            Err(e) => Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve() -> CurveModel {
        CurveModel::new("x^5 - x", vec![0, -1, 0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn put_get_and_version() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let c = curve();
        assert_eq!(cache.get(&c, 3), Lookup::Miss);
        let cv = CountVector::new(3, vec![4, 6]);
        cache.put(&c, &cv).unwrap();
        assert_eq!(cache.get(&c, 3), Lookup::Hit(cv.clone()));
        assert_eq!(cache.get(&c, 5), Lookup::Miss);
        assert_eq!(cache.get(&c.with_label("other"), 3), Lookup::Miss);
        let bumped = DiskCache::with_version(dir.path(), "999.0.0").unwrap();
        assert_eq!(bumped.get(&c, 3), Lookup::Miss);
    }

    #[test]
    fn corrupt_records_are_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let c = curve();
        cache.put(&c, &CountVector::new(3, vec![4, 6])).unwrap();
        let path = cache.path_for(&c, 3);
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replace("4,6", "4,7")).unwrap();
        assert!(matches!(cache.get(&c, 3), Lookup::Corrupt(_)));
        fs::write(&path, "garbage").unwrap();
        assert!(matches!(cache.get(&c, 3), Lookup::Corrupt(_)));
        // a consistent checksum over implausible counts is still rejected
        let bogus = CountVector::new(3, vec![40, 6]);
        cache.put(&c, &bogus).unwrap();
        assert!(matches!(cache.get(&c, 3), Lookup::Corrupt(_)));
        let source = CachedCounter::new(Counter::default(), Some(cache));
        assert_eq!(source.counts(&c, 3, 2).unwrap().counts, vec![4, 6]);
        assert_eq!(source.cache.as_ref().unwrap().get(&c, 3), Lookup::Hit(CountVector::new(3, vec![4, 6])));
    }

    #[test]
    fn partial_prefix_survives_budget() {
        let dir = tempfile::tempdir().unwrap();
        let c = curve();
        let tight = CachedCounter::new(Counter::with_budget(20), Some(DiskCache::open(dir.path()).unwrap()));
        assert!(matches!(tight.lpoly(&c, 7), Err(CountError::BudgetExceeded { required: 56, .. })));
        let cache = DiskCache::open(dir.path()).unwrap();
        assert!(matches!(cache.get(&c, 7), Lookup::Hit(ref cv) if cv.len() == 1));
        // 49 more evaluations finish the job
        let roomy = CachedCounter::new(Counter::with_budget(49), Some(cache));
        let l = roomy.lpoly(&c, 7).unwrap();
        assert_eq!(l, Counter::default().lpoly(&c, 7).unwrap());
    }
}
