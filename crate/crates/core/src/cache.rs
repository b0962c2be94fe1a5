//! Line-oriented on-disk copy of the integral memo.
//!
//! ```text
//! hodge-cache 1 created=1760000000
//! g 2 2,1 1/1152
//! psi 1 1 1/24
//! gg 3 - 1/1451520
//! ```
//!
//! Entries are appended while a process runs; [`CacheFile::export`] writes a
//! sorted, deduplicated copy.

use std::collections::HashSet;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::{HodgeError, Result};
use crate::key::{ClassTag, IntegralKey};
use crate::memo::INTEGRALS;
use crate::rational::ExactRational;

pub const FORMAT: &str = "hodge-cache";
pub const VERSION: u32 = 1;

/// Environment variable naming the default cache path.
pub const CACHE_ENV: &str = "HODGE_CACHE";

fn io_err(path: &Path, e: std::io::Error) -> HodgeError {
    HodgeError::Cache(format!("{}: {e}", path.display()))
}

fn header() -> String {
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    format!("{FORMAT} {VERSION} created={now}")
}

pub fn format_entry(key: &IntegralKey, value: &ExactRational) -> String {
    let exps = if key.exponents().is_empty() {
        "-".to_string()
    } else {
        key.exponents().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    };
    format!("{} {} {} {}", key.tag().code(), key.genus(), exps, value)
}

pub fn parse_entry(line: &str) -> Result<(IntegralKey, ExactRational)> {
    let bad = || HodgeError::Cache(format!("malformed entry {line:?}"));
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [tag, genus, exps, value] = fields.as_slice() else { return Err(bad()) };
    let tag: ClassTag = tag.parse().map_err(|_| bad())?;
    let genus: u32 = genus.parse().map_err(|_| bad())?;
    let exps: Vec<u32> = if *exps == "-" {
        Vec::new()
    } else {
        exps.split(',').map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| bad())?
    };
    let value: ExactRational = value.parse().map_err(|_| bad())?;
    Ok((IntegralKey::new(genus, &exps, tag), value))
}

fn version_matches(line: &str) -> bool {
    let mut it = line.split_whitespace();
    it.next() == Some(FORMAT) && it.next() == Some(&VERSION.to_string())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub loaded: usize,
    /// The file existed but carried another format version and was ignored.
    pub discarded_stale: bool,
}

/// A cache file bound to the process-wide memo.
#[derive(Debug)]
pub struct CacheFile {
    path: PathBuf,
    on_disk: HashSet<IntegralKey>,
    valid: bool,
}

impl CacheFile {
    /// Opens `path`, loading its entries into the memo. A missing file is an
    /// empty cache; a version mismatch is reported and the file is rewritten
    /// on the next [`sync`](Self::sync).
    pub fn open(path: impl Into<PathBuf>) -> Result<(Self, LoadReport)> {
        let path = path.into();
        let mut cache = CacheFile { path, on_disk: HashSet::new(), valid: false };
        let mut report = LoadReport::default();
        let file = match File::open(&cache.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok((cache, report)),
            Err(e) => return Err(io_err(&cache.path, e)),
        };
        let mut lines = BufReader::new(file).lines();
        match lines.next() {
            None => return Ok((cache, report)),
            Some(first) => {
                let first = first.map_err(|e| io_err(&cache.path, e))?;
                if !version_matches(&first) {
                    report.discarded_stale = true;
                    return Ok((cache, report));
                }
            }
        }
        for line in lines {
            let line = line.map_err(|e| io_err(&cache.path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = parse_entry(&line)?;
            INTEGRALS.insert(key.clone(), value);
            if cache.on_disk.insert(key) {
                report.loaded += 1;
            }
        }
        cache.valid = true;
        Ok((cache, report))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends every memoized integral not yet on disk. Returns how many were
    /// written.
    pub fn sync(&mut self) -> Result<usize> {
        let fresh: Vec<_> =
            INTEGRALS.snapshot().into_iter().filter(|(k, _)| !self.on_disk.contains(k)).collect();
        if self.valid && fresh.is_empty() {
            return Ok(0);
        }
        let file = if self.valid {
            OpenOptions::new().append(true).open(&self.path)
        } else {
            File::create(&self.path)
        }
        .map_err(|e| io_err(&self.path, e))?;
        let mut w = BufWriter::new(file);
        let write = |w: &mut BufWriter<File>, s: &str| writeln!(w, "{s}").map_err(|e| io_err(&self.path, e));
        if !self.valid {
            write(&mut w, &header())?;
        }
        for (k, v) in &fresh {
            write(&mut w, &format_entry(k, v))?;
        }
        w.flush().map_err(|e| io_err(&self.path, e))?;
        self.valid = true;
        self.on_disk.extend(fresh.iter().map(|(k, _)| k.clone()));
        Ok(fresh.len())
    }

    /// Writes a compacted copy (sorted, one line per key) of the memo to `dest`.
    pub fn export(dest: &Path) -> Result<usize> {
        let entries = INTEGRALS.snapshot();
        let tmp = dest.with_extension("tmp");
        {
            let file = File::create(&tmp).map_err(|e| io_err(&tmp, e))?;
            let mut w = BufWriter::new(file);
            writeln!(w, "{}", header()).map_err(|e| io_err(&tmp, e))?;
            for (k, v) in &entries {
                writeln!(w, "{}", format_entry(k, v)).map_err(|e| io_err(&tmp, e))?;
            }
            w.flush().map_err(|e| io_err(&tmp, e))?;
        }
        fs::rename(&tmp, dest).map_err(|e| io_err(dest, e))?;
        Ok(entries.len())
    }
}
