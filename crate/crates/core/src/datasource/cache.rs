//! On-disk cache: `<dir>/<season_code>/<league_code>.csv` plus a sidecar
//! `index.tsv` holding one line per entry.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use chrono::{DateTime, SecondsFormat, Utc};
use sha2::{Digest, Sha256};

use super::key::SeasonKey;

pub const INDEX_FILE: &str = "index.tsv";

static INDEX_LOCK: Mutex<()> = Mutex::new(());
static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntry {
    pub key: SeasonKey,
    pub local_path: PathBuf,
    pub fetched_at: DateTime<Utc>,
    pub byte_length: u64,
    pub checksum: String,
}

impl CacheEntry {
    pub fn read(&self) -> std::io::Result<Vec<u8>> {
        fs::read(&self.local_path)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IndexLine {
    pub byte_length: u64,
    pub checksum: String,
    pub fetched_at: DateTime<Utc>,
}

pub(crate) fn relative_path(key: &SeasonKey) -> PathBuf {
    Path::new(&key.season_code).join(format!("{}.csv", key.league_code))
}

/// Reads `index.tsv`. Unparseable lines are dropped; the next write
/// rewrites the file without them.
pub(crate) fn load_index(dir: &Path) -> std::io::Result<BTreeMap<(String, String), IndexLine>> {
    let path = dir.join(INDEX_FILE);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(e),
    };
    let mut out = BTreeMap::new();
    for line in text.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() < 5 {
            continue;
        }
        let (Ok(byte_length), Ok(fetched_at)) =
            (f[2].parse::<u64>(), DateTime::parse_from_rfc3339(f[4]))
        else {
            continue;
        };
        out.insert(
            (f[0].to_string(), f[1].to_string()),
            IndexLine {
                byte_length,
                checksum: f[3].to_string(),
                fetched_at: fetched_at.with_timezone(&Utc),
            },
        );
    }
    Ok(out)
}

pub(crate) fn lookup(dir: &Path, key: &SeasonKey) -> std::io::Result<Option<IndexLine>> {
    let _guard = INDEX_LOCK.lock().unwrap_or_else(|p| p.into_inner());
    let mut index = load_index(dir)?;
    Ok(index.remove(&(key.season_code.clone(), key.league_code.clone())))
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let parent = path.parent().expect("cache paths have a parent");
    fs::create_dir_all(parent)?;
    let tmp = parent.join(format!(
        ".{}.{}.{}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("entry"),
        std::process::id(),
        TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

/// Writes the data file and then its index line. Each step is a rename of a
/// fully written temporary file, so readers never observe partial content.
pub(crate) fn store(dir: &Path, key: &SeasonKey, bytes: &[u8]) -> std::io::Result<CacheEntry> {
    let local_path = dir.join(relative_path(key));
    write_atomic(&local_path, bytes)?;
    let entry = CacheEntry {
        key: key.clone(),
        local_path,
        fetched_at: Utc::now(),
        byte_length: bytes.len() as u64,
        checksum: sha256_hex(bytes),
    };

    let _guard = INDEX_LOCK.lock().unwrap_or_else(|p| p.into_inner());
    let mut index = load_index(dir)?;
    index.insert(
        (key.season_code.clone(), key.league_code.clone()),
        IndexLine {
            byte_length: entry.byte_length,
            checksum: entry.checksum.clone(),
            fetched_at: entry.fetched_at,
        },
    );
    let mut text = String::from("# season_code\tleague_code\tbyte_length\tsha256\tfetched_at\n");
    for ((season, league), line) in &index {
        text.push_str(&format!(
            "{season}\t{league}\t{}\t{}\t{}\n",
            line.byte_length,
            line.checksum,
            line.fetched_at.to_rfc3339_opts(SecondsFormat::Millis, true)
        ));
    }
    write_atomic(&dir.join(INDEX_FILE), text.as_bytes())?;
    Ok(entry)
}
