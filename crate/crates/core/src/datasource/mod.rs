//! Retrieval and caching of raw season CSV files.
//!
//! Files are addressed by [`SeasonKey`] and downloaded through a pluggable
//! [`Transport`] from a URL template with `{season_code}` and
//! `{league_code}` placeholders. Every download is stored under the cache
//! directory and recorded in `index.tsv` with its SHA-256, so a warm cache
//! is served without any network access. In offline mode a cache miss falls
//! back to a fixtures directory and then to the seasons compiled into the
//! library.

mod cache;
mod fixtures;
mod key;
pub mod manifest;
pub mod transport;

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub use cache::{sha256_hex, CacheEntry, INDEX_FILE};
pub use fixtures::builtin as builtin_fixture;
pub use key::{KeyError, SeasonKey};
pub use manifest::{
    default_manifest, fixture_manifest, list_manifest, parse_manifest, write_manifest,
    ManifestError,
};
pub use transport::{NoNetwork, Transport, TransportError};

pub const DEFAULT_URL_TEMPLATE: &str =
    "https://www.football-data.co.uk/mmz4281/{season_code}/{league_code}.csv";

/// Environment variable overriding the default cache directory.
pub const CACHE_ENV: &str = "LEAGUE_TREND_CACHE";

#[derive(Debug, thiserror::Error)]
pub enum FetchError {
    #[error("{key}: network unavailable and no cached or fixture copy ({reason})")]
    NetworkUnavailable { key: String, reason: String },
    #[error("{key}: not found at {url}")]
    RemoteNotFound { key: String, url: String },
    #[error("{key}: cached file does not match its recorded checksum (expected {expected}, found {found})")]
    CacheCorrupt {
        key: String,
        expected: String,
        found: String,
    },
    #[error("cache I/O error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl FetchError {
    pub fn is_network(&self) -> bool {
        matches!(self, FetchError::NetworkUnavailable { .. })
    }
}

/// Where a returned entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Cache,
    Remote,
    Fixture,
}

/// Cache directory precedence: explicit flag, then `LEAGUE_TREND_CACHE`,
/// then `$XDG_CACHE_HOME/league-trend`, `$HOME/.cache/league-trend`, and
/// finally `.league-trend-cache` in the working directory.
pub fn resolve_cache_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    let env = |name: &str| std::env::var_os(name).filter(|v| !v.is_empty());
    if let Some(p) = env(CACHE_ENV) {
        return PathBuf::from(p);
    }
    if let Some(p) = env("XDG_CACHE_HOME") {
        return PathBuf::from(p).join("league-trend");
    }
    if let Some(p) = env("HOME") {
        return PathBuf::from(p).join(".cache").join("league-trend");
    }
    PathBuf::from(".league-trend-cache")
}

#[derive(Clone)]
pub struct DataSource {
    cache_dir: PathBuf,
    url_template: String,
    transport: Arc<dyn Transport>,
    fixtures_dir: Option<PathBuf>,
    builtin_fixtures: bool,
}

impl DataSource {
    /// A source with the default URL template and no network transport.
    /// Use [`DataSource::with_transport`] (or [`DataSource::with_http`]) to
    /// enable downloads.
    pub fn new(cache_dir: impl Into<PathBuf>) -> Self {
        Self {
            cache_dir: cache_dir.into(),
            url_template: DEFAULT_URL_TEMPLATE.to_string(),
            transport: Arc::new(NoNetwork),
            fixtures_dir: None,
            builtin_fixtures: true,
        }
    }

    pub fn with_transport(mut self, transport: Arc<dyn Transport>) -> Self {
        self.transport = transport;
        self
    }

    #[cfg(feature = "http")]
    pub fn with_http(self) -> Self {
        self.with_transport(Arc::new(transport::HttpTransport::new()))
    }

    pub fn with_url_template(mut self, template: impl Into<String>) -> Self {
        self.url_template = template.into();
        self
    }

    /// Extra offline source laid out like the cache
    /// (`<dir>/<season_code>/<league_code>.csv`).
    pub fn with_fixtures_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.fixtures_dir = Some(dir.into());
        self
    }

    pub fn with_builtin_fixtures(mut self, enabled: bool) -> Self {
        self.builtin_fixtures = enabled;
        self
    }

    pub fn cache_dir(&self) -> &Path {
        &self.cache_dir
    }

    pub fn url_for(&self, key: &SeasonKey) -> String {
        self.url_template
            .replace("{season_code}", &key.season_code)
            .replace("{league_code}", &key.league_code)
    }

    pub fn fetch_season(&self, key: &SeasonKey, offline: bool) -> Result<CacheEntry, FetchError> {
        self.fetch_season_traced(key, offline).map(|(e, _)| e)
    }

    /// Like [`DataSource::fetch_season`], also reporting where the bytes came from.
    pub fn fetch_season_traced(
        &self,
        key: &SeasonKey,
        offline: bool,
    ) -> Result<(CacheEntry, Origin), FetchError> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| FetchError::Io { path, source }
        };
        fs::create_dir_all(&self.cache_dir).map_err(io(&self.cache_dir))?;
        let local_path = self.cache_dir.join(cache::relative_path(key));

        let mut corrupt = None;
        if let Some(line) = cache::lookup(&self.cache_dir, key).map_err(io(&self.cache_dir))? {
            match fs::read(&local_path) {
                Ok(bytes) => {
                    let found = sha256_hex(&bytes);
                    if found == line.checksum && bytes.len() as u64 == line.byte_length {
                        let entry = CacheEntry {
                            key: key.clone(),
                            local_path,
                            fetched_at: line.fetched_at,
                            byte_length: line.byte_length,
                            checksum: found,
                        };
                        return Ok((entry, Origin::Cache));
                    }
                    corrupt = Some(FetchError::CacheCorrupt {
                        key: key.id(),
                        expected: line.checksum,
                        found,
                    });
                }
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
                Err(e) => return Err(io(&local_path)(e)),
            }
        }

        if offline {
            return match self.fixture_bytes(key).map_err(io(&self.cache_dir))? {
                Some(bytes) => {
                    let entry =
                        cache::store(&self.cache_dir, key, &bytes).map_err(io(&self.cache_dir))?;
                    Ok((entry, Origin::Fixture))
                }
                None => Err(corrupt.unwrap_or_else(|| FetchError::NetworkUnavailable {
                    key: key.id(),
                    reason: "offline mode".into(),
                })),
            };
        }

        let url = self.url_for(key);
        match self.transport.get(&url) {
            Ok(bytes) => {
                let entry =
                    cache::store(&self.cache_dir, key, &bytes).map_err(io(&self.cache_dir))?;
                Ok((entry, Origin::Remote))
            }
            Err(TransportError::NotFound) => Err(FetchError::RemoteNotFound { key: key.id(), url }),
            Err(TransportError::Unavailable(reason)) => Err(corrupt
                .unwrap_or(FetchError::NetworkUnavailable {
                    key: key.id(),
                    reason,
                })),
        }
    }

    fn fixture_bytes(&self, key: &SeasonKey) -> std::io::Result<Option<Vec<u8>>> {
        if let Some(dir) = &self.fixtures_dir {
            let path = dir.join(cache::relative_path(key));
            match fs::read(&path) {
                Ok(bytes) => return Ok(Some(bytes)),
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
                Err(e) => return Err(e),
            }
        }
        if self.builtin_fixtures {
            return Ok(fixtures::builtin(&key.season_code, &key.league_code).map(<[u8]>::to_vec));
        }
        Ok(None)
    }
}

/// Fetches one season with the default template and HTTP transport (when
/// compiled in), builtin fixtures serving offline misses.
pub fn fetch_season(
    key: &SeasonKey,
    cache_dir: &Path,
    offline: bool,
) -> Result<CacheEntry, FetchError> {
    let source = DataSource::new(cache_dir);
    #[cfg(feature = "http")]
    let source = source.with_http();
    source.fetch_season(key, offline)
}
