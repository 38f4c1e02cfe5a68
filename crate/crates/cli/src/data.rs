use std::path::Path;

use anyhow::{anyhow, Context, Result};
use league_trend::datasource::{
    default_manifest, fixture_manifest, list_manifest, resolve_cache_dir, DataSource, FetchError,
    Origin,
};
use league_trend::ingest::{load_championship_file, AliasTable, IngestWarning, SkipReason};
use league_trend::{Championship, SeasonKey};
use rayon::prelude::*;

use crate::args::GlobalOpts;
use crate::error::{NetworkFailure, UsageError};

pub struct DataContext {
    pub source: DataSource,
    pub offline: bool,
    pub aliases: AliasTable,
}

pub fn manifest(opts: &GlobalOpts) -> Result<Vec<SeasonKey>> {
    match opts.manifest.as_str() {
        "full" => Ok(default_manifest()),
        "fixtures" => Ok(fixture_manifest()),
        path => list_manifest(Path::new(path)).with_context(|| format!("reading manifest {path}")),
    }
}

pub fn context(opts: &GlobalOpts) -> Result<DataContext> {
    let mut source = DataSource::new(resolve_cache_dir(opts.cache_dir.as_deref()));
    if !opts.offline {
        source = source.with_http();
    }
    if let Some(t) = &opts.url_template {
        if !t.contains("{season_code}") || !t.contains("{league_code}") {
            return Err(UsageError(format!(
                "--url-template must contain {{season_code}} and {{league_code}}: {t}"
            ))
            .into());
        }
        source = source.with_url_template(t.clone());
    }
    if let Some(dir) = &opts.fixtures_dir {
        source = source.with_fixtures_dir(dir.clone());
    }
    let aliases = match &opts.aliases {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading alias table {}", path.display()))?;
            AliasTable::from_tsv(&text)?
        }
        None => AliasTable::default(),
    };
    Ok(DataContext {
        source,
        offline: opts.offline,
        aliases,
    })
}

pub enum SeasonFailure {
    Fetch(FetchError),
    Load(anyhow::Error),
}

impl SeasonFailure {
    pub fn is_network(&self) -> bool {
        matches!(self, SeasonFailure::Fetch(e) if e.is_network())
    }
}

impl std::fmt::Display for SeasonFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeasonFailure::Fetch(e) => write!(f, "{e}"),
            SeasonFailure::Load(e) => write!(f, "{e:#}"),
        }
    }
}

pub fn fetch_all(ctx: &DataContext, keys: &[SeasonKey]) -> Vec<(SeasonKey, Result<Origin, FetchError>)> {
    keys.par_iter()
        .map(|k| (k.clone(), ctx.source.fetch_season_traced(k, ctx.offline).map(|(_, o)| o)))
        .collect()
}

fn load_one(ctx: &DataContext, key: &SeasonKey) -> Result<Championship, SeasonFailure> {
    let entry = ctx.source.fetch_season(key, ctx.offline).map_err(SeasonFailure::Fetch)?;
    let (champ, skipped) = load_championship_file(key, &entry.local_path, &ctx.aliases)
        .map_err(|e| SeasonFailure::Load(anyhow!(e).context(key.id())))?;
    if !skipped.is_empty() {
        let blank = skipped.iter().filter(|s| s.reason == SkipReason::BlankTeam).count();
        if blank < skipped.len() {
            eprintln!(
                "warning: {}: skipped {} malformed row(s)",
                key.id(),
                skipped.len() - blank
            );
        }
    }
    for w in &champ.warnings {
        match w {
            IngestWarning::UnbalancedSeason { min_rounds, max_rounds } => eprintln!(
                "warning: {}: teams played between {min_rounds} and {max_rounds} matches",
                key.id()
            ),
        }
    }
    Ok(champ)
}

/// Loads every season, warning about the ones that fail. Errors only when
/// nothing could be loaded.
pub fn load_all(ctx: &DataContext, keys: &[SeasonKey]) -> Result<Vec<Championship>> {
    let results: Vec<(SeasonKey, Result<Championship, SeasonFailure>)> =
        keys.par_iter().map(|k| (k.clone(), load_one(ctx, k))).collect();
    let mut champs = Vec::new();
    let mut failures = Vec::new();
    for (key, r) in results {
        match r {
            Ok(c) => champs.push(c),
            Err(e) => {
                eprintln!("warning: {e}");
                failures.push((key, e));
            }
        }
    }
    if champs.is_empty() {
        let summary = format!("no usable seasons ({} failed)", failures.len());
        if !failures.is_empty() && failures.iter().all(|(_, e)| e.is_network()) {
            return Err(NetworkFailure(summary).into());
        }
        return Err(anyhow!(summary));
    }
    if !failures.is_empty() {
        eprintln!(
            "warning: {} of {} seasons unavailable; continuing with {}",
            failures.len(),
            keys.len(),
            champs.len()
        );
    }
    Ok(champs)
}

/// Loads the one season named by an id such as `D1/1314`.
pub fn load_season(ctx: &DataContext, keys: &[SeasonKey], id: &str) -> Result<Championship> {
    let (league, season) = SeasonKey::parse_id(id).map_err(|e| UsageError(format!("--season: {e}")))?;
    let fixtures = fixture_manifest();
    let key = keys
        .iter()
        .chain(&fixtures)
        .find(|k| k.matches_id(&league, &season))
        .ok_or_else(|| anyhow!("season {id} is not in the manifest"))?;
    match load_one(ctx, key) {
        Ok(c) => Ok(c),
        Err(SeasonFailure::Fetch(e)) => Err(e.into()),
        Err(SeasonFailure::Load(e)) => Err(e),
    }
}
