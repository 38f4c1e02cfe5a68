//! Match-result parsing, cumulative series and league tables.

mod parse;
mod series;
mod standing;

use std::path::Path;

pub use parse::{
    canonical_name, decode_text, parse_date, parse_matches, parse_matches_with_aliases,
    AliasTable, MatchRecord, MatchResult, ParseError, ParsedMatches, SkipReason, SkippedRow,
};
pub use series::{
    build_series, Championship, IngestError, IngestWarning, PointsRule, SeasonSeries, SeriesError,
};
pub use standing::{final_standing, standing_after, table_order, Standing, StandingError};

use crate::datasource::SeasonKey;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Parse + build in one step, returning the skipped-row list alongside.
pub fn load_championship(
    key: &SeasonKey,
    raw: &[u8],
    aliases: &AliasTable,
) -> Result<(Championship, Vec<SkippedRow>), LoadError> {
    let parsed = parse_matches_with_aliases(raw, &key.league_code, aliases)?;
    let champ = build_series(key, &parsed.matches, &PointsRule::default())?;
    Ok((champ, parsed.skipped))
}

pub fn load_championship_file(
    key: &SeasonKey,
    path: &Path,
    aliases: &AliasTable,
) -> Result<(Championship, Vec<SkippedRow>), LoadError> {
    let raw = std::fs::read(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_championship(key, &raw, aliases)
}
