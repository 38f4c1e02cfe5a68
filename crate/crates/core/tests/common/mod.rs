#![allow(dead_code)]

use league_trend::datasource::{builtin_fixture, fixture_manifest};
use league_trend::ingest::{load_championship, AliasTable};
use league_trend::{Championship, SeasonKey, Standing};

pub fn fixture_championships() -> Vec<Championship> {
    fixture_manifest()
        .iter()
        .map(|key| {
            let raw = builtin_fixture(&key.season_code, &key.league_code).expect("fixture present");
            load_championship(key, raw, &AliasTable::default()).expect("fixture loads").0
        })
        .collect()
}

pub fn fixture(league: &str) -> Championship {
    fixture_championships()
        .into_iter()
        .find(|c| c.key.league_code == league)
        .expect("known fixture")
}

pub fn test_key() -> SeasonKey {
    SeasonKey::new("Testland", "T1", "1415", "Test League").unwrap()
}

/// Builds a standing from `(team, rank)` pairs.
pub fn standing_from_ranks(rows: &[(&str, usize)]) -> Standing {
    let mut sorted: Vec<_> = rows.to_vec();
    sorted.sort_by_key(|(_, r)| *r);
    Standing::from_order(test_key(), 1, sorted.iter().map(|(t, _)| t.to_string()).collect()).unwrap()
}
