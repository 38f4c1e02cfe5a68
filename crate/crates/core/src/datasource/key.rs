use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KeyError {
    #[error("season code {0:?} must be four digits with consecutive years (e.g. \"1314\")")]
    SeasonCode(String),
    #[error("league code {0:?} must be non-empty uppercase alphanumeric")]
    LeagueCode(String),
    #[error("season id {0:?} must look like LEAGUE/SEASON, e.g. D1/1314")]
    Id(String),
}

/// Identifies one championship: a division in one season.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeasonKey {
    pub country: String,
    pub league_code: String,
    pub season_code: String,
    pub display_name: String,
}

impl SeasonKey {
    pub fn new(
        country: impl Into<String>,
        league_code: impl Into<String>,
        season_code: impl Into<String>,
        display_name: impl Into<String>,
    ) -> Result<Self, KeyError> {
        let league_code = league_code.into();
        let season_code = season_code.into();
        validate_league(&league_code)?;
        validate_season(&season_code)?;
        Ok(Self {
            country: country.into(),
            league_code,
            season_code,
            display_name: display_name.into(),
        })
    }

    /// Calendar year the season starts in; two-digit years pivot at 70.
    pub fn start_year(&self) -> i32 {
        let yy: i32 = self.season_code[..2].parse().expect("validated");
        if yy >= 70 {
            1900 + yy
        } else {
            2000 + yy
        }
    }

    /// Short `LEAGUE/SEASON` identifier, e.g. `D1/1314`.
    pub fn id(&self) -> String {
        format!("{}/{}", self.league_code, self.season_code)
    }

    /// Splits a `LEAGUE/SEASON` identifier into validated parts.
    pub fn parse_id(id: &str) -> Result<(String, String), KeyError> {
        let (league, season) = id.split_once('/').ok_or_else(|| KeyError::Id(id.to_string()))?;
        let league = league.trim().to_ascii_uppercase();
        let season = season.trim().to_string();
        validate_league(&league)?;
        validate_season(&season)?;
        Ok((league, season))
    }

    pub fn matches_id(&self, league: &str, season: &str) -> bool {
        self.league_code == league && self.season_code == season
    }
}

fn validate_league(code: &str) -> Result<(), KeyError> {
    let ok = !code.is_empty()
        && code
            .chars()
            .all(|c| c.is_ascii_digit() || c.is_ascii_uppercase());
    if ok {
        Ok(())
    } else {
        Err(KeyError::LeagueCode(code.to_string()))
    }
}

fn validate_season(code: &str) -> Result<(), KeyError> {
    let err = || KeyError::SeasonCode(code.to_string());
    if code.len() != 4 || !code.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let first: u32 = code[..2].parse().map_err(|_| err())?;
    let second: u32 = code[2..].parse().map_err(|_| err())?;
    if (first + 1) % 100 != second {
        return Err(err());
    }
    Ok(())
}

impl Ord for SeasonKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.country
            .cmp(&other.country)
            .then_with(|| self.league_code.cmp(&other.league_code))
            .then_with(|| self.start_year().cmp(&other.start_year()))
            .then_with(|| self.display_name.cmp(&other.display_name))
    }
}

impl PartialOrd for SeasonKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SeasonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ({})", self.country, self.display_name, self.id())
    }
}
