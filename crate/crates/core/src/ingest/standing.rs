use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use super::series::SeasonSeries;
use crate::datasource::SeasonKey;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StandingError {
    #[error("round {round} outside 1..={max}")]
    RoundOutOfRange { round: usize, max: usize },
    #[error("team {0:?} listed more than once")]
    DuplicateTeam(String),
    #[error("standing has no teams")]
    Empty,
}

/// A ranked table with its permutation encoding `tau: team -> rank` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Standing {
    pub key: SeasonKey,
    pub round: usize,
    ordered_teams: Vec<String>,
    tau: BTreeMap<String, usize>,
}

impl Standing {
    pub fn from_order(
        key: SeasonKey,
        round: usize,
        ordered_teams: Vec<String>,
    ) -> Result<Self, StandingError> {
        if ordered_teams.is_empty() {
            return Err(StandingError::Empty);
        }
        let mut tau = BTreeMap::new();
        for (pos, team) in ordered_teams.iter().enumerate() {
            if tau.insert(team.clone(), pos + 1).is_some() {
                return Err(StandingError::DuplicateTeam(team.clone()));
            }
        }
        Ok(Self {
            key,
            round,
            ordered_teams,
            tau,
        })
    }

    pub fn ordered_teams(&self) -> &[String] {
        &self.ordered_teams
    }

    pub fn tau(&self) -> &BTreeMap<String, usize> {
        &self.tau
    }

    pub fn rank_of(&self, team: &str) -> Option<usize> {
        self.tau.get(team).copied()
    }

    pub fn len(&self) -> usize {
        self.ordered_teams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordered_teams.is_empty()
    }

    /// Teams in positions `1..=k`.
    pub fn top(&self, k: usize) -> &[String] {
        &self.ordered_teams[..k.min(self.len())]
    }

    /// Teams in the last `k` positions.
    pub fn bottom(&self, k: usize) -> &[String] {
        &self.ordered_teams[self.len() - k.min(self.len())..]
    }
}

/// Table order: points, goal difference, goals scored (all descending),
/// then team name ascending.
pub fn table_order(a: (&str, u32, i32, u32), b: (&str, u32, i32, u32)) -> Ordering {
    b.1.cmp(&a.1)
        .then_with(|| b.2.cmp(&a.2))
        .then_with(|| b.3.cmp(&a.3))
        .then_with(|| a.0.cmp(b.0))
}

fn ranked<'a>(
    entries: impl Iterator<Item = (&'a SeasonSeries, usize)>,
    key: SeasonKey,
    round: usize,
) -> Result<Standing, StandingError> {
    let mut rows: Vec<(&str, u32, i32, u32)> = entries
        .map(|(s, r)| (s.team(), s.points()[r - 1], s.goal_diff()[r - 1], s.goals_for()[r - 1]))
        .collect();
    rows.sort_by(|a, b| table_order(*a, *b));
    Standing::from_order(key, round, rows.into_iter().map(|r| r.0.to_string()).collect())
}

/// The table after every team has played `round` matches.
pub fn standing_after(
    series: &BTreeMap<String, SeasonSeries>,
    round: usize,
) -> Result<Standing, StandingError> {
    let first = series.values().next().ok_or(StandingError::Empty)?;
    let max = series.values().map(SeasonSeries::len).min().unwrap_or(0);
    if round == 0 || round > max {
        return Err(StandingError::RoundOutOfRange { round, max });
    }
    ranked(series.values().map(|s| (s, round)), first.key().clone(), round)
}

/// The final table using each team's last recorded match; equals
/// `standing_after(series, n)` for balanced seasons.
pub fn final_standing(series: &BTreeMap<String, SeasonSeries>) -> Result<Standing, StandingError> {
    let first = series.values().next().ok_or(StandingError::Empty)?;
    let round = series.values().map(SeasonSeries::len).max().unwrap_or(0);
    ranked(series.values().map(|s| (s, s.len())), first.key().clone(), round)
}
