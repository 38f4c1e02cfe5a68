use std::collections::BTreeMap;

use serde::Serialize;

use super::parse::{MatchRecord, MatchResult};
use crate::datasource::SeasonKey;

/// Points awarded per outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PointsRule {
    pub win: u32,
    pub draw: u32,
    pub loss: u32,
}

impl Default for PointsRule {
    fn default() -> Self {
        Self {
            win: 3,
            draw: 1,
            loss: 0,
        }
    }
}

impl PointsRule {
    fn allows(&self, increment: u32) -> bool {
        increment == self.win || increment == self.draw || increment == self.loss
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series for {0} is empty")]
    Empty(String),
    #[error("series for {0} has sequences of different lengths")]
    LengthMismatch(String),
    #[error("series for {team}: increment {increment} at round {round} is not a valid match outcome")]
    BadIncrement {
        team: String,
        round: usize,
        increment: i64,
    },
}

/// A team's cumulative totals after each of its matches in one season.
///
/// Index `i` (0-based) holds the totals after the team's `(i + 1)`-th match.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeasonSeries {
    team: String,
    key: SeasonKey,
    points: Vec<u32>,
    goal_diff: Vec<i32>,
    goals_for: Vec<u32>,
}

impl SeasonSeries {
    pub fn new(
        team: impl Into<String>,
        key: SeasonKey,
        points: Vec<u32>,
        goal_diff: Vec<i32>,
        goals_for: Vec<u32>,
    ) -> Result<Self, SeriesError> {
        Self::with_rule(team, key, points, goal_diff, goals_for, &PointsRule::default())
    }

    pub fn with_rule(
        team: impl Into<String>,
        key: SeasonKey,
        points: Vec<u32>,
        goal_diff: Vec<i32>,
        goals_for: Vec<u32>,
        rule: &PointsRule,
    ) -> Result<Self, SeriesError> {
        let team = team.into();
        if points.is_empty() {
            return Err(SeriesError::Empty(team));
        }
        if points.len() != goal_diff.len() || points.len() != goals_for.len() {
            return Err(SeriesError::LengthMismatch(team));
        }
        let mut prev = 0i64;
        for (i, &p) in points.iter().enumerate() {
            let inc = p as i64 - prev;
            if inc < 0 || !rule.allows(inc as u32) {
                return Err(SeriesError::BadIncrement {
                    team,
                    round: i + 1,
                    increment: inc,
                });
            }
            prev = p as i64;
        }
        Ok(Self {
            team,
            key,
            points,
            goal_diff,
            goals_for,
        })
    }

    /// A series of points only; goal columns are filled with zeros.
    pub fn from_points(
        team: impl Into<String>,
        key: SeasonKey,
        points: Vec<u32>,
    ) -> Result<Self, SeriesError> {
        let n = points.len();
        Self::new(team, key, points, vec![0; n], vec![0; n])
    }

    pub fn team(&self) -> &str {
        &self.team
    }

    pub fn key(&self) -> &SeasonKey {
        &self.key
    }

    /// Number of rounds `n`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn goal_diff(&self) -> &[i32] {
        &self.goal_diff
    }

    pub fn goals_for(&self) -> &[u32] {
        &self.goals_for
    }

    /// Totals after `round` matches (1-based).
    pub fn points_at(&self, round: usize) -> u32 {
        self.points[round - 1]
    }

    pub fn final_points(&self) -> u32 {
        *self.points.last().expect("non-empty by construction")
    }

    pub fn points_f64(&self) -> Vec<f64> {
        self.points.iter().map(|&p| p as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IngestWarning {
    /// Teams played different numbers of matches (abandoned or missing fixtures).
    UnbalancedSeason { min_rounds: usize, max_rounds: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IngestError {
    #[error("no matches to build series from")]
    NoMatches,
    #[error("matches span {days} days; input probably mixes several seasons")]
    MixedSeasons { days: i64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// One season of one division: every team's series plus build warnings.
#[derive(Debug, Clone, Serialize)]
pub struct Championship {
    pub key: SeasonKey,
    pub series: BTreeMap<String, SeasonSeries>,
    pub warnings: Vec<IngestWarning>,
}

impl Championship {
    pub fn team_count(&self) -> usize {
        self.series.len()
    }

    pub fn min_rounds(&self) -> usize {
        self.series.values().map(SeasonSeries::len).min().unwrap_or(0)
    }

    pub fn max_rounds(&self) -> usize {
        self.series.values().map(SeasonSeries::len).max().unwrap_or(0)
    }
}

const MAX_SEASON_SPAN_DAYS: i64 = 400;

/// Accumulates each team's points, goal difference and goals scored over
/// its matches in chronological order (file order breaks same-day ties).
pub fn build_series(
    key: &SeasonKey,
    matches: &[MatchRecord],
    rule: &PointsRule,
) -> Result<Championship, IngestError> {
    let first = matches.iter().map(|m| m.date).min().ok_or(IngestError::NoMatches)?;
    let last = matches.iter().map(|m| m.date).max().ok_or(IngestError::NoMatches)?;
    let days = (last - first).num_days();
    if days > MAX_SEASON_SPAN_DAYS {
        return Err(IngestError::MixedSeasons { days });
    }

    let mut order: Vec<usize> = (0..matches.len()).collect();
    order.sort_by_key(|&i| (matches[i].date, i));

    #[derive(Default)]
    struct Acc {
        points: Vec<u32>,
        goal_diff: Vec<i32>,
        goals_for: Vec<u32>,
    }
    impl Acc {
        fn push(&mut self, pts: u32, scored: u32, conceded: u32) {
            let p = self.points.last().copied().unwrap_or(0) + pts;
            let gd = self.goal_diff.last().copied().unwrap_or(0) + scored as i32 - conceded as i32;
            let gf = self.goals_for.last().copied().unwrap_or(0) + scored;
            self.points.push(p);
            self.goal_diff.push(gd);
            self.goals_for.push(gf);
        }
    }

    let mut acc: BTreeMap<&str, Acc> = BTreeMap::new();
    for &i in &order {
        let m = &matches[i];
        let (home_pts, away_pts) = match m.result {
            MatchResult::HomeWin => (rule.win, rule.loss),
            MatchResult::Draw => (rule.draw, rule.draw),
            MatchResult::AwayWin => (rule.loss, rule.win),
        };
        acc.entry(&m.home)
            .or_default()
            .push(home_pts, m.home_goals, m.away_goals);
        acc.entry(&m.away)
            .or_default()
            .push(away_pts, m.away_goals, m.home_goals);
    }

    let mut series = BTreeMap::new();
    for (team, a) in acc {
        let s = SeasonSeries::with_rule(team, key.clone(), a.points, a.goal_diff, a.goals_for, rule)?;
        series.insert(team.to_string(), s);
    }
    let mut champ = Championship {
        key: key.clone(),
        series,
        warnings: Vec::new(),
    };
    let (min_rounds, max_rounds) = (champ.min_rounds(), champ.max_rounds());
    if min_rounds != max_rounds {
        champ.warnings.push(IngestWarning::UnbalancedSeason {
            min_rounds,
            max_rounds,
        });
    }
    Ok(champ)
}
