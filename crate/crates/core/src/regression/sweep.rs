//! Batch evaluation over championships × holdouts × degrees, with
//! grouped mean absolute errors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use super::{evaluate_team, EvalRecord, Extrapolation};
use crate::ingest::{final_standing, Championship};

/// Final-table zone, five positions each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Zone {
    Top,
    Middle,
    Bottom,
    Other,
}

impl Zone {
    pub const WIDTH: usize = 5;

    /// Zone of 1-based `position` in an `m`-team table. Top and bottom
    /// take precedence when the zones overlap in small leagues.
    pub fn of(position: usize, m: usize) -> Zone {
        let middle_start = m.saturating_sub(Self::WIDTH) / 2 + 1;
        if position <= Self::WIDTH {
            Zone::Top
        } else if position + Self::WIDTH > m {
            Zone::Bottom
        } else if (middle_start..middle_start + Self::WIDTH).contains(&position) {
            Zone::Middle
        } else {
            Zone::Other
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Zone::Top => "top",
            Zone::Middle => "middle",
            Zone::Bottom => "bottom",
            Zone::Other => "other",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Grouping {
    Degree,
    Ts,
    SeasonLength,
    Country,
    League,
    Team,
    Zone,
}

impl Grouping {
    pub const ALL: [Grouping; 7] = [
        Grouping::Degree,
        Grouping::Ts,
        Grouping::SeasonLength,
        Grouping::Country,
        Grouping::League,
        Grouping::Team,
        Grouping::Zone,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Grouping::Degree => "degree",
            Grouping::Ts => "t_s",
            Grouping::SeasonLength => "n",
            Grouping::Country => "country",
            Grouping::League => "league",
            Grouping::Team => "team",
            Grouping::Zone => "zone",
        }
    }
}

impl fmt::Display for Grouping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SweepError {
    #[error("unknown grouping {0:?} (expected one of degree, t_s, n, country, league, team, zone)")]
    UnknownGrouping(String),
    #[error("nothing to evaluate")]
    Empty,
}

impl FromStr for Grouping {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "degree" => Ok(Grouping::Degree),
            "t_s" | "ts" => Ok(Grouping::Ts),
            "n" | "rounds" => Ok(Grouping::SeasonLength),
            "country" => Ok(Grouping::Country),
            "league" => Ok(Grouping::League),
            "team" => Ok(Grouping::Team),
            "zone" => Ok(Grouping::Zone),
            other => Err(SweepError::UnknownGrouping(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub ts: Vec<usize>,
    pub degrees: Vec<usize>,
    pub extrapolation: Extrapolation,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            ts: (1..=20).collect(),
            degrees: vec![1],
            extrapolation: Extrapolation::default(),
        }
    }
}

/// One evaluated (team, season, t_s, degree) cell with its grouping context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub record: EvalRecord,
    pub n: usize,
    pub team_count: usize,
    pub final_position: usize,
    pub zone: Zone,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum GroupValue {
    Int(i64),
    Text(String),
}

impl fmt::Display for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupValue::Int(v) => write!(f, "{v}"),
            GroupValue::Text(s) => f.write_str(s),
        }
    }
}

impl Observation {
    pub fn group_value(&self, g: Grouping) -> GroupValue {
        match g {
            Grouping::Degree => GroupValue::Int(self.record.degree as i64),
            Grouping::Ts => GroupValue::Int(self.record.t_s as i64),
            Grouping::SeasonLength => GroupValue::Int(self.n as i64),
            Grouping::Country => GroupValue::Text(self.record.key.country.clone()),
            Grouping::League => GroupValue::Text(self.record.key.league_code.clone()),
            Grouping::Team => GroupValue::Text(self.record.team.clone()),
            Grouping::Zone => GroupValue::Text(self.zone.as_str().to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateRow {
    pub groups: Vec<(Grouping, GroupValue)>,
    pub count: usize,
    pub mean_abs_error: f64,
}

fn evaluate_championship(champ: &Championship, cfg: &SweepConfig) -> (Vec<Observation>, usize) {
    let Ok(table) = final_standing(&champ.series) else {
        return (Vec::new(), 0);
    };
    let m = champ.team_count();
    let mut out = Vec::new();
    let mut skipped = 0;
    for series in champ.series.values() {
        let position = table.rank_of(series.team()).expect("team in its own table");
        for &degree in &cfg.degrees {
            for &t_s in &cfg.ts {
                match evaluate_team(series, t_s, degree, cfg.extrapolation) {
                    Ok(record) => out.push(Observation {
                        record,
                        n: series.len(),
                        team_count: m,
                        final_position: position,
                        zone: Zone::of(position, m),
                    }),
                    Err(_) => skipped += 1,
                }
            }
        }
    }
    (out, skipped)
}

/// Evaluates every cell. Returns the observations in a deterministic order
/// (season key, team, degree, t_s) and the number of cells that could not
/// be fitted.
pub fn evaluate_all(champs: &[Championship], cfg: &SweepConfig) -> (Vec<Observation>, usize) {
    #[cfg(feature = "parallel")]
    let parts: Vec<(Vec<Observation>, usize)> = champs
        .par_iter()
        .map(|c| evaluate_championship(c, cfg))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<(Vec<Observation>, usize)> =
        champs.iter().map(|c| evaluate_championship(c, cfg)).collect();

    let skipped = parts.iter().map(|p| p.1).sum();
    let mut obs: Vec<Observation> = parts.into_iter().flat_map(|p| p.0).collect();
    obs.sort_by(|a, b| {
        (&a.record.key, &a.record.team, a.record.degree, a.record.t_s).cmp(&(
            &b.record.key,
            &b.record.team,
            b.record.degree,
            b.record.t_s,
        ))
    });
    (obs, skipped)
}

/// Mean absolute error per distinct combination of `groupings`, ordered by
/// group values. An empty grouping list yields one grand-mean row.
pub fn aggregate(obs: &[Observation], groupings: &[Grouping]) -> Vec<AggregateRow> {
    let mut acc: BTreeMap<Vec<GroupValue>, (usize, u64)> = BTreeMap::new();
    for o in obs {
        let k: Vec<GroupValue> = groupings.iter().map(|g| o.group_value(*g)).collect();
        let e = acc.entry(k).or_insert((0, 0));
        e.0 += 1;
        e.1 += o.record.abs_error;
    }
    acc.into_iter()
        .map(|(values, (count, total))| AggregateRow {
            groups: groupings.iter().copied().zip(values).collect(),
            count,
            mean_abs_error: total as f64 / count as f64,
        })
        .collect()
}

pub fn sweep_evaluations(
    champs: &[Championship],
    cfg: &SweepConfig,
    groupings: &[&str],
) -> Result<Vec<AggregateRow>, SweepError> {
    let groupings: Vec<Grouping> = groupings
        .iter()
        .map(|g| g.parse())
        .collect::<Result<_, _>>()?;
    if champs.is_empty() || cfg.ts.is_empty() || cfg.degrees.is_empty() {
        return Err(SweepError::Empty);
    }
    let (obs, _) = evaluate_all(champs, cfg);
    Ok(aggregate(&obs, &groupings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasource::SeasonKey;
    use crate::ingest::SeasonSeries;
    use crate::regression::Extrapolation;

    fn linear_league(teams: usize, n: usize) -> Championship {
        let key = SeasonKey::new("Testland", "T1", "1314", "Test").unwrap();
        // team j wins the first j rounds of every 3, draws otherwise: exact
        // linear only when the increment is constant, so use constant steps
        let series = (0..teams)
            .map(|j| {
                let step = [0u32, 1, 3][j % 3];
                let pts: Vec<u32> = (1..=n as u32).map(|i| step * i).collect();
                let name = format!("team{j:02}");
                (name.clone(), SeasonSeries::from_points(name, key.clone(), pts).unwrap())
            })
            .collect();
        Championship {
            key,
            series,
            warnings: vec![],
        }
    }

    #[test]
    fn zones() {
        let z: Vec<Zone> = (1..=20).map(|p| Zone::of(p, 20)).collect();
        assert_eq!(&z[..5], &[Zone::Top; 5]);
        assert_eq!(&z[5..7], &[Zone::Other; 2]);
        assert_eq!(&z[7..12], &[Zone::Middle; 5]);
        assert_eq!(&z[12..15], &[Zone::Other; 3]);
        assert_eq!(&z[15..], &[Zone::Bottom; 5]);
        assert_eq!(Zone::of(6, 10), Zone::Bottom);
    }

    #[test]
    fn unknown_grouping() {
        let champs = vec![linear_league(4, 10)];
        assert_eq!(
            sweep_evaluations(&champs, &SweepConfig::default(), &["colour"]).unwrap_err(),
            SweepError::UnknownGrouping("colour".into())
        );
    }

    #[test]
    fn single_cell_matches_evaluate_team() {
        let champ = linear_league(1, 20);
        let cfg = SweepConfig {
            ts: vec![5],
            degrees: vec![1],
            extrapolation: Extrapolation::default(),
        };
        let rows = sweep_evaluations(std::slice::from_ref(&champ), &cfg, &[]).unwrap();
        let direct = evaluate_team(champ.series.values().next().unwrap(), 5, 1, Extrapolation::default()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].count, 1);
        assert_eq!(rows[0].mean_abs_error, direct.abs_error as f64);
    }

    #[test]
    fn exact_linear_corpus_has_zero_error() {
        let champs: Vec<Championship> = (0..10).map(|_| linear_league(10, 30)).collect();
        let rows = sweep_evaluations(&champs, &SweepConfig::default(), &["t_s"]).unwrap();
        assert_eq!(rows.len(), 20);
        assert!(rows.iter().all(|r| r.mean_abs_error == 0.0 && r.count == 100));
        assert_eq!(rows[0].groups[0], (Grouping::Ts, GroupValue::Int(1)));
        assert_eq!(rows[19].groups[0], (Grouping::Ts, GroupValue::Int(20)));
    }

    #[test]
    fn skipped_cells_are_counted() {
        let champs = vec![linear_league(2, 6)];
        let (obs, skipped) = evaluate_all(&champs, &SweepConfig::default());
        // n = 6, degree 1: t_s in 1..=4 is valid
        assert_eq!(obs.len(), 2 * 4);
        assert_eq!(skipped, 2 * 16);
    }
}
