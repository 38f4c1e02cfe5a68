use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use serde::Serialize;

use super::distance::displacement;
use crate::ingest::{final_standing, Championship, Standing, StandingError};
use crate::regression::{extrapolate_final, fit_polynomial, RegressionError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PredictError {
    #[error("{team}: {source}")]
    Fit {
        team: String,
        #[source]
        source: RegressionError,
    },
    #[error(transparent)]
    Standing(#[from] StandingError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictedRow {
    pub team: String,
    /// Unfloored `L(n)`; the ranking key.
    pub extrapolated: f64,
    /// `floor(L(n))`.
    pub predicted_points: i64,
    pub points_at_cut: u32,
    pub goal_diff_at_cut: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictedTable {
    pub t_s: usize,
    pub degree: usize,
    pub standing: Standing,
    /// In predicted order.
    pub rows: Vec<PredictedRow>,
}

/// Ranks teams by their extrapolated final totals. Ties on `L(n)` fall back
/// to points, then goal difference, at round `n - t_s`, then to name.
pub fn predict_final_standing(
    champ: &Championship,
    t_s: usize,
    degree: usize,
) -> Result<PredictedTable, PredictError> {
    let mut rows = Vec::with_capacity(champ.series.len());
    for s in champ.series.values() {
        let model = fit_polynomial(s, t_s, degree).map_err(|source| PredictError::Fit {
            team: s.team().to_string(),
            source,
        })?;
        let cut = model.train_len;
        rows.push(PredictedRow {
            team: s.team().to_string(),
            extrapolated: model.extrapolated(),
            predicted_points: extrapolate_final(&model),
            points_at_cut: s.points_at(cut),
            goal_diff_at_cut: s.goal_diff()[cut - 1],
        });
    }
    rows.sort_by(|a, b| {
        b.extrapolated
            .partial_cmp(&a.extrapolated)
            .unwrap_or(Ordering::Equal)
            .then_with(|| b.points_at_cut.cmp(&a.points_at_cut))
            .then_with(|| b.goal_diff_at_cut.cmp(&a.goal_diff_at_cut))
            .then_with(|| a.team.cmp(&b.team))
    });
    let round = champ.max_rounds();
    let standing = Standing::from_order(
        champ.key.clone(),
        round,
        rows.iter().map(|r| r.team.clone()).collect(),
    )?;
    Ok(PredictedTable {
        t_s,
        degree,
        standing,
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TableEnd {
    Top,
    Bottom,
}

/// How a predicted top/bottom-k zone is compared with the actual one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ZoneMatch {
    /// Same set of teams, any order within the zone.
    #[default]
    Set,
    /// Same teams in the same positions.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TprCell {
    pub t_s: usize,
    pub k: usize,
    pub end: TableEnd,
    pub hits: usize,
    pub total: usize,
    pub rate: f64,
}

/// Actual and predicted final tables of one championship at one holdout.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChampionshipOutcome {
    pub t_s: usize,
    pub actual: Standing,
    pub predicted: Standing,
}

impl ChampionshipOutcome {
    pub fn evaluate(champ: &Championship, t_s: usize, degree: usize) -> Result<Self, PredictError> {
        Ok(Self {
            t_s,
            actual: final_standing(&champ.series)?,
            predicted: predict_final_standing(champ, t_s, degree)?.standing,
        })
    }

    pub fn is_perfect(&self) -> bool {
        self.actual.ordered_teams() == self.predicted.ordered_teams()
    }

    pub fn zone_hit(&self, k: usize, end: TableEnd, mode: ZoneMatch) -> bool {
        let pick = |s: &Standing| -> Vec<String> {
            match end {
                TableEnd::Top => s.top(k).to_vec(),
                TableEnd::Bottom => s.bottom(k).to_vec(),
            }
        };
        let (a, p) = (pick(&self.actual), pick(&self.predicted));
        match mode {
            ZoneMatch::Exact => a == p,
            ZoneMatch::Set => a.iter().collect::<BTreeSet<_>>() == p.iter().collect::<BTreeSet<_>>(),
        }
    }
}

/// TPR over pre-computed outcomes; championships with `k >= m` are left out.
pub fn tpr_from_outcomes(
    outcomes: &[ChampionshipOutcome],
    t_s: usize,
    k: usize,
    end: TableEnd,
    mode: ZoneMatch,
) -> TprCell {
    let eligible = outcomes
        .iter()
        .filter(|o| o.t_s == t_s && k < o.actual.len());
    let (mut hits, mut total) = (0, 0);
    for o in eligible {
        total += 1;
        if o.zone_hit(k, end, mode) {
            hits += 1;
        }
    }
    TprCell {
        t_s,
        k,
        end,
        hits,
        total,
        rate: if total > 0 { hits as f64 / total as f64 } else { 0.0 },
    }
}

/// Fraction of championships whose linear-model top/bottom-k set matches.
pub fn top_bottom_tpr(
    champs: &[Championship],
    t_s: usize,
    k: usize,
    end: TableEnd,
) -> Result<TprCell, PredictError> {
    let outcomes = champs
        .iter()
        .map(|c| ChampionshipOutcome::evaluate(c, t_s, 1))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(tpr_from_outcomes(&outcomes, t_s, k, end, ZoneMatch::Set))
}

/// Number of (championship, t_s) pairs whose predicted final table equals the actual one.
pub fn perfect_prediction_count(
    champs: &[Championship],
    ts: RangeInclusive<usize>,
) -> Result<usize, PredictError> {
    let mut count = 0;
    for c in champs {
        for t_s in ts.clone() {
            let o = ChampionshipOutcome::evaluate(c, t_s, 1)?;
            debug_assert_eq!(
                o.is_perfect(),
                displacement(&o.actual, &o.predicted).map(|r| r.total == 0).unwrap_or(false)
            );
            if o.is_perfect() {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasource::SeasonKey;
    use crate::ingest::SeasonSeries;

    fn league(rows: &[(&str, Vec<u32>)]) -> Championship {
        let key = SeasonKey::new("Testland", "T1", "1314", "Test").unwrap();
        Championship {
            key: key.clone(),
            series: rows
                .iter()
                .map(|(t, p)| (t.to_string(), SeasonSeries::from_points(*t, key.clone(), p.clone()).unwrap()))
                .collect(),
            warnings: vec![],
        }
    }

    fn steady(step: u32, n: u32) -> Vec<u32> {
        (1..=n).map(|i| step * i).collect()
    }

    #[test]
    fn linear_league_is_predicted_exactly() {
        let c = league(&[("C", steady(1, 20)), ("A", steady(3, 20)), ("B", steady(0, 20))]);
        for t_s in 1..=10 {
            let o = ChampionshipOutcome::evaluate(&c, t_s, 1).unwrap();
            assert_eq!(o.predicted.ordered_teams(), &["A", "C", "B"]);
            assert!(o.is_perfect());
            assert_eq!(displacement(&o.actual, &o.predicted).unwrap().total, 0);
        }
        assert_eq!(perfect_prediction_count(&[c], 1..=10).unwrap(), 10);
    }

    #[test]
    fn identical_prefixes_tie_by_name() {
        let mut late = steady(1, 8);
        late.extend([11, 14]);
        let c = league(&[("Zulu", steady(1, 10)), ("Alpha", late)]);
        let p = predict_final_standing(&c, 2, 1).unwrap();
        assert_eq!(p.standing.ordered_teams(), &["Alpha", "Zulu"]);
        assert_eq!(p.rows[0].predicted_points, 10);
    }

    #[test]
    fn ranking_uses_unfloored_values() {
        // L(10) is about 8.69 for Alpha and 8.82 for Zulu; both floor to 8
        let c = league(&[
            ("Alpha", vec![3, 3, 3, 3, 4, 5, 6, 9, 9, 9]),
            ("Zulu", vec![1, 1, 1, 2, 2, 3, 6, 9, 9, 9]),
        ]);
        let p = predict_final_standing(&c, 2, 1).unwrap();
        assert_eq!(p.rows[0].predicted_points, 8);
        assert_eq!(p.rows[1].predicted_points, 8);
        assert_eq!(p.standing.ordered_teams(), &["Zulu", "Alpha"]);
    }

    #[test]
    fn zone_hits() {
        let key = SeasonKey::new("Testland", "T1", "1314", "Test").unwrap();
        let st = |v: &[&str]| Standing::from_order(key.clone(), 1, v.iter().map(|s| s.to_string()).collect()).unwrap();
        let o = ChampionshipOutcome {
            t_s: 1,
            actual: st(&["A", "C", "B", "D"]),
            predicted: st(&["A", "B", "C", "D"]),
        };
        assert!(!o.zone_hit(2, TableEnd::Top, ZoneMatch::Set));
        assert!(o.zone_hit(3, TableEnd::Top, ZoneMatch::Set));
        assert!(!o.zone_hit(3, TableEnd::Top, ZoneMatch::Exact));
        assert!(o.zone_hit(1, TableEnd::Bottom, ZoneMatch::Exact));
        let cell = tpr_from_outcomes(std::slice::from_ref(&o), 1, 2, TableEnd::Top, ZoneMatch::Set);
        assert_eq!((cell.hits, cell.total), (0, 1));
        let cell = tpr_from_outcomes(std::slice::from_ref(&o), 1, 4, TableEnd::Top, ZoneMatch::Set);
        assert_eq!(cell.total, 0);
        let cell = tpr_from_outcomes(&[o.clone(), o], 1, 3, TableEnd::Bottom, ZoneMatch::Set);
        assert_eq!((cell.hits, cell.total, cell.rate), (2, 2, 1.0));
    }

    #[test]
    fn perfect_prediction_gives_full_tpr() {
        let c = league(&[
            ("A", steady(3, 12)),
            ("B", steady(1, 12)),
            ("C", (1..=12).map(|i| i / 2).collect()),
            ("D", steady(0, 12)),
        ]);
        let cell = top_bottom_tpr(&[c], 2, 2, TableEnd::Top).unwrap();
        assert_eq!(cell.rate, 1.0);
    }
}
