use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Result;
use league_trend::rankmetrics::{
    displacement, tpr_from_outcomes, ChampionshipOutcome, TableEnd, ZoneMatch,
};
use league_trend::regression::sweep::{aggregate, evaluate_all, Grouping, Observation, SweepConfig};
use league_trend::regression::Extrapolation;
use league_trend::stats::{paired_t_test, studentized_bootstrap_ci, Alternative};
use league_trend::Championship;
use rayon::prelude::*;

use crate::args::{EvaluateArgs, GlobalOpts};
use crate::data;
use crate::output::{Cell, Table};

/// Premier League, Serie A, Ligue 1, La Liga, Bundesliga, Eredivisie, Primeira Liga.
pub const TOP_LEAGUES: [&str; 7] = ["E0", "I1", "F1", "SP1", "D1", "N1", "P1"];

const TPR_K: [usize; 2] = [3, 6];
const DEFAULT_DIR: &str = "league-trend-report";

fn is_top(c: &Championship) -> bool {
    TOP_LEAGUES.contains(&c.key.league_code.as_str())
}

struct Writer<'a> {
    dir: PathBuf,
    opts: &'a GlobalOpts,
}

impl Writer<'_> {
    fn write(&self, name: &str, table: &Table) -> Result<()> {
        let path = self.dir.join(format!("{name}.{}", self.opts.format.extension()));
        crate::output::emit(&table.render(self.opts.format)?, Some(&path))
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

fn observation_table(obs: &[Observation]) -> Table {
    let mut t = Table::new(&[
        "season", "league", "country", "team", "n", "m", "final_position", "zone", "degree", "t_s",
        "predicted", "actual", "abs_error",
    ]);
    for o in obs {
        let r = &o.record;
        t.push(vec![
            r.key.season_code.as_str().into(),
            r.key.league_code.as_str().into(),
            r.key.country.as_str().into(),
            r.team.as_str().into(),
            o.n.into(),
            o.team_count.into(),
            o.final_position.into(),
            o.zone.as_str().into(),
            r.degree.into(),
            r.t_s.into(),
            r.predicted.into(),
            r.actual.into(),
            r.abs_error.into(),
        ]);
    }
    t
}

fn aggregate_table(obs: &[Observation], groupings: &[Grouping]) -> Table {
    let mut cols: Vec<&'static str> = groupings.iter().map(|g| g.name()).collect();
    cols.extend(["count", "mean_abs_error"]);
    let mut t = Table::new(&cols);
    for row in aggregate(obs, groupings) {
        let mut cells: Vec<Cell> = row.groups.iter().map(|(_, v)| v.to_string().into()).collect();
        cells.push(row.count.into());
        cells.push(row.mean_abs_error.into());
        t.push(cells);
    }
    t
}

/// Smallest group that gets a bootstrap interval; smaller ones report NaN endpoints.
const MIN_CI_SAMPLES: usize = 10;

fn ci_cells(xs: &[f64], args: &EvaluateArgs, seed: u64) -> Vec<Cell> {
    let m = if xs.is_empty() { f64::NAN } else { mean(xs) };
    if xs.len() < MIN_CI_SAMPLES {
        return vec![m.into(), f64::NAN.into(), f64::NAN.into()];
    }
    match studentized_bootstrap_ci(xs, args.level, args.replicates, seed) {
        Ok(ci) => vec![ci.estimate.into(), ci.lo.into(), ci.hi.into()],
        Err(_) => vec![m.into(), m.into(), m.into()],
    }
}

fn error_reports(w: &Writer, obs: &[Observation], args: &EvaluateArgs) -> Result<()> {
    use Grouping::*;
    w.write("abs_errors", &observation_table(obs))?;
    for (name, groups) in [
        ("abs_error_by_degree", vec![Degree]),
        ("abs_error_by_t_s", vec![Degree, Ts]),
        ("abs_error_by_n", vec![Degree, SeasonLength]),
        ("abs_error_by_country", vec![Degree, Country]),
        ("abs_error_by_team", vec![Degree, Country, Team]),
        ("abs_error_by_zone", vec![Degree, Zone]),
        ("abs_error_by_zone_t_s", vec![Degree, Zone, Ts]),
    ] {
        w.write(name, &aggregate_table(obs, &groups))?;
    }

    let mut by_degree: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    let mut cells: BTreeMap<(usize, String, String, usize), f64> = BTreeMap::new();
    for o in obs {
        let r = &o.record;
        by_degree.entry(r.degree).or_default().push(r.abs_error as f64);
        cells.insert((r.degree, r.key.id(), r.team.clone(), r.t_s), r.abs_error as f64);
    }

    let mut ci = Table::new(&["degree", "count", "mean_abs_error", "lo", "hi", "level", "replicates", "seed"]);
    for (degree, errs) in &by_degree {
        let mut row: Vec<Cell> = vec![(*degree).into(), errs.len().into()];
        row.extend(ci_cells(errs, args, w.opts.seed));
        row.extend([args.level.into(), args.replicates.into(), w.opts.seed.into()]);
        ci.push(row);
    }
    w.write("mean_abs_error_ci", &ci)?;

    let mut tests = Table::new(&[
        "lower_degree", "higher_degree", "alternative", "pairs", "t", "df", "p_value", "p_underflow",
    ]);
    let degrees: Vec<usize> = by_degree.keys().copied().collect();
    for pair in degrees.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for ((d, season, team, t_s), e) in &cells {
            if *d != lo {
                continue;
            }
            if let Some(other) = cells.get(&(hi, season.clone(), team.clone(), *t_s)) {
                a.push(*e);
                b.push(*other);
            }
        }
        match paired_t_test(&a, &b, Alternative::Less) {
            Ok(t) => tests.push(vec![
                lo.into(),
                hi.into(),
                "less".into(),
                a.len().into(),
                t.statistic.into(),
                t.df.into(),
                t.p_value.into(),
                t.underflow.into(),
            ]),
            Err(e) => eprintln!("warning: degree {lo} vs {hi} t-test skipped: {e}"),
        }
    }
    w.write("degree_tests", &tests)?;
    Ok(())
}

struct TableOutcome {
    degree: usize,
    top: bool,
    outcome: ChampionshipOutcome,
}

fn table_outcomes(champs: &[Championship], cfg: &SweepConfig) -> (Vec<TableOutcome>, usize) {
    let parts: Vec<(Vec<TableOutcome>, usize)> = champs
        .par_iter()
        .map(|c| {
            let mut out = Vec::new();
            let mut failed = 0;
            for &degree in &cfg.degrees {
                for &t_s in &cfg.ts {
                    match ChampionshipOutcome::evaluate(c, t_s, degree) {
                        Ok(outcome) => out.push(TableOutcome {
                            degree,
                            top: is_top(c),
                            outcome,
                        }),
                        Err(_) => failed += 1,
                    }
                }
            }
            (out, failed)
        })
        .collect();
    let failed = parts.iter().map(|p| p.1).sum();
    (parts.into_iter().flat_map(|p| p.0).collect(), failed)
}

fn table_reports(w: &Writer, outcomes: &[TableOutcome], cfg: &SweepConfig, args: &EvaluateArgs) -> Result<()> {
    let mut long = Table::new(&[
        "degree", "t_s", "season", "league", "country", "top_league", "m", "D", "max_D", "d",
    ]);
    let mut groups: BTreeMap<(usize, usize), (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for o in outcomes {
        let r = displacement(&o.outcome.actual, &o.outcome.predicted)?;
        let key = &o.outcome.actual.key;
        long.push(vec![
            o.degree.into(),
            o.outcome.t_s.into(),
            key.season_code.as_str().into(),
            key.league_code.as_str().into(),
            key.country.as_str().into(),
            o.top.into(),
            r.teams.into(),
            r.total.into(),
            r.max.into(),
            r.normalized.into(),
        ]);
        let g = groups.entry((o.degree, o.outcome.t_s)).or_default();
        if o.top {
            g.0.push(r.normalized);
        } else {
            g.1.push(r.normalized);
        }
    }
    w.write("displacement", &long)?;

    let mut summary = Table::new(&["degree", "t_s", "championships", "mean_d", "median_d"]);
    let mut split = Table::new(&["degree", "t_s", "group", "championships", "mean_d", "lo", "hi"]);
    for ((degree, t_s), (top, other)) in &groups {
        let all: Vec<f64> = top.iter().chain(other).copied().collect();
        summary.push(vec![(*degree).into(), (*t_s).into(), all.len().into(), mean(&all).into(), median(&all).into()]);
        for (name, xs) in [("top", top), ("other", other)] {
            if xs.is_empty() {
                continue;
            }
            let mut row: Vec<Cell> = vec![(*degree).into(), (*t_s).into(), name.into(), xs.len().into()];
            row.extend(ci_cells(xs, args, w.opts.seed));
            split.push(row);
        }
    }
    w.write("displacement_summary", &summary)?;
    w.write("displacement_top_leagues", &split)?;

    let mode = if args.tpr_exact { ZoneMatch::Exact } else { ZoneMatch::Set };
    let mut tpr = Table::new(&["degree", "t_s", "k", "end", "match", "hits", "total", "rate"]);
    let mut perfect = Table::new(&["degree", "t_s", "championships", "perfect"]);
    for &degree in &cfg.degrees {
        let mine: Vec<ChampionshipOutcome> = outcomes
            .iter()
            .filter(|o| o.degree == degree)
            .map(|o| o.outcome.clone())
            .collect();
        for &k in &TPR_K {
            for end in [TableEnd::Top, TableEnd::Bottom] {
                for &t_s in &cfg.ts {
                    let cell = tpr_from_outcomes(&mine, t_s, k, end, mode);
                    tpr.push(vec![
                        degree.into(),
                        t_s.into(),
                        k.into(),
                        (if end == TableEnd::Top { "top" } else { "bottom" }).into(),
                        (if args.tpr_exact { "exact" } else { "set" }).into(),
                        cell.hits.into(),
                        cell.total.into(),
                        cell.rate.into(),
                    ]);
                }
            }
        }
        for &t_s in &cfg.ts {
            let at: Vec<&ChampionshipOutcome> = mine.iter().filter(|o| o.t_s == t_s).collect();
            let hits = at.iter().filter(|o| o.is_perfect()).count();
            perfect.push(vec![degree.into(), t_s.into(), at.len().into(), hits.into()]);
        }
        let early = mine.iter().filter(|o| o.t_s <= 7 && o.is_perfect()).count();
        eprintln!("degree {degree}: {early} perfect table prediction(s) with t_s <= 7");
    }
    w.write("tpr", &tpr)?;
    w.write("perfect_predictions", &perfect)?;
    Ok(())
}

pub fn run(opts: &GlobalOpts, args: &EvaluateArgs) -> Result<()> {
    let keys = data::manifest(opts)?;
    let ctx = data::context(opts)?;
    let champs = data::load_all(&ctx, &keys)?;
    let cfg = SweepConfig {
        ts: args.ts.0.clone(),
        degrees: args.degree.0.clone(),
        extrapolation: Extrapolation { clamp: opts.clamp },
    };
    let w = Writer {
        dir: opts.out.clone().unwrap_or_else(|| Path::new(DEFAULT_DIR).to_path_buf()),
        opts,
    };

    let (obs, skipped) = evaluate_all(&champs, &cfg);
    if skipped > 0 {
        eprintln!("warning: {skipped} team-season cell(s) too short for the requested holdout and degree");
    }
    if obs.is_empty() {
        anyhow::bail!("no team-season could be evaluated with the requested holdouts and degrees");
    }
    error_reports(&w, &obs, args)?;

    let (outcomes, failed) = table_outcomes(&champs, &cfg);
    if failed > 0 {
        eprintln!("warning: {failed} championship table prediction(s) skipped");
    }
    table_reports(&w, &outcomes, &cfg, args)?;
    eprintln!(
        "evaluated {} championships, {} observations; reports in {}",
        champs.len(),
        obs.len(),
        w.dir.display()
    );
    Ok(())
}
