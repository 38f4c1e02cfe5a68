use anyhow::{Context, Result};
use league_trend::ingest::final_standing;
use league_trend::rankmetrics::{displacement, predict_final_standing};
use league_trend::regression::{
    extrapolate_final, extrapolate_final_clamped, fit_polynomial, floor_points,
};
use league_trend::Championship;

use crate::args::{GlobalOpts, PredictTableArgs, PredictTeamArgs};
use crate::data;
use crate::error::{TeamNotFound, UsageError};
use crate::output::{emit, Table};

fn suggestions(champ: &Championship, wanted: &str) -> Vec<String> {
    let wanted = wanted.to_lowercase();
    let mut scored: Vec<(f64, &String)> = champ
        .series
        .keys()
        .map(|t| (strsim::jaro_winkler(&wanted, &t.to_lowercase()), t))
        .filter(|(s, _)| *s >= 0.75)
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(b.1)));
    scored.into_iter().take(3).map(|(_, t)| t.clone()).collect()
}

fn check_holdout(champ: &Championship, t_s: usize, degree: usize) -> Result<()> {
    let n = champ.min_rounds();
    let max = n.saturating_sub(degree + 1);
    if t_s == 0 || t_s > max {
        return Err(UsageError(format!(
            "--ts must lie in 1..={max} for degree {degree} in a {n}-round season"
        ))
        .into());
    }
    Ok(())
}

pub fn team(opts: &GlobalOpts, args: &PredictTeamArgs) -> Result<()> {
    let keys = data::manifest(opts)?;
    let ctx = data::context(opts)?;
    let champ = data::load_season(&ctx, &keys, &args.season)?;
    let degree = args.degree as usize;

    let series = champ
        .series
        .get(&args.team)
        .or_else(|| {
            champ
                .series
                .values()
                .find(|s| s.team().eq_ignore_ascii_case(&args.team))
        })
        .ok_or_else(|| TeamNotFound {
            team: args.team.clone(),
            season: champ.key.id(),
            suggestions: suggestions(&champ, &args.team),
        })?;
    let n = series.len();
    let max = n.saturating_sub(degree + 1);
    if args.ts == 0 || args.ts > max {
        return Err(UsageError(format!("--ts must lie in 1..={max} for degree {degree} with {n} rounds")).into());
    }

    let model = fit_polynomial(series, args.ts, degree).context("fitting series")?;
    let cut = model.train_len;
    let so_far = series.points_at(cut) as i64;
    let mut table = Table::new(&["round", "actual", "extrapolated", "predicted", "abs_error"]);
    for round in cut + 1..=n {
        let raw = model.eval(round as f64);
        let predicted = if opts.clamp {
            floor_points(raw).clamp(so_far, (3 * round) as i64)
        } else {
            floor_points(raw)
        };
        let actual = series.points_at(round) as i64;
        table.push(vec![
            round.into(),
            actual.into(),
            raw.into(),
            predicted.into(),
            predicted.abs_diff(actual).into(),
        ]);
    }
    let final_pred = if opts.clamp {
        extrapolate_final_clamped(&model, so_far, 3 * n as i64)
    } else {
        extrapolate_final(&model)
    };
    eprintln!(
        "{} {} (t_s={}, degree {degree}): predicted {final_pred}, actual {}, error {}",
        series.team(),
        champ.key.id(),
        args.ts,
        series.final_points(),
        final_pred.abs_diff(series.final_points() as i64)
    );
    emit(&table.render(opts.format)?, opts.out.as_deref())
}

pub fn table(opts: &GlobalOpts, args: &PredictTableArgs) -> Result<()> {
    let keys = data::manifest(opts)?;
    let ctx = data::context(opts)?;
    let champ = data::load_season(&ctx, &keys, &args.season)?;
    let degree = args.degree as usize;
    check_holdout(&champ, args.ts, degree)?;

    let predicted = predict_final_standing(&champ, args.ts, degree)?;
    let actual = final_standing(&champ.series)?;
    let report = displacement(&actual, &predicted.standing)?;

    let mut table = Table::new(&[
        "predicted_rank",
        "team",
        "extrapolated",
        "predicted_points",
        "points_at_cut",
        "actual_rank",
        "actual_points",
        "displacement",
    ]);
    for (i, row) in predicted.rows.iter().enumerate() {
        let actual_rank = actual.rank_of(&row.team).expect("same teams");
        table.push(vec![
            (i + 1).into(),
            row.team.as_str().into(),
            row.extrapolated.into(),
            row.predicted_points.into(),
            row.points_at_cut.into(),
            actual_rank.into(),
            champ.series[&row.team].final_points().into(),
            report.per_team[&row.team].into(),
        ]);
    }
    eprintln!(
        "{} (t_s={}, degree {degree}): D={} of {}, d={}",
        champ.key.id(),
        args.ts,
        report.total,
        report.max,
        crate::output::format_float(report.normalized)
    );
    emit(&table.render(opts.format)?, opts.out.as_deref())
}
