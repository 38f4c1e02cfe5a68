//! Browser bindings for the demo page in `www/`. Every export returns a JSON
//! string; the same functions are exposed as plain Rust for native tests.

use std::collections::BTreeMap;

use league_trend::datasource::{builtin_fixture, fixture_manifest};
use league_trend::ingest::{final_standing, load_championship, AliasTable};
use league_trend::rankmetrics::{displacement, predict_final_standing};
use league_trend::regression::{extrapolate_final, fit_prefix, MAX_DEGREE};
use league_trend::stats::{null_model_errors, NullModelConfig, SeasonLength};
use league_trend::{Championship, SeasonKey, Standing};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_NULL_SERIES: usize = 200_000;

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn fixture_championship(league: &str) -> Result<Championship, String> {
    let key = fixture_manifest()
        .into_iter()
        .find(|k| k.league_code.eq_ignore_ascii_case(league))
        .ok_or_else(|| format!("no bundled season for league {league:?}"))?;
    let raw = builtin_fixture(&key.season_code, &key.league_code).expect("listed fixture exists");
    load_championship(&key, raw, &AliasTable::default())
        .map(|(c, _)| c)
        .map_err(|e| e.to_string())
}

/// Bundled seasons as `[{league, season, name, country}]`.
pub fn list_fixtures() -> String {
    let rows: Vec<_> = fixture_manifest()
        .iter()
        .map(|k| json!({"league": k.league_code, "season": k.season_code, "name": k.display_name, "country": k.country}))
        .collect();
    to_json(&rows)
}

/// Cumulative points of every team in a bundled season, in final-table order.
pub fn season_series(league: &str) -> Result<String, String> {
    let c = fixture_championship(league)?;
    let table = final_standing(&c.series).map_err(|e| e.to_string())?;
    let teams: Vec<_> = table
        .ordered_teams()
        .iter()
        .map(|t| json!({"team": t, "points": c.series[t].points()}))
        .collect();
    Ok(to_json(&json!({"id": c.key.id(), "name": c.key.display_name, "teams": teams})))
}

/// Fits the first `n - t_s` rounds of `points_json` (a JSON array of
/// cumulative totals) and extrapolates the curve to round `n`.
pub fn forecast(points_json: &str, t_s: usize, degree: usize) -> Result<String, String> {
    let points: Vec<f64> = serde_json::from_str(points_json).map_err(|e| format!("points: {e}"))?;
    let n = points.len();
    if degree == 0 || degree > MAX_DEGREE {
        return Err(format!("degree must lie in 1..={MAX_DEGREE}"));
    }
    if t_s == 0 || t_s + degree + 1 > n {
        return Err(format!("holdout must lie in 1..={}", n.saturating_sub(degree + 1)));
    }
    let model = fit_prefix(&points, t_s, degree).map_err(|e| e.to_string())?;
    let curve: Vec<f64> = (1..=n).map(|i| model.eval(i as f64)).collect();
    let predicted = extrapolate_final(&model);
    let actual = points[n - 1];
    Ok(to_json(&json!({
        "coefficients": model.coeffs,
        "train_len": model.train_len,
        "curve": curve,
        "predicted": predicted,
        "actual": actual,
        "abs_error": (predicted as f64 - actual).abs(),
    })))
}

fn standing_from_lines(text: &str) -> Result<Standing, String> {
    let teams: Vec<String> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect();
    let key = SeasonKey::new("Custom", "X", "0001", "Custom").expect("static key is valid");
    Standing::from_order(key, 1, teams).map_err(|e| e.to_string())
}

/// Footrule distance between two tables given as one team name per line,
/// best first.
pub fn compare_tables(actual: &str, predicted: &str) -> Result<String, String> {
    let a = standing_from_lines(actual)?;
    let p = standing_from_lines(predicted)?;
    displacement(&a, &p).map(|r| to_json(&r)).map_err(|e| e.to_string())
}

/// Predicted against real final table of a bundled season.
pub fn season_table(league: &str, t_s: usize, degree: usize) -> Result<String, String> {
    let c = fixture_championship(league)?;
    let pred = predict_final_standing(&c, t_s, degree).map_err(|e| e.to_string())?;
    let actual = final_standing(&c.series).map_err(|e| e.to_string())?;
    let report = displacement(&actual, &pred.standing).map_err(|e| e.to_string())?;
    let rows: Vec<_> = pred
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "team": r.team,
                "predicted_rank": i + 1,
                "actual_rank": actual.rank_of(&r.team),
                "predicted_points": r.predicted_points,
                "actual_points": c.series[&r.team].final_points(),
            })
        })
        .collect();
    Ok(to_json(&json!({"rows": rows, "D": report.total, "max_D": report.max, "d": report.normalized})))
}

/// Error histogram of forecasts on random seasons.
pub fn null_histogram(
    count: usize,
    n: usize,
    t_s: usize,
    degree: usize,
    p_win: f64,
    p_draw: f64,
    seed: u64,
) -> Result<String, String> {
    if count > MAX_NULL_SERIES {
        return Err(format!("at most {MAX_NULL_SERIES} series"));
    }
    let cfg = NullModelConfig {
        count,
        season_length: SeasonLength::Fixed(n),
        outcome_probs: [p_win, p_draw, 1.0 - p_win - p_draw],
        seed,
        ..NullModelConfig::default()
    };
    let errors = null_model_errors(&cfg, t_s, degree).map_err(|e| e.to_string())?;
    let mut hist: BTreeMap<u64, usize> = BTreeMap::new();
    for &e in &errors {
        *hist.entry(e).or_default() += 1;
    }
    let mean = errors.iter().sum::<u64>() as f64 / errors.len() as f64;
    let bins: Vec<_> = hist.into_iter().map(|(e, c)| json!([e, c])).collect();
    Ok(to_json(&json!({"mean": mean, "count": errors.len(), "histogram": bins})))
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = listFixtures)]
pub fn list_fixtures_js() -> String {
    list_fixtures()
}

#[wasm_bindgen(js_name = seasonSeries)]
pub fn season_series_js(league: &str) -> Result<String, JsValue> {
    js(season_series(league))
}

#[wasm_bindgen(js_name = forecast)]
pub fn forecast_js(points_json: &str, t_s: usize, degree: usize) -> Result<String, JsValue> {
    js(forecast(points_json, t_s, degree))
}

#[wasm_bindgen(js_name = compareTables)]
pub fn compare_tables_js(actual: &str, predicted: &str) -> Result<String, JsValue> {
    js(compare_tables(actual, predicted))
}

#[wasm_bindgen(js_name = seasonTable)]
pub fn season_table_js(league: &str, t_s: usize, degree: usize) -> Result<String, JsValue> {
    js(season_table(league, t_s, degree))
}

#[wasm_bindgen(js_name = nullHistogram)]
pub fn null_histogram_js(
    count: usize,
    n: usize,
    t_s: usize,
    degree: usize,
    p_win: f64,
    p_draw: f64,
    seed: u64,
) -> Result<String, JsValue> {
    js(null_histogram(count, n, t_s, degree, p_win, p_draw, seed))
}
