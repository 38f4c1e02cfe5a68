//! Polynomial trend fits on the opening rounds of a season and
//! extrapolation of the final points total.
//!
//! A model of degree `d` is fitted by ordinary least squares to the pairs
//! `(i, T_i)` for `i = 1..=n - t_s` using the raw round index (no centering),
//! and the forecast is `floor(L(n))`.

mod lstsq;
pub mod sweep;

use serde::Serialize;

use crate::datasource::SeasonKey;
use crate::ingest::SeasonSeries;

pub use sweep::{
    aggregate, evaluate_all, sweep_evaluations, AggregateRow, Grouping, Observation, SweepConfig,
    SweepError, Zone,
};

pub const MAX_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegressionError {
    #[error("degree {0} not supported (1..=3)")]
    BadDegree(usize),
    #[error("{available} training rounds cannot identify a degree-{degree} fit")]
    InsufficientData { available: usize, degree: usize },
    #[error("holdout t_s = {t_s} must be in 1..={max}")]
    BadHoldout { t_s: usize, max: usize },
    #[error("least-squares system is singular")]
    SingularFit,
}

/// A fitted polynomial `sum_k coeffs[k] * round^k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyModel {
    pub degree: usize,
    pub coeffs: Vec<f64>,
    /// Number of training rounds, `n - t_s`.
    pub train_len: usize,
    /// Season length the model extrapolates to.
    pub n: usize,
    /// Residual sum of squares over the training rounds.
    pub rss: f64,
}

impl PolyModel {
    pub fn eval(&self, round: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * round + c)
    }

    /// `L(n)` before flooring.
    pub fn extrapolated(&self) -> f64 {
        self.eval(self.n as f64)
    }

    pub fn holdout(&self) -> usize {
        self.n - self.train_len
    }
}

/// Largest integer `<= x`, treating values within 1e-9 of an integer as that
/// integer so exact fits are not knocked down by rounding noise.
pub fn floor_points(x: f64) -> i64 {
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * x.abs().max(1.0) {
        nearest as i64
    } else {
        x.floor() as i64
    }
}

/// Least-squares polynomial through `(xs[i], ys[i])`; returns `(coeffs, rss)`.
pub fn fit_points(xs: &[f64], ys: &[f64], degree: usize) -> Result<(Vec<f64>, f64), RegressionError> {
    if !(1..=MAX_DEGREE).contains(&degree) {
        return Err(RegressionError::BadDegree(degree));
    }
    if xs.len() < degree + 1 {
        return Err(RegressionError::InsufficientData {
            available: xs.len(),
            degree,
        });
    }
    let design = lstsq::Design::vandermonde(xs, degree);
    let coeffs = lstsq::solve(&design, ys).ok_or(RegressionError::SingularFit)?;
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(RegressionError::SingularFit);
    }
    let rss = rss_of(&coeffs, xs, ys);
    Ok((coeffs, rss))
}

pub fn rss_of(coeffs: &[f64], xs: &[f64], ys: &[f64]) -> f64 {
    xs.iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let fit = coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
            (y - fit).powi(2)
        })
        .sum()
}

/// Fits rounds `1..=n - t_s` of `values` (where `n = values.len()`).
/// `t_s = 0` fits the whole season.
pub fn fit_prefix(values: &[f64], t_s: usize, degree: usize) -> Result<PolyModel, RegressionError> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(RegressionError::BadDegree(degree));
    }
    let n = values.len();
    let train_len = n.saturating_sub(t_s);
    if t_s > n || train_len < degree + 1 {
        return Err(RegressionError::InsufficientData {
            available: train_len,
            degree,
        });
    }
    let xs: Vec<f64> = (1..=train_len).map(|i| i as f64).collect();
    let (coeffs, rss) = fit_points(&xs, &values[..train_len], degree)?;
    Ok(PolyModel {
        degree,
        coeffs,
        train_len,
        n,
        rss,
    })
}

pub fn fit_polynomial(
    series: &SeasonSeries,
    t_s: usize,
    degree: usize,
) -> Result<PolyModel, RegressionError> {
    fit_prefix(&series.points_f64(), t_s, degree)
}

/// `floor(L(n))`, unclamped.
pub fn extrapolate_final(model: &PolyModel) -> i64 {
    floor_points(model.extrapolated())
}

/// `floor(L(n))` clamped to `[points_so_far, max_points]`.
pub fn extrapolate_final_clamped(model: &PolyModel, points_so_far: i64, max_points: i64) -> i64 {
    extrapolate_final(model).clamp(points_so_far, max_points.max(points_so_far))
}

/// Extrapolation settings shared by single-team and batch evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Extrapolation {
    /// Clamp forecasts to `[T_{n-t_s}, 3n]`.
    pub clamp: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalRecord {
    pub team: String,
    pub key: SeasonKey,
    pub t_s: usize,
    pub degree: usize,
    pub predicted: i64,
    pub actual: i64,
    pub abs_error: u64,
}

fn predict_values(
    values: &[f64],
    t_s: usize,
    degree: usize,
    opts: Extrapolation,
) -> Result<(PolyModel, i64), RegressionError> {
    let n = values.len();
    let max = n.saturating_sub(degree + 1);
    if t_s == 0 || t_s > max {
        return Err(RegressionError::BadHoldout { t_s, max });
    }
    let model = fit_prefix(values, t_s, degree)?;
    let predicted = if opts.clamp {
        let so_far = values[n - t_s - 1].floor() as i64;
        extrapolate_final_clamped(&model, so_far, 3 * n as i64)
    } else {
        extrapolate_final(&model)
    };
    Ok((model, predicted))
}

/// Forecast and absolute error for a raw (possibly non-integer) series.
pub fn evaluate_prefix(
    values: &[f64],
    t_s: usize,
    degree: usize,
    opts: Extrapolation,
) -> Result<(i64, f64), RegressionError> {
    let (_, predicted) = predict_values(values, t_s, degree, opts)?;
    let actual = *values.last().expect("checked non-empty");
    Ok((predicted, (predicted as f64 - actual).abs()))
}

/// Fits, extrapolates and scores one team-season.
pub fn evaluate_team(
    series: &SeasonSeries,
    t_s: usize,
    degree: usize,
    opts: Extrapolation,
) -> Result<EvalRecord, RegressionError> {
    let (_, predicted) = predict_values(&series.points_f64(), t_s, degree, opts)?;
    let actual = series.final_points() as i64;
    Ok(EvalRecord {
        team: series.team().to_string(),
        key: series.key().clone(),
        t_s,
        degree,
        predicted,
        actual,
        abs_error: predicted.abs_diff(actual),
    })
}

/// Independent linear slopes over rounds `1..=n/2` and `n/2+1..=n`
/// (original round indices in both halves).
pub fn half_season_slopes_of(values: &[f64]) -> Result<(f64, f64), RegressionError> {
    let n = values.len();
    if n < 6 {
        return Err(RegressionError::InsufficientData {
            available: n,
            degree: 1,
        });
    }
    let half = n / 2;
    let xs: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    let (first, _) = fit_points(&xs[..half], &values[..half], 1)?;
    let (second, _) = fit_points(&xs[half..], &values[half..], 1)?;
    Ok((first[1], second[1]))
}

pub fn half_season_slopes(series: &SeasonSeries) -> Result<(f64, f64), RegressionError> {
    half_season_slopes_of(&series.points_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn key() -> SeasonKey {
        SeasonKey::new("Testland", "T1", "1314", "Test").unwrap()
    }

    #[test]
    fn exact_linear() {
        let values: Vec<f64> = (1..=38).map(|i| 2.0 * i as f64).collect();
        for t_s in 0..30 {
            let m = fit_prefix(&values, t_s, 1).unwrap();
            assert_abs_diff_eq!(m.coeffs[0], 0.0, epsilon = 1e-9);
            assert_abs_diff_eq!(m.coeffs[1], 2.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn exact_quadratic() {
        let values: Vec<f64> = (1..=10).map(|i| (i + i * i) as f64).collect();
        let m = fit_prefix(&values, 0, 2).unwrap();
        for (c, e) in m.coeffs.iter().zip([0.0, 1.0, 1.0]) {
            assert_abs_diff_eq!(*c, e, epsilon = 1e-9);
        }
        assert!(m.rss < 1e-18);
    }

    #[test]
    fn alternating_win_draw_closed_form() {
        // x̄ = 3.5, ȳ = 7.5, Sxy = 33.5, Sxx = 17.5
        let m = fit_prefix(&[3.0, 4.0, 7.0, 8.0, 11.0, 12.0], 0, 1).unwrap();
        assert_abs_diff_eq!(m.coeffs[1], 67.0 / 35.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.coeffs[0], 0.8, epsilon = 1e-12);
        // residuals: y - (0.8 + 67/35 i)
        let rss: f64 = [3.0, 4.0, 7.0, 8.0, 11.0, 12.0]
            .iter()
            .enumerate()
            .map(|(i, y)| (y - 0.8 - 67.0 / 35.0 * (i + 1) as f64).powi(2))
            .sum();
        assert_abs_diff_eq!(m.rss, rss, epsilon = 1e-12);
    }

    #[test]
    fn preconditions() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert!(matches!(fit_prefix(&v, 0, 4), Err(RegressionError::BadDegree(4))));
        assert!(matches!(fit_prefix(&v, 0, 0), Err(RegressionError::BadDegree(0))));
        assert!(matches!(
            fit_prefix(&v, 1, 3),
            Err(RegressionError::InsufficientData { available: 3, degree: 3 })
        ));
        assert!(fit_prefix(&v, 0, 3).is_ok());
        assert!(matches!(
            evaluate_prefix(&v, 0, 1, Extrapolation::default()),
            Err(RegressionError::BadHoldout { .. })
        ));
        assert!(matches!(
            evaluate_prefix(&v, 3, 1, Extrapolation::default()),
            Err(RegressionError::BadHoldout { t_s: 3, max: 2 })
        ));
    }

    #[test]
    fn floor_behaviour() {
        let model = |c0: f64, c1: f64, n: usize| PolyModel {
            degree: 1,
            coeffs: vec![c0, c1],
            train_len: 2,
            n,
            rss: 0.0,
        };
        assert_eq!(extrapolate_final(&model(0.0, 2.0, 38)), 76);
        assert_eq!(extrapolate_final(&model(0.5, 2.0, 10)), 20);
        assert_eq!(extrapolate_final(&model(-10.0, 0.1, 10)), -9);
        assert_eq!(extrapolate_final(&model(0.0, 1.999_999_999_999_9, 38)), 76);
        assert_eq!(extrapolate_final(&model(0.0, 1.9999, 38)), 75);
        assert_eq!(extrapolate_final_clamped(&model(-10.0, 0.1, 10), 4, 30), 4);
        assert_eq!(extrapolate_final_clamped(&model(0.0, 5.0, 10), 4, 30), 30);
    }

    #[test]
    fn all_draws_team_is_exact() {
        let s = SeasonSeries::from_points("D", key(), (1..=34).collect()).unwrap();
        let r = evaluate_team(&s, 10, 1, Extrapolation::default()).unwrap();
        assert_eq!((r.predicted, r.actual, r.abs_error), (34, 34, 0));
    }

    #[test]
    fn two_points_per_round_is_exact() {
        let values: Vec<f64> = (1..=30).map(|i| 2.0 * i as f64).collect();
        let (pred, err) = evaluate_prefix(&values, 5, 1, Extrapolation::default()).unwrap();
        assert_eq!(pred, 60);
        assert_eq!(err, 0.0);
    }

    #[test]
    fn piecewise_half_seasons() {
        // slopes 1.29 then 2.52, rounded to whole points; expected values
        // from scripts/oracle.py (numpy polyfit + floor)
        let values: Vec<f64> = (1..=38)
            .map(|i| {
                if i <= 19 {
                    (1.29 * i as f64).round()
                } else {
                    (1.29 * 19.0 + 2.52 * (i - 19) as f64).round()
                }
            })
            .collect();
        let (pred, err) = evaluate_prefix(&values, 19, 1, Extrapolation::default()).unwrap();
        assert_eq!(pred, 49);
        assert_eq!(err, 23.0);
    }

    #[test]
    fn half_season_examples() {
        let linear: Vec<f64> = (1..=38).map(|i| 2.0 * i as f64).collect();
        let (a, b) = half_season_slopes_of(&linear).unwrap();
        assert_abs_diff_eq!(a, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b, 2.0, epsilon = 1e-12);

        let kink: Vec<u32> = (1..=38).map(|i| if i <= 19 { i } else { 19 + 3 * (i - 19) }).collect();
        let s = SeasonSeries::from_points("K", key(), kink).unwrap();
        let (a, b) = half_season_slopes(&s).unwrap();
        assert_abs_diff_eq!(a, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b, 3.0, epsilon = 1e-12);

        assert!(half_season_slopes_of(&[1.0; 5]).is_err());
    }

    #[test]
    fn clamp_option() {
        // collapsing cubic: huge negative extrapolation gets clamped to points so far
        let mut values: Vec<f64> = (1..=20).map(|i| 3.0 * i as f64).collect();
        values.extend((21..=30).map(|_| 60.0));
        let (raw, _) = evaluate_prefix(&values, 5, 3, Extrapolation::default()).unwrap();
        let (clamped, _) = evaluate_prefix(&values, 5, 3, Extrapolation { clamp: true }).unwrap();
        assert!(raw < 60, "raw {raw}");
        assert_eq!(clamped, 60);
    }

    fn poly_values(coeffs: &[i32], n: usize) -> Vec<f64> {
        (1..=n)
            .map(|i| {
                let x = i as f64;
                coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
            })
            .collect()
    }

    proptest! {
        #[test]
        fn exact_recovery(
            degree in 1usize..=3,
            raw in proptest::collection::vec(-5i32..=5, 4),
            n in 8usize..=50,
        ) {
            let coeffs = &raw[..=degree];
            let values = poly_values(coeffs, n);
            let m = fit_prefix(&values, 0, degree).unwrap();
            for (got, want) in m.coeffs.iter().zip(coeffs) {
                prop_assert!((got - *want as f64).abs() < 1e-9, "{:?} vs {:?}", m.coeffs, coeffs);
            }
        }

        #[test]
        fn degree_nesting(increments in proptest::collection::vec(prop_oneof![Just(0u32), Just(1), Just(3)], 10..46)) {
            let values: Vec<f64> = increments.iter().scan(0u32, |t, i| { *t += i; Some(*t as f64) }).collect();
            let rss: Vec<f64> = (1..=3).map(|d| fit_prefix(&values, 0, d).unwrap().rss).collect();
            let tol = 1e-9 * rss[0].max(1.0);
            prop_assert!(rss[1] <= rss[0] + tol);
            prop_assert!(rss[2] <= rss[1] + tol);
        }

        #[test]
        fn local_optimality(
            increments in proptest::collection::vec(prop_oneof![Just(0u32), Just(1), Just(3)], 10..46),
            degree in 1usize..=3,
        ) {
            let values: Vec<f64> = increments.iter().scan(0u32, |t, i| { *t += i; Some(*t as f64) }).collect();
            let m = fit_prefix(&values, 0, degree).unwrap();
            let xs: Vec<f64> = (1..=values.len()).map(|i| i as f64).collect();
            for k in 0..=degree {
                for eps in [1e-6, -1e-6] {
                    let mut c = m.coeffs.clone();
                    c[k] += eps;
                    let perturbed = rss_of(&c, &xs, &values);
                    prop_assert!(perturbed >= m.rss * (1.0 - 1e-12) - 1e-12);
                }
            }
        }

        #[test]
        fn translation_shifts_intercept_only(
            increments in proptest::collection::vec(prop_oneof![Just(0u32), Just(1), Just(3)], 10..46),
            degree in 1usize..=3,
            shift in -50.0f64..50.0,
        ) {
            let values: Vec<f64> = increments.iter().scan(0u32, |t, i| { *t += i; Some(*t as f64) }).collect();
            let shifted: Vec<f64> = values.iter().map(|v| v + shift).collect();
            let a = fit_prefix(&values, 0, degree).unwrap();
            let b = fit_prefix(&shifted, 0, degree).unwrap();
            prop_assert!((b.coeffs[0] - a.coeffs[0] - shift).abs() < 1e-9);
            for k in 1..=degree {
                prop_assert!((b.coeffs[k] - a.coeffs[k]).abs() < 1e-9);
            }
        }
    }
}
