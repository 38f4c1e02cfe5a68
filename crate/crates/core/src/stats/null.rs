use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::bootstrap::{
    studentized_bootstrap_ci, BootstrapError, ConfidenceInterval, DEFAULT_LEVEL,
    DEFAULT_REPLICATES,
};
use crate::datasource::SeasonKey;
use crate::ingest::SeasonSeries;
use crate::regression::{evaluate_prefix, Extrapolation, RegressionError};

/// Rounds per team and how many of the 425 reference championships had that
/// length.
pub const REFERENCE_LENGTHS: [(usize, u32); 10] = [
    (26, 1),
    (28, 1),
    (30, 24),
    (32, 2),
    (34, 129),
    (36, 60),
    (38, 102),
    (42, 36),
    (44, 1),
    (46, 69),
];

pub const DEFAULT_COUNT: usize = 100_000;
pub const DEFAULT_SEED: u64 = 42;

// Season lengths are drawn from their own generator so that a fixed-length
// run consumes exactly `n` outcome draws per stream.
const LENGTH_SALT: u64 = 0x6c65_6e67_7468_5f6e;
const BOOTSTRAP_SALT: u64 = 0x626f_6f74_7374_7261;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SeasonLength {
    Fixed(usize),
    /// `(rounds, weight)` pairs.
    Mixture(Vec<(usize, u32)>),
}

impl SeasonLength {
    pub fn reference() -> Self {
        SeasonLength::Mixture(REFERENCE_LENGTHS.to_vec())
    }

    fn shortest(&self) -> usize {
        match self {
            SeasonLength::Fixed(n) => *n,
            SeasonLength::Mixture(m) => m.iter().filter(|(_, w)| *w > 0).map(|(n, _)| *n).min().unwrap_or(0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullModelConfig {
    pub count: usize,
    pub season_length: SeasonLength,
    /// `(p_win, p_draw, p_loss)`.
    pub outcome_probs: [f64; 3],
    pub seed: u64,
    pub level: f64,
    pub replicates: usize,
}

impl Default for NullModelConfig {
    fn default() -> Self {
        Self {
            count: DEFAULT_COUNT,
            season_length: SeasonLength::reference(),
            outcome_probs: [1.0 / 3.0; 3],
            seed: DEFAULT_SEED,
            level: DEFAULT_LEVEL,
            replicates: DEFAULT_REPLICATES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NullModelError {
    #[error("series count must be at least 1")]
    EmptyCount,
    #[error("outcome probabilities {0:?} must be non-negative and sum to 1")]
    BadProbabilities([f64; 3]),
    #[error("season length must be positive with at least one positive weight")]
    BadSeasonLength,
    #[error(transparent)]
    Regression(#[from] RegressionError),
    #[error(transparent)]
    Bootstrap(#[from] BootstrapError),
}

impl NullModelConfig {
    pub fn validate(&self) -> Result<(), NullModelError> {
        if self.count == 0 {
            return Err(NullModelError::EmptyCount);
        }
        let p = self.outcome_probs;
        if p.iter().any(|x| !x.is_finite() || *x < 0.0) || (p.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(NullModelError::BadProbabilities(p));
        }
        if self.season_length.shortest() == 0 {
            return Err(NullModelError::BadSeasonLength);
        }
        Ok(())
    }
}

fn length_of(cfg: &NullModelConfig, index: usize) -> usize {
    match &cfg.season_length {
        SeasonLength::Fixed(n) => *n,
        SeasonLength::Mixture(m) => {
            let total: u64 = m.iter().map(|(_, w)| u64::from(*w)).sum();
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ LENGTH_SALT);
            rng.set_stream(index as u64);
            let mut pick = rng.gen_range(0..total);
            for &(n, w) in m {
                if pick < u64::from(w) {
                    return n;
                }
                pick -= u64::from(w);
            }
            unreachable!("pick is below the total weight")
        }
    }
}

/// Cumulative points of synthetic series `index`; stream `index` of a
/// ChaCha8 generator keyed by the seed supplies one uniform per round.
pub fn null_points(cfg: &NullModelConfig, index: usize) -> Vec<u32> {
    let n = length_of(cfg, index);
    let [p_win, p_draw, _] = cfg.outcome_probs;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let mut total = 0;
    (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            total += if u < p_win {
                3
            } else if u < p_win + p_draw {
                1
            } else {
                0
            };
            total
        })
        .collect()
}

pub fn generate_null_series(cfg: &NullModelConfig) -> Result<Vec<SeasonSeries>, NullModelError> {
    cfg.validate()?;
    let key = SeasonKey::new("Null", "NULL", "0001", "Random results").expect("static key is valid");
    Ok((0..cfg.count)
        .map(|i| {
            SeasonSeries::from_points(format!("null-{i:06}"), key.clone(), null_points(cfg, i))
                .expect("increments are 0, 1 or 3")
        })
        .collect())
}

/// Absolute final-total error of the degree-`degree` forecast for every
/// synthetic series, in series order.
pub fn null_model_errors(
    cfg: &NullModelConfig,
    t_s: usize,
    degree: usize,
) -> Result<Vec<u64>, NullModelError> {
    cfg.validate()?;
    let one = |i: usize| -> Result<u64, RegressionError> {
        let values: Vec<f64> = null_points(cfg, i).into_iter().map(f64::from).collect();
        let (_, err) = evaluate_prefix(&values, t_s, degree, Extrapolation::default())?;
        Ok(err as u64)
    };
    #[cfg(feature = "parallel")]
    let out = {
        use rayon::prelude::*;
        (0..cfg.count).into_par_iter().map(one).collect::<Result<Vec<_>, _>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let out = (0..cfg.count).map(one).collect::<Result<Vec<_>, _>>()?;
    Ok(out)
}

/// Mean absolute error of the null forecasts with a studentized bootstrap
/// interval. A sample with no spread yields the zero-width interval at its
/// value.
pub fn null_model_error(
    cfg: &NullModelConfig,
    t_s: usize,
    degree: usize,
) -> Result<ConfidenceInterval, NullModelError> {
    let errors: Vec<f64> = null_model_errors(cfg, t_s, degree)?.into_iter().map(|e| e as f64).collect();
    let seed = cfg.seed ^ BOOTSTRAP_SALT;
    if errors.iter().all(|&e| e == errors[0]) {
        return Ok(ConfidenceInterval {
            estimate: errors[0],
            lo: errors[0],
            hi: errors[0],
            level: cfg.level,
            replicates: 0,
            seed,
        });
    }
    Ok(studentized_bootstrap_ci(&errors, cfg.level, cfg.replicates, seed)?)
}
