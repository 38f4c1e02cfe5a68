use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_REPLICATES: usize = 999;
pub const DEFAULT_LEVEL: f64 = 0.95;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BootstrapError {
    #[error("need at least two samples, got {0}")]
    TooFewSamples(usize),
    #[error("all samples are equal; the standard error is zero")]
    DegenerateSample,
    #[error("confidence level must lie in (0, 1), got {0}")]
    BadLevel(f64),
    #[error("at least one bootstrap replicate is required")]
    NoReplicates,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfidenceInterval {
    pub estimate: f64,
    pub lo: f64,
    pub hi: f64,
    pub level: f64,
    pub replicates: usize,
    pub seed: u64,
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, (ss / (n - 1.0)).sqrt() / n.sqrt())
}

/// Empirical quantile at order statistic `(B + 1) q` (1-based), linearly
/// interpolated between neighbours and clamped to the sample range.
fn order_quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = (sorted.len() + 1) as f64 * q;
    if pos <= 1.0 {
        return sorted[0];
    }
    if pos >= sorted.len() as f64 {
        return sorted[sorted.len() - 1];
    }
    let lo = pos.floor();
    let frac = pos - lo;
    let i = lo as usize - 1;
    sorted[i] + frac * (sorted[i + 1] - sorted[i])
}

/// Replicate `b` resamples from stream `b` of a generator keyed by `seed`,
/// so the result does not depend on how replicates are scheduled.
fn replicate_t(samples: &[f64], mean: f64, seed: u64, b: usize) -> Option<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(b as u64);
    let m = samples.len();
    let mut sum = 0.0;
    let mut sq = 0.0;
    let draws: Vec<f64> = (0..m).map(|_| samples[rng.gen_range(0..m)]).collect();
    for &x in &draws {
        sum += x;
    }
    let rmean = sum / m as f64;
    for &x in &draws {
        sq += (x - rmean) * (x - rmean);
    }
    let se = (sq / (m - 1) as f64).sqrt() / (m as f64).sqrt();
    (se > 0.0).then(|| (rmean - mean) / se)
}

/// Studentized (bootstrap-t) interval for the mean.
///
/// Replicates whose resample has zero spread carry no t value and are
/// skipped; `replicates` in the result counts the ones actually used.
pub fn studentized_bootstrap_ci(
    samples: &[f64],
    level: f64,
    replicates: usize,
    seed: u64,
) -> Result<ConfidenceInterval, BootstrapError> {
    if samples.len() < 2 {
        return Err(BootstrapError::TooFewSamples(samples.len()));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(BootstrapError::BadLevel(level));
    }
    if replicates == 0 {
        return Err(BootstrapError::NoReplicates);
    }
    let (mean, se) = mean_and_se(samples);
    if se == 0.0 {
        return Err(BootstrapError::DegenerateSample);
    }

    #[cfg(feature = "parallel")]
    let ts: Vec<Option<f64>> = {
        use rayon::prelude::*;
        (0..replicates)
            .into_par_iter()
            .map(|b| replicate_t(samples, mean, seed, b))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let ts: Vec<Option<f64>> = (0..replicates)
        .map(|b| replicate_t(samples, mean, seed, b))
        .collect();

    let mut ts: Vec<f64> = ts.into_iter().flatten().collect();
    if ts.is_empty() {
        return Err(BootstrapError::DegenerateSample);
    }
    ts.sort_by(f64::total_cmp);
    let alpha = 1.0 - level;
    let t_hi = order_quantile(&ts, 1.0 - alpha / 2.0);
    let t_lo = order_quantile(&ts, alpha / 2.0);
    Ok(ConfidenceInterval {
        estimate: mean,
        lo: mean - t_hi * se,
        hi: mean - t_lo * se,
        level,
        replicates: ts.len(),
        seed,
    })
}
