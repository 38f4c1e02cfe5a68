use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::ingest::Standing;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistanceError {
    #[error("standings cover different teams (only in actual: {only_in_actual:?}; only in predicted: {only_in_predicted:?})")]
    TeamSetMismatch {
        only_in_actual: Vec<String>,
        only_in_predicted: Vec<String>,
    },
    #[error("permutations have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("at least two teams are required")]
    TooFewTeams,
}

/// Total absolute rank displacement between two standings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceReport {
    /// `D = sum_i |tau_R(i) - tau_S(i)|`.
    pub total: u64,
    /// `floor(m^2 / 2)`.
    pub max: u64,
    /// `D / max`, in `[0, 1]`.
    pub normalized: f64,
    pub teams: usize,
    pub per_team: BTreeMap<String, u64>,
}

/// Largest possible footrule distance between two rankings of `m` items.
pub fn max_displacement(m: usize) -> u64 {
    (m as u64 * m as u64) / 2
}

/// Mean normalized distance between the identity and a uniformly random
/// permutation of `m` items: `(m^2 - 1) / (3 * floor(m^2 / 2))`, which is
/// exactly 2/3 for odd `m` and `2/3 - 2/(3 m^2)` for even `m`.
pub fn expected_random_distance(m: usize) -> f64 {
    let m2 = (m * m) as f64;
    (m2 - 1.0) / (3.0 * max_displacement(m) as f64)
}

/// Footrule distance between two rank vectors of equal length.
pub fn footrule(a: &[usize], b: &[usize]) -> Result<u64, DistanceError> {
    if a.len() != b.len() {
        return Err(DistanceError::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).map(|(&x, &y)| x.abs_diff(y) as u64).sum())
}

pub fn displacement(actual: &Standing, predicted: &Standing) -> Result<DistanceReport, DistanceError> {
    let a: BTreeSet<&String> = actual.tau().keys().collect();
    let p: BTreeSet<&String> = predicted.tau().keys().collect();
    if a != p {
        return Err(DistanceError::TeamSetMismatch {
            only_in_actual: a.difference(&p).map(|s| s.to_string()).collect(),
            only_in_predicted: p.difference(&a).map(|s| s.to_string()).collect(),
        });
    }
    let m = actual.len();
    if m < 2 {
        return Err(DistanceError::TooFewTeams);
    }
    let per_team: BTreeMap<String, u64> = actual
        .tau()
        .iter()
        .map(|(team, &ra)| {
            let rp = predicted.tau()[team];
            (team.clone(), ra.abs_diff(rp) as u64)
        })
        .collect();
    let total = per_team.values().sum();
    let max = max_displacement(m);
    Ok(DistanceReport {
        total,
        max,
        normalized: total as f64 / max as f64,
        teams: m,
        per_team,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maxima() {
        assert_eq!(max_displacement(20), 200);
        assert_eq!(max_displacement(2), 2);
        assert_eq!(max_displacement(7), 24);
        assert_eq!(max_displacement(10), 50);
    }

    #[test]
    fn expectations() {
        assert_eq!(expected_random_distance(5), 24.0 / 36.0);
        assert!((expected_random_distance(5) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(expected_random_distance(4), 15.0 / 24.0);
        assert!((expected_random_distance(10) - 0.66).abs() < 1e-15);
        for m in (3..40).step_by(2) {
            assert!((expected_random_distance(m) - 2.0 / 3.0).abs() < 1e-15);
        }
        for m in (2..40).step_by(2) {
            let eps = 2.0 / (3.0 * (m * m) as f64);
            assert!((expected_random_distance(m) - (2.0 / 3.0 - eps)).abs() < 1e-15);
        }
    }

    #[test]
    fn footrule_lengths() {
        assert_eq!(footrule(&[1, 2, 3], &[3, 2, 1]).unwrap(), 4);
        assert!(footrule(&[1, 2], &[1]).is_err());
    }
}
