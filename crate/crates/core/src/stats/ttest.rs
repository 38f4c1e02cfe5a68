use serde::Serialize;

use super::special::{student_t_cdf, student_t_sf};

/// Smallest p-value reported as a number; anything below is floored and flagged.
pub const P_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Alternative {
    /// Mean of `a - b` is below zero.
    Less,
    /// Mean of `a - b` is above zero.
    Greater,
    TwoSided,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TTestError {
    #[error("samples have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("need at least two pairs, got {0}")]
    TooFewPairs(usize),
    #[error("all paired differences are zero")]
    ZeroVariance,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TTest {
    pub alternative: Alternative,
    pub statistic: f64,
    pub df: usize,
    pub mean_difference: f64,
    /// Never below [`P_FLOOR`].
    pub p_value: f64,
    /// The exact p-value was below [`P_FLOOR`] (or the statistic was infinite).
    pub underflow: bool,
}

/// Paired t-test on `d_i = a_i - b_i`.
///
/// A constant nonzero difference has zero spread and an infinite statistic;
/// it is reported with `underflow` set instead of as an error.
pub fn paired_t_test(a: &[f64], b: &[f64], alternative: Alternative) -> Result<TTest, TTestError> {
    if a.len() != b.len() {
        return Err(TTestError::LengthMismatch(a.len(), b.len()));
    }
    let n = a.len();
    if n < 2 {
        return Err(TTestError::TooFewPairs(n));
    }
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    if d.iter().all(|&v| v == 0.0) {
        return Err(TTestError::ZeroVariance);
    }
    let mean = d.iter().sum::<f64>() / n as f64;
    let ss: f64 = d.iter().map(|v| (v - mean) * (v - mean)).sum();
    let se = (ss / (n - 1) as f64).sqrt() / (n as f64).sqrt();
    let t = if se > 0.0 {
        mean / se
    } else if mean > 0.0 {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    };
    let df = (n - 1) as f64;
    let raw = match alternative {
        Alternative::Less => student_t_cdf(t, df),
        Alternative::Greater => student_t_sf(t, df),
        Alternative::TwoSided => (2.0 * student_t_sf(t.abs(), df)).min(1.0),
    };
    let underflow = raw < P_FLOOR || (t.is_infinite() && raw < 0.5);
    Ok(TTest {
        alternative,
        statistic: t,
        df: n - 1,
        mean_difference: mean,
        p_value: if underflow { P_FLOOR } else { raw },
        underflow,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: [f64; 5] = [1.0, 2.0, 3.0, 4.0, 5.0];
    const B: [f64; 5] = [2.0, 2.0, 4.0, 4.0, 6.0];

    #[test]
    fn reference_values() {
        let two = paired_t_test(&A, &B, Alternative::TwoSided).unwrap();
        assert!((two.statistic + 2.449_489_742_783_178).abs() < 1e-12);
        assert_eq!(two.df, 4);
        assert!((two.p_value - 0.070_483_996_910_219_93).abs() < 1e-12);
        let less = paired_t_test(&A, &B, Alternative::Less).unwrap();
        assert!((less.p_value - 0.035_241_998_455_109_97).abs() < 1e-12);
        let greater = paired_t_test(&A, &B, Alternative::Greater).unwrap();
        assert!((greater.p_value - 0.964_758_001_544_89).abs() < 1e-12);
        assert!(!two.underflow);
    }

    #[test]
    fn errors() {
        assert_eq!(paired_t_test(&A, &A, Alternative::TwoSided), Err(TTestError::ZeroVariance));
        assert_eq!(
            paired_t_test(&A, &B[..4], Alternative::TwoSided),
            Err(TTestError::LengthMismatch(5, 4))
        );
        assert_eq!(paired_t_test(&[1.0], &[2.0], Alternative::Less), Err(TTestError::TooFewPairs(1)));
    }

    #[test]
    fn constant_shift_is_flagged() {
        let a = [2.0; 10];
        let b = [1.0; 10];
        let r = paired_t_test(&a, &b, Alternative::Greater).unwrap();
        assert!(r.statistic.is_infinite());
        assert!(r.underflow);
        assert!(r.p_value < 1e-9);
        let r = paired_t_test(&a, &b, Alternative::Less).unwrap();
        assert_eq!(r.p_value, 1.0);
        assert!(!r.underflow);
        assert!(paired_t_test(&a, &b, Alternative::TwoSided).unwrap().underflow);
    }

    #[test]
    fn tiny_p_is_floored() {
        let a: Vec<f64> = (0..200).map(|i| 10.0 + (i % 3) as f64 * 1e-3).collect();
        let b = vec![0.0; 200];
        let r = paired_t_test(&a, &b, Alternative::Greater).unwrap();
        assert!(r.underflow);
        assert_eq!(r.p_value, P_FLOOR);
    }
}
