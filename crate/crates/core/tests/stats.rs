use league_trend::stats::special::{beta_inc, student_t_cdf};
use league_trend::stats::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use statrs::distribution::{ContinuousCDF, StudentsT};

fn fixed(n: usize, count: usize) -> NullModelConfig {
    NullModelConfig {
        count,
        season_length: SeasonLength::Fixed(n),
        ..NullModelConfig::default()
    }
}

#[test]
fn t_cdf_agrees_with_statrs() {
    for df in [1.0, 2.0, 3.0, 7.0, 15.0, 29.0, 120.0, 1000.0] {
        let dist = StudentsT::new(0.0, 1.0, df).unwrap();
        for i in -40..=40 {
            let t = i as f64 * 0.15;
            let (ours, theirs) = (student_t_cdf(t, df), dist.cdf(t));
            assert!((ours - theirs).abs() < 1e-10, "df={df} t={t}: {ours} vs {theirs}");
        }
    }
}

#[test]
fn incomplete_beta_complement() {
    for (a, b) in [(0.5, 0.5), (2.0, 7.5), (40.0, 0.5), (120.0, 80.0)] {
        for i in 1..20 {
            let x = i as f64 / 20.0;
            let s = beta_inc(a, b, x, 1.0 - x) + beta_inc(b, a, 1.0 - x, x);
            assert!((s - 1.0).abs() < 1e-13, "a={a} b={b} x={x}");
        }
    }
}

#[test]
fn null_model_reference_mean() {
    let errors = null_model_errors(&fixed(38, 1000), 10, 1).unwrap();
    assert_eq!(errors.iter().sum::<u64>(), 4110);
    let ci = null_model_error(&fixed(38, 1000), 10, 1).unwrap();
    assert!((ci.estimate - 4.11).abs() < 1e-12);
    assert!(ci.lo < ci.estimate && ci.estimate < ci.hi);
}

#[test]
fn null_model_is_deterministic() {
    let cfg = NullModelConfig { count: 2000, ..NullModelConfig::default() };
    assert_eq!(null_model_error(&cfg, 10, 1).unwrap(), null_model_error(&cfg, 10, 1).unwrap());
    let other = NullModelConfig { seed: 43, ..cfg.clone() };
    assert_ne!(null_model_errors(&cfg, 10, 1).unwrap(), null_model_errors(&other, 10, 1).unwrap());
}

#[test]
fn mean_final_total_under_uniform_outcomes() {
    let series = generate_null_series(&fixed(38, 10_000)).unwrap();
    let mean = series.iter().map(|s| s.final_points() as f64).sum::<f64>() / series.len() as f64;
    assert!((mean - 38.0 * 4.0 / 3.0).abs() < 0.5, "mean {mean}");
}

#[test]
fn null_error_grows_with_holdout() {
    let cfg = fixed(38, 10_000);
    let means: Vec<f64> = (1..=20)
        .map(|t_s| {
            let e = null_model_errors(&cfg, t_s, 1).unwrap();
            e.iter().sum::<u64>() as f64 / e.len() as f64
        })
        .collect();
    for w in means.windows(2) {
        assert!(w[1] >= w[0], "{means:?}");
    }
    // sublinear: twenty times the holdout, far less than twenty times the error
    assert!(means[19] < 10.0 * means[0]);
}

#[test]
fn bootstrap_coverage_normal_mean() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let trials = 1000;
    let mut covered = 0;
    for trial in 0..trials {
        let xs: Vec<f64> = (0..200).map(|_| StandardNormal.sample(&mut rng)).collect();
        let ci = studentized_bootstrap_ci(&xs, 0.95, 999, trial).unwrap();
        if ci.lo <= 0.0 && 0.0 <= ci.hi {
            covered += 1;
        }
    }
    let rate = covered as f64 / trials as f64;
    assert!((0.92..=0.98).contains(&rate), "coverage {rate}");
}

#[test]
fn more_replicates_move_endpoints_little() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let xs: Vec<f64> = (0..300).map(|_| StandardNormal.sample(&mut rng)).collect();
    let a = studentized_bootstrap_ci(&xs, 0.95, 999, 1).unwrap();
    let b = studentized_bootstrap_ci(&xs, 0.95, 9999, 1).unwrap();
    let se = a.hi - a.lo;
    assert!((a.lo - b.lo).abs() < 0.1 * se && (a.hi - b.hi).abs() < 0.1 * se);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn t_test_direction_symmetry(
        pairs in proptest::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 2..40)
    ) {
        let a: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let b: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        let less = paired_t_test(&a, &b, Alternative::Less).unwrap();
        let greater = paired_t_test(&b, &a, Alternative::Greater).unwrap();
        prop_assert_eq!(less.p_value, greater.p_value);
        let two = paired_t_test(&a, &b, Alternative::TwoSided).unwrap();
        let two_rev = paired_t_test(&b, &a, Alternative::TwoSided).unwrap();
        prop_assert_eq!(two.p_value, two_rev.p_value);
    }

    #[test]
    fn ci_brackets_estimate(xs in proptest::collection::vec(0.0f64..20.0, 5..60), seed in any::<u64>()) {
        prop_assume!(xs.iter().any(|&x| x != xs[0]));
        let ci = studentized_bootstrap_ci(&xs, 0.9, 199, seed).unwrap();
        prop_assert!(ci.lo <= ci.hi);
        prop_assert!(ci.lo <= ci.estimate + 1e-9 && ci.estimate <= ci.hi + 1e-9);
    }
}
