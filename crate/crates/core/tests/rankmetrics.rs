mod common;

use common::{fixture, fixture_championships, standing_from_ranks};
use itertools::Itertools;
use league_trend::ingest::final_standing;
use league_trend::rankmetrics::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// (team, actual final rank, rank predicted after round 20)
const SERIE_A: [(&str, usize, usize); 20] = [
    ("Atalanta", 15, 14),
    ("Cagliari", 17, 18),
    ("Cesena", 19, 19),
    ("Chievo", 18, 16),
    ("Empoli", 16, 13),
    ("Fiorentina", 6, 8),
    ("Genoa", 7, 5),
    ("Hellas", 14, 12),
    ("Inter", 11, 9),
    ("Juventus", 1, 1),
    ("Lazio", 4, 3),
    ("Milan", 10, 6),
    ("Napoli", 3, 4),
    ("Palermo", 8, 15),
    ("Parma", 20, 20),
    ("Roma", 2, 2),
    ("Sampdoria", 5, 7),
    ("Sassuolo", 12, 17),
    ("Torino", 13, 11),
    ("Udinese", 9, 10),
];

const QUALIFIERS: [(&str, usize, usize); 10] = [
    ("Argentina", 4, 1),
    ("Bolivia", 9, 9),
    ("Brazil", 1, 2),
    ("Chile", 2, 4),
    ("Colombia", 7, 5),
    ("Ecuador", 6, 7),
    ("Paraguay", 3, 6),
    ("Peru", 10, 10),
    ("Uruguay", 5, 3),
    ("Venezuela", 8, 8),
];

type Ranks = Vec<(&'static str, usize)>;

fn split(rows: &[(&'static str, usize, usize)]) -> (Ranks, Ranks) {
    (
        rows.iter().map(|r| (r.0, r.1)).collect(),
        rows.iter().map(|r| (r.0, r.2)).collect(),
    )
}

#[test]
fn serie_a_round_twenty_example() {
    let (a, p) = split(&SERIE_A);
    let r = displacement(&standing_from_ranks(&a), &standing_from_ranks(&p)).unwrap();
    assert_eq!(r.total, 38);
    assert_eq!(r.max, 200);
    assert_eq!(r.normalized, 0.19);
    assert_eq!(r.per_team["Palermo"], 7);
    assert_eq!(r.per_team["Juventus"], 0);
}

#[test]
fn qualifiers_example() {
    let (a, p) = split(&QUALIFIERS);
    let r = displacement(&standing_from_ranks(&a), &standing_from_ranks(&p)).unwrap();
    assert_eq!((r.total, r.max, r.teams), (14, 50, 10));
    assert_eq!(r.normalized, 0.28);
}

#[test]
fn mismatched_team_sets() {
    let a = standing_from_ranks(&[("A", 1), ("B", 2), ("C", 3)]);
    let p = standing_from_ranks(&[("A", 1), ("B", 2), ("D", 3)]);
    assert_eq!(
        displacement(&a, &p),
        Err(DistanceError::TeamSetMismatch {
            only_in_actual: vec!["C".into()],
            only_in_predicted: vec!["D".into()],
        })
    );
}

#[test]
fn two_teams_swapped() {
    let a = standing_from_ranks(&[("A", 1), ("B", 2)]);
    let p = standing_from_ranks(&[("A", 2), ("B", 1)]);
    let r = displacement(&a, &p).unwrap();
    assert_eq!((r.total, r.normalized), (2, 1.0));
}

#[test]
fn exhaustive_small_groups() {
    // (max D, total D over S_m)
    let oracle = [(2, 2), (4, 16), (8, 120), (12, 960), (18, 8400), (24, 80640)];
    for (m, &(max_d, total_d)) in (2..=7).zip(oracle.iter()) {
        let id: Vec<usize> = (1..=m).collect();
        let mut total = 0u64;
        let mut seen_max = 0u64;
        let mut count = 0u64;
        for p in id.iter().copied().permutations(m) {
            let d = footrule(&id, &p).unwrap();
            assert!(d <= max_displacement(m));
            seen_max = seen_max.max(d);
            total += d;
            count += 1;
        }
        assert_eq!(seen_max, max_displacement(m));
        assert_eq!(seen_max, max_d);
        assert_eq!(total, total_d);
        // mean d = total / (m! * maxD) equals (m^2-1)/(3 maxD) exactly
        assert_eq!(3 * total, count * (m as u64 * m as u64 - 1));
        let mean = total as f64 / count as f64 / max_displacement(m) as f64;
        assert!((mean - expected_random_distance(m)).abs() < 1e-15);
    }
}

#[test]
fn monte_carlo_expected_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in [10usize, 18, 20, 46] {
        let id: Vec<usize> = (0..m).collect();
        let trials = 20_000;
        let mut acc = 0.0;
        for _ in 0..trials {
            let mut p = id.clone();
            p.shuffle(&mut rng);
            acc += footrule(&id, &p).unwrap() as f64 / max_displacement(m) as f64;
        }
        let mean = acc / trials as f64;
        assert!((mean - expected_random_distance(m)).abs() < 0.005, "m={m} mean={mean}");
    }
}

#[test]
fn fixture_tables_match_oracle() {
    let oracle: [(&str, [u64; 20]); 3] = [
        ("D1", [22, 24, 24, 24, 30, 32, 36, 38, 36, 38, 38, 38, 40, 42, 40, 40, 38, 38, 38, 44]),
        ("E0", [30, 32, 34, 36, 36, 36, 40, 40, 40, 46, 46, 50, 52, 60, 60, 60, 60, 58, 58, 56]),
        ("I1", [20, 20, 22, 26, 28, 30, 30, 34, 36, 42, 44, 44, 44, 46, 46, 48, 48, 50, 54, 58]),
    ];
    for (league, want) in oracle {
        let c = fixture(league);
        let actual = final_standing(&c.series).unwrap();
        for (t_s, &d) in (1..=20).zip(want.iter()) {
            let pred = predict_final_standing(&c, t_s, 1).unwrap();
            let r = displacement(&actual, &pred.standing).unwrap();
            assert_eq!(r.total, d, "{league} t_s={t_s}");
        }
    }
    assert_eq!(perfect_prediction_count(&fixture_championships(), 1..=20).unwrap(), 0);
}

fn perm(max_m: usize) -> impl Strategy<Value = Vec<usize>> {
    (2..=max_m).prop_flat_map(|m| Just((1..=m).collect::<Vec<_>>()).prop_shuffle())
}

fn perms(k: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    (2usize..=46).prop_flat_map(move |m| {
        proptest::collection::vec(Just((1..=m).collect::<Vec<_>>()).prop_shuffle(), k)
    })
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i - 1]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_500))]

    #[test]
    fn identity_is_zero(p in perm(46)) {
        prop_assert_eq!(footrule(&p, &p).unwrap(), 0);
    }

    #[test]
    fn distance_is_symmetric(v in perms(2)) {
        prop_assert_eq!(footrule(&v[0], &v[1]).unwrap(), footrule(&v[1], &v[0]).unwrap());
    }

    #[test]
    fn triangle_inequality(v in perms(3)) {
        let ab = footrule(&v[0], &v[1]).unwrap();
        let bc = footrule(&v[1], &v[2]).unwrap();
        let ac = footrule(&v[0], &v[2]).unwrap();
        prop_assert!(ac <= ab + bc);
    }

    #[test]
    fn relabelling_teams_changes_nothing(v in perms(3)) {
        // v[2] renames the teams: compare tau_a∘sigma with tau_b∘sigma
        let a = compose(&v[0], &v[2]);
        let b = compose(&v[1], &v[2]);
        prop_assert_eq!(footrule(&a, &b).unwrap(), footrule(&v[0], &v[1]).unwrap());
    }

    #[test]
    fn reversal_is_maximal(m in 2usize..=46) {
        let id: Vec<usize> = (1..=m).collect();
        let rev: Vec<usize> = (1..=m).rev().collect();
        prop_assert_eq!(footrule(&id, &rev).unwrap(), max_displacement(m));
    }

    #[test]
    fn normalized_in_unit_interval(v in perms(2)) {
        let d = footrule(&v[0], &v[1]).unwrap() as f64 / max_displacement(v[0].len()) as f64;
        prop_assert!((0.0..=1.0).contains(&d));
    }
}
