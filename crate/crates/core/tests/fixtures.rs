mod common;

use common::{fixture, fixture_championships};
use league_trend::datasource::{builtin_fixture, fixture_manifest};
use league_trend::ingest::{final_standing, parse_matches, MatchResult};
use league_trend::regression::{evaluate_team, Extrapolation};

#[test]
fn row_counts() {
    for (league, season, rows, matches) in [("D1", "1314", 306, 306), ("E0", "1213", 382, 380), ("I1", "1415", 380, 380)] {
        let parsed = parse_matches(builtin_fixture(season, league).unwrap(), league).unwrap();
        assert_eq!(parsed.matches.len(), matches, "{league}");
        assert_eq!(parsed.data_rows(), rows, "{league}");
        assert_eq!(parsed.skipped.len(), rows - matches);
    }
}

#[test]
fn points_are_conserved() {
    for (league, total, draws) in [("D1", 858, 60), ("E0", 1058, 82), ("I1", 1058, 82)] {
        let c = fixture(league);
        let season = fixture_manifest().into_iter().find(|k| k.league_code == league).unwrap();
        let parsed = parse_matches(builtin_fixture(&season.season_code, league).unwrap(), league).unwrap();
        let d = parsed.matches.iter().filter(|m| m.result == MatchResult::Draw).count();
        assert_eq!(d, draws);
        assert_eq!(3 * (parsed.matches.len() - d) + 2 * d, total);
        let sum: u32 = c.series.values().map(|s| s.final_points()).sum();
        assert_eq!(sum as usize, total);
        assert!(c.warnings.is_empty());
    }
}

#[test]
fn final_tables() {
    let want: [(&str, &[(&str, u32)]); 3] = [
        ("D1", &[
            ("1. FC Mühlburg", 74), ("SC Lindenfeld", 63), ("Hansa Nordkap", 59), ("FC Rheinufer", 58),
            ("Germania Seeburg", 57), ("SpVgg Kirchberg", 53), ("Union Steinach", 53), ("Borussia Talbach", 52),
            ("Rot-Weiss Ostdorf", 50), ("VfL Hohenstein", 49), ("Viktoria Hainfeld", 46), ("SV Bergheim", 45),
            ("VfB Grünwalde", 41), ("Fortuna Küstenstadt", 41), ("Alemannia Felsheim", 40),
            ("Eintracht Waldau", 32), ("TSV Altmühl", 26), ("Kickers Auental", 19),
        ]),
        ("E0", &[
            ("Kingsport", 85), ("Queensbury", 68), ("Glenbrook", 68), ("Castleford Rovers", 68),
            ("Redcastle", 68), ("Marshfield", 66), ("Northam City", 52), ("Ironbridge", 52), ("Fairhaven", 52),
            ("Port Ellis", 51), ("Blackmere", 51), ("Stonehill", 50), ("Oakridge", 50), ("Thornbury", 50),
            ("Westford Albion", 44), ("Dunmore", 41), ("Longmoor", 40), ("Hartley United", 40),
            ("Ashbourne", 32), ("Eastwick", 30),
        ]),
        ("I1", &[
            ("Borgovecchio", 81), ("Orvella", 77), ("Calanca", 73), ("Lagoscuro", 69), ("Quercia", 65),
            ("Umbriano", 64), ("Lucentina", 64), ("Valdorso", 63), ("Fiumelungo", 56), ("Zafferana", 55),
            ("Verbena", 53), ("Aurora", 53), ("Montebruno", 48), ("Sanmarco", 39), ("Granvalle", 38),
            ("Novaterra", 38), ("Torrealta", 37), ("Rivabella", 30), ("Pietrarossa", 28), ("Dorasco", 27),
        ]),
    ];
    for (league, rows) in want {
        let c = fixture(league);
        let table = final_standing(&c.series).unwrap();
        let names: Vec<&str> = rows.iter().map(|r| r.0).collect();
        assert_eq!(table.ordered_teams(), names.as_slice(), "{league}");
        for (team, pts) in rows {
            assert_eq!(c.series[*team].final_points(), *pts, "{team}");
        }
        assert_eq!(c.min_rounds(), c.max_rounds());
        assert_eq!(c.max_rounds(), 2 * (c.team_count() - 1));
    }
}

#[test]
fn mean_errors_per_holdout() {
    // mean |T̄_n - T_n| over the 58 fixture team-seasons, degrees 1..=3
    let want: [(usize, [f64; 3]); 5] = [
        (1, [2.6207, 2.1724, 2.3103]),
        (2, [3.0172, 2.5862, 3.1034]),
        (5, [3.8448, 3.8621, 5.1034]),
        (10, [5.6034, 8.2759, 17.5345]),
        (20, [9.1207, 28.4138, 94.931]),
    ];
    let champs = fixture_championships();
    for (t_s, means) in want {
        for (degree, want) in (1..=3).zip(means) {
            let errs: Vec<u64> = champs
                .iter()
                .flat_map(|c| c.series.values())
                .map(|s| evaluate_team(s, t_s, degree, Extrapolation::default()).unwrap().abs_error)
                .collect();
            assert_eq!(errs.len(), 58);
            let mean = errs.iter().sum::<u64>() as f64 / 58.0;
            assert!((mean - want).abs() < 1e-4, "t_s={t_s} degree={degree}: {mean} vs {want}");
        }
    }
}
