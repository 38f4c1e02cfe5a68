//! Season files compiled into the library so offline runs always have data.

const BUILTIN: &[(&str, &str, &[u8])] = &[
    ("1314", "D1", include_bytes!("../../fixtures/1314/D1.csv")),
    ("1213", "E0", include_bytes!("../../fixtures/1213/E0.csv")),
    ("1415", "I1", include_bytes!("../../fixtures/1415/I1.csv")),
];

pub fn builtin(season_code: &str, league_code: &str) -> Option<&'static [u8]> {
    BUILTIN
        .iter()
        .find(|(s, l, _)| *s == season_code && *l == league_code)
        .map(|(_, _, bytes)| *bytes)
}
