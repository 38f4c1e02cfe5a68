//! Machine-readable list of championships: one
//! `country,league_code,season_code,display_name` entry per line.

use std::path::Path;

use super::key::SeasonKey;

const DEFAULT_MANIFEST: &str = include_str!("../../data/manifest.txt");
const FIXTURE_MANIFEST: &str = include_str!("../../fixtures/manifest.txt");

#[derive(Debug, thiserror::Error)]
pub enum ManifestError {
    #[error("manifest line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("cannot read manifest {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Parses manifest text. Blank lines and `#` comments are ignored; the
/// result is sorted by (country, league, season) with duplicates removed.
pub fn parse_manifest(text: &str) -> Result<Vec<SeasonKey>, ManifestError> {
    let mut keys = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = |reason: String| ManifestError::Malformed {
            line: idx + 1,
            reason,
        };
        let fields: Vec<&str> = line.splitn(4, ',').map(str::trim).collect();
        if fields.len() < 3 {
            return Err(malformed(format!(
                "expected country,league_code,season_code[,display_name], got {line:?}"
            )));
        }
        let display = fields.get(3).copied().unwrap_or(fields[1]);
        let key = SeasonKey::new(fields[0], fields[1], fields[2], display)
            .map_err(|e| malformed(e.to_string()))?;
        keys.push(key);
    }
    keys.sort();
    keys.dedup();
    Ok(keys)
}

pub fn list_manifest(path: &Path) -> Result<Vec<SeasonKey>, ManifestError> {
    let text = std::fs::read_to_string(path).map_err(|source| ManifestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_manifest(&text)
}

pub fn write_manifest(keys: &[SeasonKey]) -> String {
    let mut out = String::from("# country,league_code,season_code,display_name\n");
    for k in keys {
        out.push_str(&format!(
            "{},{},{},{}\n",
            k.country, k.league_code, k.season_code, k.display_name
        ));
    }
    out
}

/// The full 22-division, 1993/94–2013/14 championship list (425 entries).
pub fn default_manifest() -> Vec<SeasonKey> {
    parse_manifest(DEFAULT_MANIFEST).expect("bundled manifest is well-formed")
}

/// The seasons shipped as offline fixtures.
pub fn fixture_manifest() -> Vec<SeasonKey> {
    parse_manifest(FIXTURE_MANIFEST).expect("bundled fixture manifest is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_manifest() {
        assert!(parse_manifest("").unwrap().is_empty());
        assert!(parse_manifest("# only a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn single_entry() {
        let keys = parse_manifest("Italy,I1,1314").unwrap();
        assert_eq!(keys.len(), 1);
        assert_eq!(keys[0].league_code, "I1");
        assert_eq!(keys[0].season_code, "1314");
        assert_eq!(keys[0].display_name, "I1");
    }

    #[test]
    fn default_has_425_championships() {
        let keys = default_manifest();
        assert_eq!(keys.len(), 425);
        let divisions: std::collections::BTreeSet<_> =
            keys.iter().map(|k| k.league_code.clone()).collect();
        assert_eq!(divisions.len(), 22);
    }

    #[test]
    fn malformed_reports_line() {
        let err = parse_manifest("# header\nItaly,I1,1314,Serie A\nItaly,I1,1399,Serie A\n")
            .unwrap_err();
        match err {
            ManifestError::Malformed { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_manifest("Italy;I1;1314"),
            Err(ManifestError::Malformed { line: 1, .. })
        ));
    }

    #[test]
    fn display_name_may_contain_commas() {
        let keys = parse_manifest("Spain,SP1,0304,Liga, Primera Division").unwrap();
        assert_eq!(keys[0].display_name, "Liga, Primera Division");
    }

    fn arb_key() -> impl Strategy<Value = SeasonKey> {
        (
            "[A-Z][a-z]{2,8}",
            "[A-Z]{1,2}[0-9]",
            0u32..100,
            "[A-Za-z][A-Za-z ,]{0,12}[A-Za-z]",
        )
            .prop_map(|(country, league, yy, name)| {
                let code = format!("{:02}{:02}", yy, (yy + 1) % 100);
                SeasonKey::new(country, league, code, name).unwrap()
            })
    }

    proptest! {
        #[test]
        fn round_trip(keys in proptest::collection::vec(arb_key(), 0..30)) {
            let mut expected = keys.clone();
            expected.sort();
            expected.dedup();
            let parsed = parse_manifest(&write_manifest(&expected)).unwrap();
            prop_assert_eq!(parsed, expected);
        }
    }
}
