use std::borrow::Cow;
use std::collections::HashMap;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatchResult {
    HomeWin,
    Draw,
    AwayWin,
}

impl MatchResult {
    pub fn from_goals(home: u32, away: u32) -> Self {
        use std::cmp::Ordering::*;
        match home.cmp(&away) {
            Greater => MatchResult::HomeWin,
            Equal => MatchResult::Draw,
            Less => MatchResult::AwayWin,
        }
    }

    fn from_code(code: &str) -> Option<Self> {
        match code.trim() {
            "H" => Some(MatchResult::HomeWin),
            "D" => Some(MatchResult::Draw),
            "A" => Some(MatchResult::AwayWin),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchRecord {
    pub division: String,
    pub date: NaiveDate,
    pub home: String,
    pub away: String,
    pub home_goals: u32,
    pub away_goals: u32,
    pub result: MatchResult,
}

impl MatchRecord {
    /// Builds a record, deriving the result from the score. Returns `None`
    /// when a team plays itself.
    pub fn new(
        division: impl Into<String>,
        date: NaiveDate,
        home: impl Into<String>,
        away: impl Into<String>,
        home_goals: u32,
        away_goals: u32,
    ) -> Option<Self> {
        let home = home.into();
        let away = away.into();
        if home == away {
            return None;
        }
        Some(Self {
            division: division.into(),
            date,
            home,
            away,
            home_goals,
            away_goals,
            result: MatchResult::from_goals(home_goals, away_goals),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SkipReason {
    BlankTeam,
    BadGoals,
    BadDate,
    SameTeam,
    ResultMismatch,
    Malformed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedRow {
    /// 1-based line number in the source file.
    pub line: u64,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, Default)]
pub struct ParsedMatches {
    pub matches: Vec<MatchRecord>,
    pub skipped: Vec<SkippedRow>,
}

impl ParsedMatches {
    pub fn data_rows(&self) -> usize {
        self.matches.len() + self.skipped.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("file has no data rows")]
    EmptyFile,
    #[error("required column(s) missing: {}", .0.join(", "))]
    HeaderMissing(Vec<&'static str>),
    #[error("alias file line {line}: expected `variant<TAB>canonical`")]
    AliasMalformed { line: usize },
}

/// Trims and collapses runs of internal whitespace to a single space.
pub fn canonical_name(raw: &str) -> String {
    raw.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Maps spelling variants of team names onto one canonical form.
#[derive(Debug, Clone, Default)]
pub struct AliasTable {
    map: HashMap<String, String>,
}

impl AliasTable {
    pub fn from_tsv(text: &str) -> Result<Self, ParseError> {
        let mut map = HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (variant, canonical) = line
                .split_once('\t')
                .ok_or(ParseError::AliasMalformed { line: idx + 1 })?;
            let (variant, canonical) = (canonical_name(variant), canonical_name(canonical));
            if variant.is_empty() || canonical.is_empty() {
                return Err(ParseError::AliasMalformed { line: idx + 1 });
            }
            map.insert(variant, canonical);
        }
        Ok(Self { map })
    }

    pub fn canonical(&self, raw: &str) -> String {
        let name = canonical_name(raw);
        match self.map.get(&name) {
            Some(c) => c.clone(),
            None => name,
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// UTF-8 when valid (BOM stripped), Windows-1252 otherwise.
pub fn decode_text(raw: &[u8]) -> Cow<'_, str> {
    let raw = raw.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(raw);
    match std::str::from_utf8(raw) {
        Ok(s) => Cow::Borrowed(s),
        Err(_) => encoding_rs::WINDOWS_1252.decode_without_bom_handling(raw).0,
    }
}

/// Accepts `dd/mm/yy` and `dd/mm/yyyy`; two-digit years pivot at 70.
pub fn parse_date(s: &str) -> Option<NaiveDate> {
    let mut parts = s.trim().split('/');
    let day: u32 = parts.next()?.trim().parse().ok()?;
    let month: u32 = parts.next()?.trim().parse().ok()?;
    let year_raw = parts.next()?.trim();
    if parts.next().is_some() {
        return None;
    }
    let year: i32 = match year_raw.len() {
        2 => {
            let yy: i32 = year_raw.parse().ok()?;
            if yy >= 70 {
                1900 + yy
            } else {
                2000 + yy
            }
        }
        4 => year_raw.parse().ok()?,
        _ => return None,
    };
    NaiveDate::from_ymd_opt(year, month, day)
}

struct Columns {
    div: Option<usize>,
    date: usize,
    home: usize,
    away: usize,
    home_goals: usize,
    away_goals: usize,
    result: Option<usize>,
}

impl Columns {
    fn locate(headers: &csv::StringRecord) -> Result<Self, ParseError> {
        let find = |names: &[&str]| {
            headers
                .iter()
                .position(|h| names.iter().any(|n| h.trim().trim_start_matches('\u{feff}') == *n))
        };
        let required: [(&'static str, &[&str]); 7] = [
            ("Div", &["Div"]),
            ("Date", &["Date"]),
            ("HomeTeam", &["HomeTeam", "HT", "Home"]),
            ("AwayTeam", &["AwayTeam", "AT", "Away"]),
            ("FTHG", &["FTHG", "HG"]),
            ("FTAG", &["FTAG", "AG"]),
            ("FTR", &["FTR", "Res"]),
        ];
        let found: Vec<Option<usize>> = required.iter().map(|(_, alts)| find(alts)).collect();
        let missing: Vec<&'static str> = required
            .iter()
            .zip(&found)
            .filter(|(_, f)| f.is_none())
            .map(|((name, _), _)| *name)
            .collect();
        if !missing.is_empty() {
            return Err(ParseError::HeaderMissing(missing));
        }
        Ok(Self {
            div: found[0],
            date: found[1].unwrap(),
            home: found[2].unwrap(),
            away: found[3].unwrap(),
            home_goals: found[4].unwrap(),
            away_goals: found[5].unwrap(),
            result: found[6],
        })
    }
}

pub fn parse_matches(raw: &[u8], division_hint: &str) -> Result<ParsedMatches, ParseError> {
    parse_matches_with_aliases(raw, division_hint, &AliasTable::default())
}

/// Parses a match-results CSV. Malformed rows are skipped and listed in
/// [`ParsedMatches::skipped`], so `matches + skipped` always equals the
/// number of data rows.
pub fn parse_matches_with_aliases(
    raw: &[u8],
    division_hint: &str,
    aliases: &AliasTable,
) -> Result<ParsedMatches, ParseError> {
    let text = decode_text(raw);
    if text.trim().is_empty() {
        return Err(ParseError::EmptyFile);
    }
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|_| ParseError::HeaderMissing(vec!["Div", "Date", "HomeTeam", "AwayTeam"]))?
        .clone();
    let cols = Columns::locate(&headers)?;

    let mut out = ParsedMatches::default();
    let mut record = csv::StringRecord::new();
    loop {
        let line = reader.position().line() + 1;
        match reader.read_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {}
            Err(_) => {
                out.skipped.push(SkippedRow {
                    line,
                    reason: SkipReason::Malformed,
                });
                continue;
            }
        }
        let line = record.position().map_or(line, |p| p.line());
        match parse_row(&record, &cols, division_hint, aliases) {
            Ok(m) => out.matches.push(m),
            Err(reason) => out.skipped.push(SkippedRow { line, reason }),
        }
    }
    if out.data_rows() == 0 {
        return Err(ParseError::EmptyFile);
    }
    Ok(out)
}

fn parse_row(
    record: &csv::StringRecord,
    cols: &Columns,
    division_hint: &str,
    aliases: &AliasTable,
) -> Result<MatchRecord, SkipReason> {
    let field = |i: usize| record.get(i).unwrap_or("").trim();
    let home = aliases.canonical(field(cols.home));
    let away = aliases.canonical(field(cols.away));
    if home.is_empty() || away.is_empty() {
        return Err(SkipReason::BlankTeam);
    }
    let home_goals: u32 = field(cols.home_goals).parse().map_err(|_| SkipReason::BadGoals)?;
    let away_goals: u32 = field(cols.away_goals).parse().map_err(|_| SkipReason::BadGoals)?;
    let date = parse_date(field(cols.date)).ok_or(SkipReason::BadDate)?;
    let division = cols
        .div
        .map(field)
        .filter(|d| !d.is_empty())
        .unwrap_or(division_hint);
    let m = MatchRecord::new(division, date, home, away, home_goals, away_goals)
        .ok_or(SkipReason::SameTeam)?;
    if let Some(stated) = cols.result.and_then(|i| MatchResult::from_code(field(i))) {
        if stated != m.result {
            return Err(SkipReason::ResultMismatch);
        }
    }
    Ok(m)
}
