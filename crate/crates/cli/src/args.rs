use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "league-trend", version, about = "Forecast final league tables by extrapolating cumulative points")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Season list: a file path, or the built-in lists `full` (425 seasons) or `fixtures`.
    #[arg(long, global = true, default_value = "full")]
    pub manifest: String,

    #[arg(long, global = true, env = "LEAGUE_TREND_CACHE")]
    pub cache_dir: Option<PathBuf>,

    /// Never touch the network; serve cache and fixtures only.
    #[arg(long, global = true)]
    pub offline: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file (directory for `evaluate`); standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[arg(long, global = true, default_value_t = league_trend::stats::DEFAULT_SEED)]
    pub seed: u64,

    /// Clamp forecasts to [points so far, 3 n].
    #[arg(long, global = true)]
    pub clamp: bool,

    /// Directory laid out as `<season>/<league>.csv`, consulted before the built-in fixtures when offline.
    #[arg(long, global = true)]
    pub fixtures_dir: Option<PathBuf>,

    /// Download URL with `{season_code}` and `{league_code}` placeholders.
    #[arg(long, global = true)]
    pub url_template: Option<String>,

    /// Tab-separated `alias<TAB>canonical` team-name table.
    #[arg(long, global = true)]
    pub aliases: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Download and cache every season in the manifest.
    Fetch,
    /// Per-round forecast for one team.
    PredictTeam(PredictTeamArgs),
    /// Predicted final table of one season, compared with the real one.
    PredictTable(PredictTableArgs),
    /// Error, displacement and true-positive-rate reports over the manifest.
    Evaluate(EvaluateArgs),
    /// Forecast error on randomly generated seasons.
    NullModel(NullModelArgs),
}

#[derive(Debug, Args)]
pub struct PredictTeamArgs {
    #[arg(long)]
    pub team: String,
    /// Season id such as `D1/1314`.
    #[arg(long)]
    pub season: String,
    #[arg(long, default_value_t = 10)]
    pub ts: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub degree: u8,
}

#[derive(Debug, Args)]
pub struct PredictTableArgs {
    #[arg(long)]
    pub season: String,
    #[arg(long, default_value_t = 10)]
    pub ts: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub degree: u8,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Holdouts: `1..20`, `1-20`, `3,5,8` or a single value.
    #[arg(long, default_value = "1..20", value_parser = parse_int_list)]
    pub ts: IntList,
    /// Degrees in the same syntax as `--ts`.
    #[arg(long, default_value = "1", value_parser = parse_degrees)]
    pub degree: IntList,
    /// Require exact positions, not just the same teams, for a top/bottom-k hit.
    #[arg(long)]
    pub tpr_exact: bool,
    #[arg(long, default_value_t = league_trend::stats::DEFAULT_REPLICATES)]
    pub replicates: usize,
    #[arg(long, default_value_t = league_trend::stats::DEFAULT_LEVEL, value_parser = parse_level)]
    pub level: f64,
}

#[derive(Debug, Args)]
pub struct NullModelArgs {
    #[arg(long, default_value_t = league_trend::stats::DEFAULT_COUNT)]
    pub count: usize,
    /// Fixed season length; by default lengths follow the reference championship mix.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub ts: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub degree: u8,
    /// Win, draw and loss probabilities.
    #[arg(long, value_parser = parse_probs)]
    pub null_probs: Option<[f64; 3]>,
    #[arg(long, default_value_t = league_trend::stats::DEFAULT_REPLICATES)]
    pub replicates: usize,
    #[arg(long, default_value_t = league_trend::stats::DEFAULT_LEVEL, value_parser = parse_level)]
    pub level: f64,
    /// Also write the error histogram here.
    #[arg(long)]
    pub histogram: Option<PathBuf>,
}

/// A sorted, deduplicated list of positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<usize>);

fn parse_int_list(s: &str) -> Result<IntList, String> {
    parse_list(s).map(IntList)
}

/// Parses `a..b`, `a-b`, comma lists of either, or a single integer.
pub fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bounds = part
            .split_once("..=")
            .or_else(|| part.split_once(".."))
            .or_else(|| part.split_once('-'));
        match bounds {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|_| format!("bad range start in {part:?}"))?;
                let b: usize = b.trim().parse().map_err(|_| format!("bad range end in {part:?}"))?;
                if a > b {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| format!("not an integer: {part:?}"))?),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    if out.contains(&0) {
        return Err("values must be at least 1".into());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_degrees(s: &str) -> Result<IntList, String> {
    let v = parse_list(s)?;
    if v.iter().any(|&d| d > league_trend::regression::MAX_DEGREE) {
        return Err(format!("degrees must lie in 1..={}", league_trend::regression::MAX_DEGREE));
    }
    Ok(IntList(v))
}

fn parse_level(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err("level must lie strictly between 0 and 1".into())
    }
}

fn parse_probs(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated probabilities w,d,l".into());
    }
    let mut out = [0.0; 3];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| format!("not a number: {p:?}"))?;
    }
    if out.iter().any(|p| !(0.0..=1.0).contains(p)) || (out.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err("probabilities must lie in [0, 1] and sum to 1".into());
    }
    // absorb rounding in user input so the library's 1e-12 check passes
    out[2] = 1.0 - out[0] - out[1];
    Ok(out)
}
