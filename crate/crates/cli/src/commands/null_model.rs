use std::collections::BTreeMap;

use anyhow::Result;
use league_trend::stats::{null_model_error, null_model_errors, NullModelConfig, SeasonLength};

use crate::args::{GlobalOpts, NullModelArgs};
use crate::error::UsageError;
use crate::output::{emit, format_float, Table};

pub fn run(opts: &GlobalOpts, args: &NullModelArgs) -> Result<()> {
    let mut cfg = NullModelConfig {
        count: args.count,
        seed: opts.seed,
        level: args.level,
        replicates: args.replicates,
        ..NullModelConfig::default()
    };
    if let Some(n) = args.n {
        cfg.season_length = SeasonLength::Fixed(n);
    }
    if let Some(p) = args.null_probs {
        cfg.outcome_probs = p;
    }
    let degree = args.degree as usize;
    cfg.validate().map_err(|e| UsageError(e.to_string()))?;
    let shortest = match &cfg.season_length {
        SeasonLength::Fixed(n) => *n,
        SeasonLength::Mixture(m) => m.iter().map(|(n, _)| *n).min().unwrap_or(0),
    };
    if args.ts == 0 || args.ts + degree + 1 > shortest {
        return Err(UsageError(format!(
            "--ts must lie in 1..={} for degree {degree} and {shortest}-round seasons",
            shortest.saturating_sub(degree + 1)
        ))
        .into());
    }

    let ci = null_model_error(&cfg, args.ts, degree)?;
    let lengths = match &cfg.season_length {
        SeasonLength::Fixed(n) => n.to_string(),
        SeasonLength::Mixture(_) => "mixture".to_string(),
    };
    let probs = cfg.outcome_probs.map(format_float).join(";");
    let mut table = Table::new(&[
        "count", "n", "t_s", "degree", "outcome_probs", "mean_abs_error", "lo", "hi", "level",
        "replicates", "seed",
    ]);
    table.push(vec![
        cfg.count.into(),
        lengths.into(),
        args.ts.into(),
        degree.into(),
        probs.into(),
        ci.estimate.into(),
        ci.lo.into(),
        ci.hi.into(),
        ci.level.into(),
        ci.replicates.into(),
        opts.seed.into(),
    ]);
    emit(&table.render(opts.format)?, opts.out.as_deref())?;

    if let Some(path) = &args.histogram {
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for e in null_model_errors(&cfg, args.ts, degree)? {
            *counts.entry(e).or_default() += 1;
        }
        let mut hist = Table::new(&["abs_error", "series"]);
        for (e, c) in counts {
            hist.push(vec![e.into(), c.into()]);
        }
        emit(&hist.render(opts.format)?, Some(path))?;
    }
    Ok(())
}
