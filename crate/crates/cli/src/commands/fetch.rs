use anyhow::{anyhow, Result};
use league_trend::datasource::Origin;

use crate::args::GlobalOpts;
use crate::data;
use crate::error::NetworkFailure;
use crate::output::{emit, Table};

pub fn run(opts: &GlobalOpts) -> Result<()> {
    let keys = data::manifest(opts)?;
    let ctx = data::context(opts)?;
    let results = data::fetch_all(&ctx, &keys);

    let mut table = Table::new(&["season", "league", "country", "status", "detail"]);
    let mut failed = Vec::new();
    for (key, r) in &results {
        let (status, detail) = match r {
            Ok(Origin::Cache) => ("cached", String::new()),
            Ok(Origin::Remote) => ("downloaded", String::new()),
            Ok(Origin::Fixture) => ("fixture", String::new()),
            Err(e) => {
                failed.push(e);
                ("failed", e.to_string())
            }
        };
        table.push(vec![
            key.season_code.as_str().into(),
            key.league_code.as_str().into(),
            key.country.as_str().into(),
            status.into(),
            detail.into(),
        ]);
    }
    emit(&table.render(opts.format)?, opts.out.as_deref())?;

    let ok = results.len() - failed.len();
    eprintln!("{ok} of {} seasons available", results.len());
    if failed.is_empty() {
        return Ok(());
    }
    let summary = format!("{} season(s) could not be fetched", failed.len());
    if failed.iter().all(|e| e.is_network()) {
        Err(NetworkFailure(summary).into())
    } else {
        Err(anyhow!(summary))
    }
}
