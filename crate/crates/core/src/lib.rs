//! Season-long trend modelling for football leagues.
//!
//! The pipeline is: fetch raw match-result CSVs ([`datasource`]), rebuild
//! each team's cumulative-points series ([`ingest`]), fit low-degree
//! polynomials to the opening part of the season and extrapolate the final
//! total ([`regression`]), then compare predicted and actual league tables
//! with the normalized footrule distance ([`rankmetrics`]). [`stats`] holds
//! the bootstrap intervals, paired t-test and random-results baseline.

pub mod datasource;
pub mod ingest;
pub mod rankmetrics;
pub mod regression;
pub mod stats;

pub use datasource::{CacheEntry, DataSource, SeasonKey};
pub use ingest::{Championship, MatchRecord, MatchResult, SeasonSeries, Standing};
pub use rankmetrics::DistanceReport;
pub use regression::{EvalRecord, PolyModel};
pub use stats::{ConfidenceInterval, NullModelConfig};
