//! Bootstrap intervals, paired t-tests and the random-results null model.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64`; independent units of work (one synthetic series, one
//! bootstrap replicate) each read their own stream, so results do not depend
//! on thread count.

mod bootstrap;
mod null;
pub mod special;
mod ttest;

pub use bootstrap::{
    studentized_bootstrap_ci, BootstrapError, ConfidenceInterval, DEFAULT_LEVEL,
    DEFAULT_REPLICATES,
};
pub use null::{
    generate_null_series, null_model_error, null_model_errors, null_points, NullModelConfig,
    NullModelError, SeasonLength, DEFAULT_COUNT, DEFAULT_SEED, REFERENCE_LENGTHS,
};
pub use ttest::{paired_t_test, Alternative, TTest, TTestError, P_FLOOR};
