//! Distances between league tables and evaluation of predicted tables.
//!
//! A table over `m` teams is a permutation `tau` (team -> rank). Two tables
//! are compared by the footrule distance `D = sum |tau_R - tau_S|`,
//! normalized by its maximum `floor(m^2 / 2)` so that leagues of different
//! sizes share a `[0, 1]` scale.

mod distance;
mod predict;

pub use distance::{
    displacement, expected_random_distance, footrule, max_displacement, DistanceError,
    DistanceReport,
};
pub use predict::{
    perfect_prediction_count, predict_final_standing, top_bottom_tpr, tpr_from_outcomes,
    ChampionshipOutcome, PredictError, PredictedRow, PredictedTable, TableEnd, TprCell, ZoneMatch,
};
