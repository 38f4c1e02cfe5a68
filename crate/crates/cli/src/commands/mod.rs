pub mod evaluate;
pub mod fetch;
pub mod null_model;
pub mod predict;
