use std::fmt;

use league_trend::datasource::FetchError;

/// Process exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_NETWORK: u8 = 3;

/// Bad flag values that clap cannot check on its own.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Every requested season failed for lack of network access.
#[derive(Debug)]
pub struct NetworkFailure(pub String);

impl fmt::Display for NetworkFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for NetworkFailure {}

#[derive(Debug)]
pub struct TeamNotFound {
    pub team: String,
    pub season: String,
    pub suggestions: Vec<String>,
}

impl fmt::Display for TeamNotFound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "team {:?} not found in {}", self.team, self.season)?;
        if !self.suggestions.is_empty() {
            write!(f, "; did you mean {}?", self.suggestions.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for TeamNotFound {}

pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return EXIT_USAGE;
        }
        if cause.is::<NetworkFailure>() {
            return EXIT_NETWORK;
        }
        if let Some(f) = cause.downcast_ref::<FetchError>() {
            if f.is_network() {
                return EXIT_NETWORK;
            }
        }
    }
    EXIT_DATA
}
