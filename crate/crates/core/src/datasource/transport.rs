/// Failure modes of a remote GET.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransportError {
    #[error("resource not found (HTTP 404)")]
    NotFound,
    #[error("network unavailable: {0}")]
    Unavailable(String),
}

/// Byte-level access to the remote repository.
pub trait Transport: Send + Sync {
    fn get(&self, url: &str) -> Result<Vec<u8>, TransportError>;
}

/// A transport that refuses every request.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoNetwork;

impl Transport for NoNetwork {
    fn get(&self, url: &str) -> Result<Vec<u8>, TransportError> {
        Err(TransportError::Unavailable(format!("no transport configured for {url}")))
    }
}

#[cfg(feature = "http")]
pub use http::HttpTransport;

#[cfg(feature = "http")]
mod http {
    use super::{Transport, TransportError};

    /// Blocking HTTP(S) transport.
    pub struct HttpTransport {
        agent: ureq::Agent,
    }

    impl HttpTransport {
        pub fn new() -> Self {
            let config = ureq::Agent::config_builder()
                .timeout_global(Some(std::time::Duration::from_secs(60)))
                .user_agent(concat!("league-trend/", env!("CARGO_PKG_VERSION")))
                .build();
            Self {
                agent: config.into(),
            }
        }
    }

    impl Default for HttpTransport {
        fn default() -> Self {
            Self::new()
        }
    }

    impl Transport for HttpTransport {
        fn get(&self, url: &str) -> Result<Vec<u8>, TransportError> {
            match self.agent.get(url).call() {
                Ok(mut resp) => resp
                    .body_mut()
                    .with_config()
                    .limit(64 * 1024 * 1024)
                    .read_to_vec()
                    .map_err(|e| TransportError::Unavailable(e.to_string())),
                Err(ureq::Error::StatusCode(404)) => Err(TransportError::NotFound),
                Err(e) => Err(TransportError::Unavailable(e.to_string())),
            }
        }
    }
}
