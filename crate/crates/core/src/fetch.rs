//! Remote fetch capability shared by the dataset cache and the model hub.
//!
//! Everything that touches the network goes through [`Fetcher`], so tests
//! can inject counting or failing implementations.

use std::io::Write;

use thiserror::Error;

#[derive(Debug, Error)]
#[error("{0}")]
pub struct FetchError(pub String);

pub trait Fetcher: Send + Sync {
    /// Streams the resource at `url` into `sink`, returning the byte count.
    ///
    /// A failure part-way through may leave partial data in `sink`; callers
    /// write to a temporary file and only rename it into place on success.
    fn fetch(&self, url: &str, sink: &mut dyn Write) -> Result<u64, FetchError>;
}

/// Blocking HTTPS fetcher.
#[cfg(feature = "http")]
#[derive(Debug, Clone)]
pub struct HttpFetcher {
    client: reqwest::blocking::Client,
}

#[cfg(feature = "http")]
impl HttpFetcher {
    pub fn new() -> Self {
        let client = reqwest::blocking::Client::builder()
            .user_agent(concat!("mahanlp/", env!("CARGO_PKG_VERSION")))
            .build()
            .expect("TLS backend initializes");
        HttpFetcher { client }
    }
}

#[cfg(feature = "http")]
impl Default for HttpFetcher {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(feature = "http")]
impl Fetcher for HttpFetcher {
    fn fetch(&self, url: &str, sink: &mut dyn Write) -> Result<u64, FetchError> {
        let mut response = self
            .client
            .get(url)
            .send()
            .and_then(|r| r.error_for_status())
            .map_err(|e| FetchError(e.to_string()))?;
        response
            .copy_to(sink)
            .map_err(|e| FetchError(e.to_string()))
    }
}

/// Fetcher that always fails; used when the crate is built without `http`.
#[derive(Debug, Clone, Copy, Default)]
pub struct OfflineFetcher;

impl Fetcher for OfflineFetcher {
    fn fetch(&self, _url: &str, _sink: &mut dyn Write) -> Result<u64, FetchError> {
        Err(FetchError("network access is disabled".into()))
    }
}

pub fn default_fetcher() -> std::sync::Arc<dyn Fetcher> {
    #[cfg(feature = "http")]
    {
        std::sync::Arc::new(HttpFetcher::new())
    }
    #[cfg(not(feature = "http"))]
    {
        std::sync::Arc::new(OfflineFetcher)
    }
}
