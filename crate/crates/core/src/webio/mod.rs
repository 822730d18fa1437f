//! Page acquisition and parsing: the live HTTP fetcher, the fixture-graph
//! fetcher, HTML parsing and URL canonicalization.

mod canon;
mod fixture;
mod live;
mod parse;

use std::time::SystemTime;

use thiserror::Error;

pub use canon::{canonical_url, canonicalize};
pub use fixture::{render_html, FixtureFetcher, Manifest, ManifestError, ManifestLink, ManifestPage};
pub use live::{LiveConfig, LiveFetcher};
pub use parse::{extract_text, parse_page, PageDocument, PageLink, ParseError};

pub const MAX_REDIRECTS: usize = 5;

/// A downloaded page before parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawPage {
    /// Canonical URL after redirects.
    pub url: String,
    pub content_type: String,
    pub body: Vec<u8>,
    pub fetched_at: SystemTime,
    /// Set when the body was cut at the size limit.
    pub truncated: bool,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FetchError {
    #[error("timed out")]
    Timeout,
    #[error("more than {MAX_REDIRECTS} redirects")]
    TooManyRedirects,
    #[error("HTTP status {0}")]
    HttpError(u16),
    #[error("not HTML: {0}")]
    NonHtmlContent(String),
    #[error("invalid URL {0}")]
    InvalidUrl(String),
    #[error("transport: {0}")]
    Transport(String),
}

/// Anything that can turn a canonical URL into a page.
pub trait PageSource {
    fn fetch(&self, url: &str) -> Result<RawPage, FetchError>;
}

impl<T: PageSource + ?Sized> PageSource for &T {
    fn fetch(&self, url: &str) -> Result<RawPage, FetchError> {
        (**self).fetch(url)
    }
}
