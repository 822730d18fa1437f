use std::collections::HashMap;
use std::io::Read;
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant, SystemTime};

use reqwest::blocking::Client;
use reqwest::redirect::Policy;

use super::{canon, FetchError, PageSource, RawPage, MAX_REDIRECTS};

#[derive(Debug, Clone)]
pub struct LiveConfig {
    pub user_agent: String,
    pub timeout: Duration,
    /// Minimum gap between two requests to the same host.
    pub politeness_delay: Duration,
    pub max_body_bytes: usize,
}

impl Default for LiveConfig {
    fn default() -> Self {
        Self {
            user_agent: concat!("focuscrawl/", env!("CARGO_PKG_VERSION")).into(),
            timeout: Duration::from_secs(10),
            politeness_delay: Duration::from_millis(1000),
            max_body_bytes: 2 * 1024 * 1024,
        }
    }
}

/// Blocking HTTP fetcher with per-host politeness.
pub struct LiveFetcher {
    client: Client,
    config: LiveConfig,
    last_hit: Mutex<HashMap<String, Instant>>,
}

impl LiveFetcher {
    pub fn new(config: LiveConfig) -> Result<Self, FetchError> {
        let client = Client::builder()
            .user_agent(config.user_agent.clone())
            .timeout(config.timeout)
            .redirect(Policy::limited(MAX_REDIRECTS))
            .build()
            .map_err(|e| FetchError::Transport(e.to_string()))?;
        Ok(Self {
            client,
            config,
            last_hit: Mutex::new(HashMap::new()),
        })
    }

    /// Blocks until `host` may be contacted again, then reserves the slot.
    fn wait_turn(&self, host: &str) {
        loop {
            let wait = {
                let mut last = self.last_hit.lock().expect("politeness lock");
                let now = Instant::now();
                match last.get(host) {
                    Some(&t) if now < t + self.config.politeness_delay => t + self.config.politeness_delay - now,
                    _ => {
                        last.insert(host.to_string(), now);
                        return;
                    }
                }
            };
            thread::sleep(wait);
        }
    }
}

fn map_err(e: reqwest::Error) -> FetchError {
    if e.is_timeout() {
        FetchError::Timeout
    } else if e.is_redirect() {
        FetchError::TooManyRedirects
    } else if let Some(status) = e.status() {
        FetchError::HttpError(status.as_u16())
    } else {
        FetchError::Transport(e.to_string())
    }
}

impl PageSource for LiveFetcher {
    fn fetch(&self, url: &str) -> Result<RawPage, FetchError> {
        let parsed = url::Url::parse(url).map_err(|_| FetchError::InvalidUrl(url.into()))?;
        if !matches!(parsed.scheme(), "http" | "https") {
            return Err(FetchError::InvalidUrl(url.into()));
        }
        self.wait_turn(parsed.host_str().unwrap_or_default());

        let resp = self.client.get(parsed).send().map_err(map_err)?;
        let status = resp.status();
        if !status.is_success() {
            return Err(FetchError::HttpError(status.as_u16()));
        }
        let content_type = resp
            .headers()
            .get(reqwest::header::CONTENT_TYPE)
            .and_then(|v| v.to_str().ok())
            .unwrap_or("text/html")
            .to_string();
        if !content_type.to_ascii_lowercase().contains("html") {
            return Err(FetchError::NonHtmlContent(content_type));
        }
        let final_url =
            canon::canonical_url(resp.url().as_str()).ok_or_else(|| FetchError::InvalidUrl(resp.url().to_string()))?;

        let limit = self.config.max_body_bytes;
        let mut body = Vec::new();
        resp.take(limit as u64 + 1)
            .read_to_end(&mut body)
            .map_err(|e| FetchError::Transport(e.to_string()))?;
        let truncated = body.len() > limit;
        body.truncate(limit);

        Ok(RawPage {
            url: final_url,
            content_type,
            body,
            fetched_at: SystemTime::now(),
            truncated,
        })
    }
}
