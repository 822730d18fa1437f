//! Offline page source backed by a `graph.json` manifest.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;
use std::time::SystemTime;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{canon, FetchError, PageSource, RawPage, MAX_REDIRECTS};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub pages: Vec<ManifestPage>,
    /// Suggested crawl seeds. Not part of the page data.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub seeds: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ManifestPage {
    pub url: String,
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub body: String,
    #[serde(default)]
    pub links: Vec<ManifestLink>,
    /// When set, the page is a redirect to this (possibly relative) URL.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub redirect: Option<String>,
    /// Ground-truth label, `"relevant"` for on-topic pages.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestLink {
    pub href: String,
    #[serde(default)]
    pub anchor: String,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("manifest: {0}")]
    Io(#[from] std::io::Error),
    #[error("manifest line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("manifest {field}: {message}")]
    Invalid { field: String, message: String },
}

enum Entry {
    Page(Vec<u8>),
    Redirect(String),
}

/// Serves pages from a manifest. Every fetch is a pure lookup.
pub struct FixtureFetcher {
    pages: BTreeMap<String, Entry>,
    labels: BTreeMap<String, String>,
    seeds: Vec<String>,
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

/// Renders a manifest page as a small HTML document.
pub fn render_html(page: &ManifestPage) -> String {
    let mut html = String::new();
    let _ = write!(
        html,
        "<!DOCTYPE html>\n<html><head><title>{}</title></head>\n<body>\n<p>{}</p>\n",
        escape(&page.title),
        escape(&page.body)
    );
    for link in &page.links {
        let _ = writeln!(html, "<a href=\"{}\">{}</a>", escape(&link.href), escape(&link.anchor));
    }
    html.push_str("</body></html>\n");
    html
}

impl FixtureFetcher {
    pub fn from_manifest(manifest: &Manifest) -> Result<Self, ManifestError> {
        let mut pages = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for (i, p) in manifest.pages.iter().enumerate() {
            let url = canon::canonical_url(&p.url).ok_or_else(|| ManifestError::Invalid {
                field: format!("pages[{i}].url"),
                message: format!("{:?} is not an absolute http(s) URL", p.url),
            })?;
            let entry = match &p.redirect {
                Some(target) => {
                    Entry::Redirect(canon::canonicalize(&url, target).ok_or_else(|| ManifestError::Invalid {
                        field: format!("pages[{i}].redirect"),
                        message: format!("{target:?} does not resolve to an http(s) URL"),
                    })?)
                }
                None => Entry::Page(render_html(p).into_bytes()),
            };
            if pages.insert(url.clone(), entry).is_some() {
                return Err(ManifestError::Invalid {
                    field: format!("pages[{i}].url"),
                    message: format!("duplicate URL {url}"),
                });
            }
            if let Some(label) = &p.label {
                labels.insert(url, label.clone());
            }
        }
        let mut seen = HashSet::new();
        let mut seeds = Vec::new();
        for (i, s) in manifest.seeds.iter().enumerate() {
            let url = canon::canonical_url(s).ok_or_else(|| ManifestError::Invalid {
                field: format!("seeds[{i}]"),
                message: format!("{s:?} is not an absolute http(s) URL"),
            })?;
            if seen.insert(url.clone()) {
                seeds.push(url);
            }
        }
        Ok(Self { pages, labels, seeds })
    }

    pub fn from_json(text: &str) -> Result<Self, ManifestError> {
        let manifest: Manifest = serde_json::from_str(text).map_err(|e| ManifestError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_manifest(&manifest)
    }

    /// Loads `path`, or `path/graph.json` when `path` is a directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ManifestError> {
        let path = path.as_ref();
        let file = if path.is_dir() {
            path.join("graph.json")
        } else {
            path.to_path_buf()
        };
        Self::from_json(&std::fs::read_to_string(file)?)
    }

    /// Number of URLs served (pages and redirects).
    pub fn len(&self) -> usize {
        self.pages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pages.is_empty()
    }

    pub fn urls(&self) -> impl Iterator<Item = &str> {
        self.pages.keys().map(String::as_str)
    }

    pub fn seeds(&self) -> &[String] {
        &self.seeds
    }

    pub fn label(&self, url: &str) -> Option<&str> {
        self.labels.get(url).map(String::as_str)
    }

    pub fn is_labeled_relevant(&self, url: &str) -> bool {
        self.label(url) == Some("relevant")
    }
}

impl PageSource for FixtureFetcher {
    fn fetch(&self, url: &str) -> Result<RawPage, FetchError> {
        let mut current = canon::canonical_url(url).ok_or_else(|| FetchError::InvalidUrl(url.into()))?;
        let mut hops = 0;
        loop {
            match self.pages.get(&current) {
                None => return Err(FetchError::HttpError(404)),
                Some(Entry::Redirect(target)) => {
                    hops += 1;
                    if hops > MAX_REDIRECTS {
                        return Err(FetchError::TooManyRedirects);
                    }
                    current = target.clone();
                }
                Some(Entry::Page(body)) => {
                    return Ok(RawPage {
                        url: current,
                        content_type: "text/html".into(),
                        body: body.clone(),
                        fetched_at: SystemTime::UNIX_EPOCH,
                        truncated: false,
                    })
                }
            }
        }
    }
}
