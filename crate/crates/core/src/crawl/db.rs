use std::collections::HashMap;
use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::textproc::TermCounts;

/// A page accepted as on-topic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredPage {
    pub url: String,
    pub relevance: f64,
    pub terms: TermCounts,
    pub outlinks: Vec<String>,
}

/// Relevant pages in the order they were stored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RelevantPageDb {
    pages: Vec<StoredPage>,
    index: HashMap<String, usize>,
}

impl RelevantPageDb {
    pub fn new() -> Self {
        Self::default()
    }

    /// Stores a page. A URL already present is left as it was.
    pub fn insert(&mut self, page: StoredPage) -> bool {
        if self.index.contains_key(&page.url) {
            return false;
        }
        self.index.insert(page.url.clone(), self.pages.len());
        self.pages.push(page);
        true
    }

    pub fn get(&self, url: &str) -> Option<&StoredPage> {
        self.index.get(url).map(|&i| &self.pages[i])
    }

    pub fn contains(&self, url: &str) -> bool {
        self.index.contains_key(url)
    }

    pub fn len(&self) -> usize {
        self.pages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pages.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &StoredPage> {
        self.pages.iter()
    }

    /// Number of stored pages linking to `url`, by scanning every page.
    pub fn inlink_count(&self, url: &str) -> u32 {
        self.pages
            .iter()
            .filter(|p| p.outlinks.iter().any(|o| o == url))
            .count() as u32
    }

    /// One JSON object per line.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        for p in &self.pages {
            serde_json::to_writer(&mut out, p)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> io::Result<Self> {
        let mut db = Self::new();
        for line in input.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let page: StoredPage = serde_json::from_str(&line)?;
            db.insert(page);
        }
        Ok(db)
    }
}
