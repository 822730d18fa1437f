//! Crawl engines.
//!
//! [`FocusedCrawler`] is the best-first crawler: relevant pages feed the
//! frontier, and links found on irrelevant pages go to an
//! [`IrrelevantTable`] that is tunneled through up to `max_level`.
//! [`run_bfs`] is the breadth-first baseline it is compared against.

mod bfs;
mod db;
mod focused;
mod queue;

use std::collections::HashMap;
use std::io;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scoring::{self, LinkCandidate};
use crate::topic::WeightTable;

pub use bfs::run_bfs;
pub use db::{RelevantPageDb, StoredPage};
pub use focused::{FocusedCrawler, TunnelStep};
pub use queue::{IrrelevantTable, ScoredQueue, TableRow};

/// The URL queue of the focused crawler.
pub type Frontier = ScoredQueue;

/// Bounds for an automatically resolved relevancy limit.
pub const AUTO_LIMIT_MIN: f64 = 0.3;
pub const AUTO_LIMIT_MAX: f64 = 0.5;

#[derive(Debug, Error)]
pub enum CrawlError {
    #[error("no seed URLs given")]
    NoSeeds,
    #[error("none of the seed URLs could be fetched")]
    SeedsUnreachable,
    #[error("no seed pages to derive a relevancy limit from")]
    NoSeedPages,
    #[error("weight table is empty")]
    EmptyTable,
    #[error("invalid seed URL {0}")]
    InvalidSeed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrawlMode {
    Focused,
    Bfs,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelevancyLimit {
    /// Half the mean seed relevance, clamped to [0.3, 0.5].
    Auto,
    Fixed(f64),
}

impl std::str::FromStr for RelevancyLimit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Self::Auto);
        }
        let v: f64 = s
            .parse()
            .map_err(|_| format!("expected `auto` or a number, got {s:?}"))?;
        if !(0.0..=1.0).contains(&v) {
            return Err(format!("relevancy limit {v} is outside [0, 1]"));
        }
        Ok(Self::Fixed(v))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrawlConfig {
    pub seeds: Vec<String>,
    pub max_pages: usize,
    /// Deepest tunnel level that may still be fetched.
    pub max_level: u32,
    /// Weight table size used when the table is built for this crawl.
    pub table_capacity: usize,
    pub relevancy_limit: RelevancyLimit,
    pub mode: CrawlMode,
    /// Send out-links of relevant tunnel pages to the frontier instead of
    /// back into the irrelevant table.
    pub tunnel_relevant_links_to_frontier: bool,
    /// Let an irrelevant tunnel page queue its out-links one level deeper,
    /// so the tunnel can cross up to `max_level` irrelevant pages in a row.
    pub tunnel_through_irrelevant: bool,
    /// Count failed fetches as downloaded pages.
    pub count_failures: bool,
    /// Grow the weight table from highly relevant pages (focused only).
    pub expand_table: bool,
    /// Use the irrelevant table at all. Off gives plain best-first.
    pub tunneling: bool,
}

impl Default for CrawlConfig {
    fn default() -> Self {
        Self {
            seeds: Vec::new(),
            max_pages: 1000,
            max_level: 2,
            table_capacity: 50,
            relevancy_limit: RelevancyLimit::Auto,
            mode: CrawlMode::Focused,
            tunnel_relevant_links_to_frontier: false,
            tunnel_through_irrelevant: true,
            count_failures: false,
            expand_table: true,
            tunneling: true,
        }
    }
}

/// One fetch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrawlRecord {
    pub seq: usize,
    pub url: String,
    pub relevance: f64,
    pub relevant: bool,
    pub via_tunnel: bool,
    pub level: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FetchFailure {
    pub url: String,
    pub error: String,
}

/// Everything a crawl run produces.
#[derive(Debug, Clone)]
pub struct CrawlOutcome {
    pub records: Vec<CrawlRecord>,
    pub db: RelevantPageDb,
    pub relevancy_limit: f64,
    /// Weight table at the end of the run, including expansions.
    pub table: WeightTable,
    pub failures: Vec<FetchFailure>,
}

/// Half of the mean seed-page relevance, clamped to [0.3, 0.5].
pub fn resolve_relevancy_limit(seed_relevances: &[f64]) -> Result<f64, CrawlError> {
    if seed_relevances.is_empty() {
        return Err(CrawlError::NoSeedPages);
    }
    let mean = seed_relevances.iter().sum::<f64>() / seed_relevances.len() as f64;
    Ok((mean / 2.0).clamp(AUTO_LIMIT_MIN, AUTO_LIMIT_MAX))
}

pub const RECORD_HEADER: [&str; 6] = ["seq", "url", "relevance", "relevant", "via_tunnel", "level"];

/// Writes the crawl log as CSV, relevance to 6 decimals.
pub fn write_records_csv<W: io::Write>(records: &[CrawlRecord], out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_HEADER)?;
    for r in records {
        w.write_record([
            r.seq.to_string(),
            r.url.clone(),
            format!("{:.6}", r.relevance),
            r.relevant.to_string(),
            r.via_tunnel.to_string(),
            r.level.to_string(),
        ])?;
    }
    w.flush()
}

/// Link ranking used by the focused crawler.
pub trait LinkScorer {
    fn score(&self, candidate: &LinkCandidate, table: &WeightTable) -> f64;
}

/// URL score + anchor score + relevant in-links + parent relevances.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompositeScorer;

impl LinkScorer for CompositeScorer {
    fn score(&self, candidate: &LinkCandidate, table: &WeightTable) -> f64 {
        scoring::link_score(candidate, table)
    }
}

/// Fixed per-URL scores, for replaying hand-worked traces.
#[derive(Debug, Clone, Default)]
pub struct FixedScores {
    scores: HashMap<String, f64>,
    default: f64,
}

impl FixedScores {
    pub fn new(scores: impl IntoIterator<Item = (String, f64)>, default: f64) -> Self {
        Self {
            scores: scores.into_iter().collect(),
            default,
        }
    }
}

impl LinkScorer for FixedScores {
    fn score(&self, candidate: &LinkCandidate, _table: &WeightTable) -> f64 {
        self.scores.get(&candidate.url).copied().unwrap_or(self.default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_resolution() {
        assert!((resolve_relevancy_limit(&[0.9, 0.7]).unwrap() - 0.4).abs() < 1e-12);
        assert_eq!(resolve_relevancy_limit(&[1.0, 1.0]).unwrap(), 0.5);
        assert_eq!(resolve_relevancy_limit(&[0.2]).unwrap(), 0.3);
        assert!(matches!(resolve_relevancy_limit(&[]), Err(CrawlError::NoSeedPages)));
    }

    #[test]
    fn limit_parsing() {
        assert_eq!("auto".parse::<RelevancyLimit>(), Ok(RelevancyLimit::Auto));
        assert_eq!("0.35".parse::<RelevancyLimit>(), Ok(RelevancyLimit::Fixed(0.35)));
        assert!("1.5".parse::<RelevancyLimit>().is_err());
        assert!("high".parse::<RelevancyLimit>().is_err());
    }

    #[test]
    fn csv_layout() {
        let records = [CrawlRecord {
            seq: 1,
            url: "http://a.com/?x=1,2".into(),
            relevance: 0.5,
            relevant: true,
            via_tunnel: false,
            level: 0,
        }];
        let mut buf = Vec::new();
        write_records_csv(&records, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "seq,url,relevance,relevant,via_tunnel,level\n1,\"http://a.com/?x=1,2\",0.500000,true,false,0\n"
        );
    }
}
