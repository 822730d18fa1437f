//! Page relevance and link ranking.
//!
//! A page is a vector of positional term weights (title occurrences count
//! twice, body occurrences once) and its relevance is the cosine between
//! that vector and the topic weight table. An unvisited link is ranked by
//!
//! ```text
//! score = url_score + anchor_score + relevant_inlinks + Σ parent relevance
//! ```
//!
//! where the first two are the same cosine applied to the link's URL tokens
//! and anchor terms. The sum is taken raw: the first two addends lie in
//! [0, 1], the last two are unbounded.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::textproc::{self, Stoplist, Term};
use crate::topic::WeightTable;

pub const TITLE_FACTOR: f64 = 2.0;
pub const BODY_FACTOR: f64 = 1.0;

/// URL tokens that say nothing about a page's topic.
const URL_NOISE: &[&str] = &[
    "http", "https", "www", "com", "org", "net", "html", "htm", "php", "example",
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScoringError {
    #[error("weight table is empty")]
    EmptyTable,
}

/// Per-term page weights, `2·title + 1·body` occurrences.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PositionalWeights(BTreeMap<Term, f64>);

impl PositionalWeights {
    pub fn get(&self, term: &str) -> f64 {
        self.0.get(term).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, f64)> {
        self.0.iter().map(|(t, &w)| (t, w))
    }

    /// Every term counted once with the body factor.
    pub fn from_common_text(terms: &[Term]) -> Self {
        positional_weights(&[], terms)
    }
}

impl FromIterator<(Term, f64)> for PositionalWeights {
    fn from_iter<I: IntoIterator<Item = (Term, f64)>>(iter: I) -> Self {
        Self(iter.into_iter().filter(|(_, w)| *w > 0.0).collect())
    }
}

pub fn positional_weights(title_terms: &[Term], body_terms: &[Term]) -> PositionalWeights {
    let mut w = BTreeMap::new();
    for t in title_terms {
        *w.entry(t.clone()).or_insert(0.0) += TITLE_FACTOR;
    }
    for t in body_terms {
        *w.entry(t.clone()).or_insert(0.0) += BODY_FACTOR;
    }
    PositionalWeights(w)
}

/// Cosine similarity between the table and the page weights. The page norm
/// runs over every page term, not only the shared ones. A page with no
/// weight at all has relevance 0.
pub fn relevance(table: &WeightTable, page: &PositionalWeights) -> Result<f64, ScoringError> {
    if table.is_empty() {
        return Err(ScoringError::EmptyTable);
    }
    let dot: f64 = page
        .iter()
        .filter_map(|(t, wp)| table.get(t.as_str()).map(|wt| wt * wp))
        .sum();
    if dot == 0.0 {
        return Ok(0.0);
    }
    let page_norm: f64 = page.iter().map(|(_, w)| w * w).sum();
    let cos = dot / (table.norm_squared() * page_norm).sqrt();
    Ok(cos.clamp(0.0, 1.0))
}

/// Relevance of a bag of link metadata terms. Zero for no terms or an empty
/// table.
pub fn text_score(table: &WeightTable, terms: &[Term]) -> f64 {
    if terms.is_empty() {
        return 0.0;
    }
    relevance(table, &PositionalWeights::from_common_text(terms)).unwrap_or(0.0)
}

/// Splits a URL into topic terms: non-letters separate tokens, and URL
/// boilerplate (scheme, `www`, common TLDs and file extensions) is dropped
/// along with stopwords.
pub fn url_tokens(url: &str, stoplist: &Stoplist) -> Vec<Term> {
    let tokens = textproc::tokenize(url)
        .into_iter()
        .filter(|t| !URL_NOISE.contains(&t.as_str()))
        .collect();
    textproc::analyze_tokens(tokens, stoplist)
}

/// An unvisited URL together with everything its link score depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkCandidate {
    pub url: String,
    pub anchor_terms: Vec<Term>,
    pub url_terms: Vec<Term>,
    /// Pages in the relevant-page database that link here.
    pub relevant_inlinks: u32,
    /// `(parent url, parent relevance)`, one entry per distinct parent.
    pub parents: Vec<(String, f64)>,
    /// Tunnel depth; only meaningful in the irrelevant table.
    pub level: u32,
}

impl LinkCandidate {
    pub fn new(url: impl Into<String>, anchor_terms: Vec<Term>, stoplist: &Stoplist) -> Self {
        let url = url.into();
        let url_terms = url_tokens(&url, stoplist);
        Self {
            url,
            anchor_terms,
            url_terms,
            relevant_inlinks: 0,
            parents: Vec::new(),
            level: 0,
        }
    }

    /// Records a parent page. Returns false if that parent was already known.
    pub fn add_parent(&mut self, parent_url: &str, relevance: f64) -> bool {
        if self.parents.iter().any(|(u, _)| u == parent_url) {
            return false;
        }
        self.parents.push((parent_url.to_string(), relevance));
        true
    }

    pub fn parent_relevances(&self) -> impl Iterator<Item = f64> + '_ {
        self.parents.iter().map(|(_, r)| *r)
    }
}

/// The four addends of a link score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreBreakdown {
    pub url_score: f64,
    pub anchor_score: f64,
    pub relevant_inlinks: f64,
    pub parent_relevance: f64,
}

impl ScoreBreakdown {
    pub fn total(&self) -> f64 {
        self.url_score + self.anchor_score + self.relevant_inlinks + self.parent_relevance
    }
}

pub fn score_breakdown(candidate: &LinkCandidate, table: &WeightTable) -> ScoreBreakdown {
    ScoreBreakdown {
        url_score: text_score(table, &candidate.url_terms),
        anchor_score: text_score(table, &candidate.anchor_terms),
        relevant_inlinks: f64::from(candidate.relevant_inlinks),
        parent_relevance: candidate.parent_relevances().sum(),
    }
}

pub fn link_score(candidate: &LinkCandidate, table: &WeightTable) -> f64 {
    score_breakdown(candidate, table).total()
}
