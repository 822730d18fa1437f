//! Evaluation: precision curves, synthetic graphs and focused-vs-BFS runs.

mod compare;
mod precision;
mod synth;
pub mod vocab;

use thiserror::Error;

use crate::crawl::CrawlError;
use crate::topic::TopicError;
use crate::webio::ManifestError;

pub use compare::{
    compare_topic, run_comparison, run_synthetic_suite, slug, synthetic_topic, write_report, ComparisonConfig,
    EngineEcho, SummaryRow, TopicComparison, TopicEcho, CORPUS_DOCS, CORPUS_WORDS,
};
pub use precision::{label_curve, precision_curve, write_curves_csv, PrecisionCurve, PrecisionPoint};
pub use synth::{generate_corpus, generate_graph, SynthGraphParams, Vocabulary, RELEVANT_LABEL};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("crawl produced no records")]
    EmptyRun,
    #[error("record sequence broken: expected seq {expected}, found {found}")]
    BadSequence { expected: usize, found: usize },
    #[error("invalid graph parameters: {0}")]
    ParamInvalid(String),
    #[error("graph manifest lists no seeds")]
    NoSeeds,
    #[error("unknown topic {0:?}")]
    UnknownTopic(String),
    #[error(transparent)]
    Crawl(#[from] CrawlError),
    #[error(transparent)]
    Topic(#[from] TopicError),
    #[error(transparent)]
    Manifest(#[from] ManifestError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}
