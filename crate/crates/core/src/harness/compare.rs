use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use super::precision::{label_curve, precision_curve, write_curves_csv, PrecisionCurve};
use super::synth::{generate_corpus, generate_graph, SynthGraphParams, Vocabulary};
use super::vocab::TOPICS;
use super::HarnessError;
use crate::crawl::{run_bfs, write_records_csv, CrawlConfig, CrawlMode, CrawlOutcome, FocusedCrawler, RelevancyLimit};
use crate::textproc::Stoplist;
use crate::topic::{self, WeightTable};
use crate::webio::FixtureFetcher;

/// Settings shared by both engines in a comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonConfig {
    pub max_pages: usize,
    pub max_level: u32,
    pub table_capacity: usize,
    pub relevancy_limit: RelevancyLimit,
}

impl Default for ComparisonConfig {
    fn default() -> Self {
        Self {
            max_pages: 400,
            max_level: 2,
            table_capacity: 50,
            relevancy_limit: RelevancyLimit::Auto,
        }
    }
}

/// One row of the summary table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub topic: String,
    pub focused_precision: f64,
    pub bfs_precision: f64,
    pub focused_label_precision: f64,
    pub bfs_label_precision: f64,
}

/// What each engine was given, for checking that the runs were comparable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EngineEcho {
    pub mode: CrawlMode,
    pub seeds: Vec<String>,
    pub max_pages: usize,
    pub max_level: u32,
    pub relevancy_limit: f64,
    pub table: Vec<(String, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TopicEcho {
    pub topic: String,
    pub focused: EngineEcho,
    pub bfs: EngineEcho,
}

/// Both runs over one topic.
#[derive(Debug, Clone)]
pub struct TopicComparison {
    pub topic: String,
    pub focused: CrawlOutcome,
    pub bfs: CrawlOutcome,
    pub focused_curve: PrecisionCurve,
    pub bfs_curve: PrecisionCurve,
    pub focused_label_curve: PrecisionCurve,
    pub bfs_label_curve: PrecisionCurve,
    pub echo: TopicEcho,
}

impl TopicComparison {
    pub fn summary(&self) -> SummaryRow {
        SummaryRow {
            topic: self.topic.clone(),
            focused_precision: self.focused_curve.final_precision(),
            bfs_precision: self.bfs_curve.final_precision(),
            focused_label_precision: self.focused_label_curve.final_precision(),
            bfs_label_precision: self.bfs_label_curve.final_precision(),
        }
    }
}

fn echo(mode: CrawlMode, config: &CrawlConfig, limit: f64, table: &WeightTable) -> EngineEcho {
    EngineEcho {
        mode,
        seeds: config.seeds.clone(),
        max_pages: config.max_pages,
        max_level: config.max_level,
        relevancy_limit: limit,
        table: table.ranked().into_iter().map(|(t, w)| (t.to_string(), w)).collect(),
    }
}

/// Runs the focused crawler and then BFS on the same graph with the same
/// seeds, budget and weight table. BFS gets the relevancy limit the
/// focused run resolved, so both judge pages by the same bar.
pub fn compare_topic(
    topic: &str,
    fetcher: &FixtureFetcher,
    seeds: &[String],
    table: WeightTable,
    config: &ComparisonConfig,
    stoplist: &Stoplist,
) -> Result<TopicComparison, HarnessError> {
    let base = CrawlConfig {
        seeds: seeds.to_vec(),
        max_pages: config.max_pages,
        max_level: config.max_level,
        table_capacity: config.table_capacity,
        relevancy_limit: config.relevancy_limit,
        ..CrawlConfig::default()
    };
    let focused = FocusedCrawler::new(base.clone(), fetcher, table.clone(), stoplist)?.run()?;
    let limit = focused.relevancy_limit;
    let bfs_config = CrawlConfig {
        mode: CrawlMode::Bfs,
        relevancy_limit: RelevancyLimit::Fixed(limit),
        ..base.clone()
    };
    let bfs = run_bfs(bfs_config.clone(), fetcher, table.clone(), stoplist)?;

    let labeled = |url: &str| fetcher.is_labeled_relevant(url);
    Ok(TopicComparison {
        topic: topic.to_string(),
        focused_curve: precision_curve(&focused.records)?,
        bfs_curve: precision_curve(&bfs.records)?,
        focused_label_curve: label_curve(&focused.records, labeled)?,
        bfs_label_curve: label_curve(&bfs.records, labeled)?,
        echo: TopicEcho {
            topic: topic.to_string(),
            focused: echo(CrawlMode::Focused, &base, limit, &table),
            bfs: echo(CrawlMode::Bfs, &bfs_config, bfs.relevancy_limit, &table),
        },
        focused,
        bfs,
    })
}

/// Lowercase file-name form of a topic name.
pub fn slug(topic: &str) -> String {
    let s: String = topic
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                '-'
            }
        })
        .collect();
    s.trim_matches('-').to_string()
}

/// Writes `summary.csv`, `config.json`, and for each topic the two crawl
/// logs and the two precision-curve files.
pub fn write_report(runs: &[TopicComparison], out_dir: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(out_dir)?;
    for run in runs {
        let s = slug(&run.topic);
        for (engine, outcome, judged, labeled) in [
            ("focused", &run.focused, &run.focused_curve, &run.focused_label_curve),
            ("bfs", &run.bfs, &run.bfs_curve, &run.bfs_label_curve),
        ] {
            let curve = BufWriter::new(File::create(out_dir.join(format!("{s}_{engine}.csv")))?);
            write_curves_csv(judged, labeled, curve)?;
            let log = BufWriter::new(File::create(out_dir.join(format!("{s}_{engine}_run.csv")))?);
            write_records_csv(&outcome.records, log)?;
        }
    }

    let mut w = csv::Writer::from_path(out_dir.join("summary.csv")).map_err(std::io::Error::from)?;
    w.write_record([
        "topic",
        "focused_precision",
        "bfs_precision",
        "focused_label_precision",
        "bfs_label_precision",
    ])
    .map_err(std::io::Error::from)?;
    for row in runs.iter().map(TopicComparison::summary) {
        w.write_record([
            row.topic.clone(),
            format!("{:.6}", row.focused_precision),
            format!("{:.6}", row.bfs_precision),
            format!("{:.6}", row.focused_label_precision),
            format!("{:.6}", row.bfs_label_precision),
        ])
        .map_err(std::io::Error::from)?;
    }
    w.flush()?;

    let echoes: Vec<&TopicEcho> = runs.iter().map(|r| &r.echo).collect();
    let mut f = BufWriter::new(File::create(out_dir.join("config.json"))?);
    serde_json::to_writer_pretty(&mut f, &echoes)?;
    f.write_all(b"\n")?;
    f.flush()?;
    Ok(())
}

/// Compares the engines on a graph file against a table built from a topic
/// corpus directory, and writes the report to `out_dir`.
pub fn run_comparison(
    graph: &Path,
    topic_dir: &Path,
    topic: &str,
    config: &ComparisonConfig,
    out_dir: &Path,
) -> Result<SummaryRow, HarnessError> {
    let stoplist = Stoplist::default();
    let fetcher = FixtureFetcher::load(graph)?;
    if fetcher.seeds().is_empty() {
        return Err(HarnessError::NoSeeds);
    }
    let table = topic::build_topic_table(topic_dir, topic, config.table_capacity, &stoplist)?;
    let seeds = fetcher.seeds().to_vec();
    let run = compare_topic(topic, &fetcher, &seeds, table, config, &stoplist)?;
    write_report(std::slice::from_ref(&run), out_dir)?;
    Ok(run.summary())
}

/// Number and length of generated topic documents.
pub const CORPUS_DOCS: usize = 20;
pub const CORPUS_WORDS: usize = 80;

/// Generates a graph and a topic corpus for `topic`, writes both under
/// `dir` (as `graph.json` and `corpus/`), and compares the engines on them.
pub fn synthetic_topic(
    topic: &str,
    params: &SynthGraphParams,
    config: &ComparisonConfig,
    dir: &Path,
) -> Result<TopicComparison, HarnessError> {
    let vocabulary = Vocabulary::builtin(topic).ok_or_else(|| HarnessError::UnknownTopic(topic.into()))?;
    let params = SynthGraphParams {
        vocabulary: vocabulary.clone(),
        ..params.clone()
    };
    let manifest = generate_graph(&params)?;
    let corpus_dir = dir.join("corpus");
    fs::create_dir_all(&corpus_dir)?;
    fs::write(dir.join("graph.json"), manifest.to_json())?;
    for (name, text) in generate_corpus(&vocabulary, CORPUS_DOCS, CORPUS_WORDS, params.rng_seed) {
        fs::write(corpus_dir.join(name), text)?;
    }

    let stoplist = Stoplist::default();
    let fetcher = FixtureFetcher::from_manifest(&manifest)?;
    let table = topic::build_topic_table(&corpus_dir, topic, config.table_capacity, &stoplist)?;
    compare_topic(topic, &fetcher, &manifest.seeds, table, config, &stoplist)
}

/// The four built-in topics, each on its own generated graph, with one
/// summary row per topic.
pub fn run_synthetic_suite(
    params: &SynthGraphParams,
    config: &ComparisonConfig,
    out_dir: &Path,
) -> Result<Vec<SummaryRow>, HarnessError> {
    let mut runs = Vec::new();
    for (i, t) in TOPICS.iter().enumerate() {
        let p = SynthGraphParams {
            rng_seed: params.rng_seed.wrapping_add(i as u64),
            ..params.clone()
        };
        let dir = out_dir.join("inputs").join(slug(t.name));
        runs.push(synthetic_topic(t.name, &p, config, &dir)?);
    }
    write_report(&runs, out_dir)?;
    Ok(runs.iter().map(TopicComparison::summary).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs() {
        assert_eq!(slug("E-Business"), "e-business");
        assert_eq!(slug("Sports"), "sports");
    }

    #[test]
    fn single_page_budget_gives_equal_curves() {
        let dir = tempfile::tempdir().unwrap();
        let params = SynthGraphParams {
            topic_cluster_size: 20,
            offtopic_cluster_size: 20,
            hidden_clusters: 1,
            hidden_cluster_size: 3,
            ..SynthGraphParams::default()
        };
        let config = ComparisonConfig {
            max_pages: 1,
            ..ComparisonConfig::default()
        };
        let run = synthetic_topic("Sports", &params, &config, dir.path()).unwrap();
        assert_eq!(run.focused_curve.len(), 1);
        assert_eq!(run.focused_curve, run.bfs_curve);
        assert_eq!(run.focused_label_curve, run.bfs_label_curve);
        let e = &run.echo;
        assert_eq!(
            (
                &e.focused.seeds,
                e.focused.max_pages,
                e.focused.relevancy_limit,
                &e.focused.table
            ),
            (&e.bfs.seeds, e.bfs.max_pages, e.bfs.relevancy_limit, &e.bfs.table)
        );
    }
}
