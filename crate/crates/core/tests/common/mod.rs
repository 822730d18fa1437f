#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use focuscrawl::crawl::CrawlConfig;
use focuscrawl::topic::WeightTable;
use focuscrawl::webio::FixtureFetcher;

pub const DETOUR: &str = "http://detour.local";

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn detour() -> (FixtureFetcher, WeightTable) {
    let dir = data_dir().join("detour");
    let fetcher = FixtureFetcher::load(dir.join("graph.json")).unwrap();
    let table = WeightTable::load(dir.join("table.tsv")).unwrap();
    (fetcher, table)
}

pub fn detour_url(node: &str) -> String {
    format!("{DETOUR}/{node}")
}

pub fn detour_config(max_level: u32) -> CrawlConfig {
    CrawlConfig {
        seeds: vec![detour_url("root")],
        max_level,
        ..CrawlConfig::default()
    }
}

/// Short node names ("c", "root") of the given URLs, sorted.
pub fn nodes<'a>(urls: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut v: Vec<String> = urls
        .into_iter()
        .map(|u| u.strip_prefix(DETOUR).unwrap().trim_start_matches('/').to_string())
        .collect();
    v.sort();
    v
}

use focuscrawl::crawl::{FixedScores, FocusedCrawler, TableRow, TunnelStep};
use focuscrawl::textproc::Stoplist;
use focuscrawl::webio::{Manifest, ManifestLink, ManifestPage};

/// Irrelevant-table states of the hand-worked tunnel example, plus the
/// steps taken between them.
pub struct TunnelTableTrace {
    pub initial: Vec<(String, f64, u32)>,
    pub after_c_e: Vec<(String, f64, u32)>,
    pub after_b: Vec<(String, f64, u32)>,
    pub steps: Vec<TunnelStep>,
}

fn short(rows: Vec<TableRow>) -> Vec<(String, f64, u32)> {
    rows.into_iter()
        .map(|r| (nodes([r.url.as_str()]).remove(0), r.score, r.level))
        .collect()
}

/// Page P of the fixture is fetched and handled as irrelevant with link
/// scores injected (c 5, e 4, b 3, a 2, d 1; 0.5 for anything else), then
/// three tunnel steps are taken.
pub fn tunnel_table_replay() -> TunnelTableTrace {
    let (fetcher, table) = detour();
    let stop = Stoplist::default();
    let scores = [("c", 5.0), ("e", 4.0), ("b", 3.0), ("a", 2.0), ("d", 1.0)].map(|(n, s)| (detour_url(n), s));
    let mut crawler = FocusedCrawler::new(detour_config(2), &fetcher, table, &stop)
        .unwrap()
        .with_scorer(FixedScores::new(scores, 0.5));
    crawler.set_relevancy_limit(0.4);

    let (page, rel) = crawler.fetch_document(&detour_url("p")).unwrap();
    assert!(rel < 0.4, "P must be irrelevant, got {rel}");
    crawler.handle_irrelevant(&page, rel, 0);
    let initial = short(crawler.irrelevant_table().rows());
    let mut steps = vec![crawler.tunnel_step(), crawler.tunnel_step()];
    let after_c_e = short(crawler.irrelevant_table().rows());
    steps.push(crawler.tunnel_step());
    let after_b = short(crawler.irrelevant_table().rows());
    TunnelTableTrace {
        initial,
        after_c_e,
        after_b,
        steps,
    }
}

pub fn row(node: &str, score: f64, level: u32) -> (String, f64, u32) {
    (node.to_string(), score, level)
}

/// A page built from a handful of words, for hand-made graphs.
pub fn page(url: &str, title: &str, body: &str, links: &[(&str, &str)]) -> ManifestPage {
    ManifestPage {
        url: url.into(),
        title: title.into(),
        body: body.into(),
        links: links
            .iter()
            .map(|(href, anchor)| ManifestLink {
                href: href.to_string(),
                anchor: anchor.to_string(),
            })
            .collect(),
        ..ManifestPage::default()
    }
}

pub fn manifest(pages: Vec<ManifestPage>) -> Manifest {
    Manifest {
        pages,
        seeds: Vec::new(),
    }
}
