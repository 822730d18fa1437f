//! Tunneling on the ten-page example graph (root, p, q, a..h).
//!
//! First the irrelevant table is traced by hand: page p is irrelevant, its
//! links are given scores c 5, e 4, b 3, a 2, d 1, and the table is drained
//! step by step. Then full crawls with computed scores show which relevant
//! pages each `max_level` reaches, and what happens with tunneling off.
//!
//! cargo run --example tunnel_trace

use std::path::PathBuf;

use focuscrawl::crawl::{CrawlConfig, FixedScores, FocusedCrawler, IrrelevantTable, TunnelStep};
use focuscrawl::textproc::Stoplist;
use focuscrawl::topic::WeightTable;
use focuscrawl::webio::FixtureFetcher;

const HOST: &str = "http://detour.local/";

fn short(url: &str) -> &str {
    url.strip_prefix(HOST).unwrap_or(url)
}

fn show(table: &IrrelevantTable) {
    for r in table.rows() {
        println!("    {:<6}{:>6.2}  level {}", short(&r.url), r.score, r.level);
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/detour");
    let fetcher = FixtureFetcher::load(dir.join("graph.json"))?;
    let table = WeightTable::load(dir.join("table.tsv"))?;
    let stoplist = Stoplist::default();
    let config = |max_level| CrawlConfig {
        seeds: vec![format!("{HOST}root")],
        max_level,
        ..CrawlConfig::default()
    };

    let scores = [("c", 5.0), ("e", 4.0), ("b", 3.0), ("a", 2.0), ("d", 1.0)].map(|(n, s)| (format!("{HOST}{n}"), s));
    let mut crawler =
        FocusedCrawler::new(config(2), &fetcher, table.clone(), &stoplist)?.with_scorer(FixedScores::new(scores, 0.5));
    crawler.set_relevancy_limit(0.4);
    let (p, rel) = crawler.fetch_document(&format!("{HOST}p")).expect("p is in the graph");
    println!("p fetched, relevance {rel:.3}: irrelevant, its links go to the table");
    crawler.handle_irrelevant(&p, rel, 0);
    show(crawler.irrelevant_table());
    for _ in 0..3 {
        match crawler.tunnel_step() {
            TunnelStep::Relevant { url, relevance, .. } => {
                println!(
                    "  {} relevant ({relevance:.3}), its links one level deeper",
                    short(&url)
                )
            }
            TunnelStep::Irrelevant {
                url,
                relevance,
                demoted,
                ..
            } => {
                let d: Vec<_> = demoted.iter().map(|u| short(u)).collect();
                println!("  {} irrelevant ({relevance:.3}), demoted {d:?}", short(&url))
            }
            other => println!("  {other:?}"),
        }
        show(crawler.irrelevant_table());
    }

    println!("\nfull crawls from root:");
    for (label, cfg) in [
        ("max_level 0", config(0)),
        ("max_level 1", config(1)),
        ("max_level 2", config(2)),
        (
            "no tunneling",
            CrawlConfig {
                tunneling: false,
                ..config(2)
            },
        ),
    ] {
        let out = FocusedCrawler::new(cfg, &fetcher, table.clone(), &stoplist)?.run()?;
        let mut relevant: Vec<_> = out
            .records
            .iter()
            .filter(|r| r.relevant)
            .map(|r| short(&r.url))
            .collect();
        relevant.sort();
        let order: Vec<_> = out.records.iter().map(|r| short(&r.url)).collect();
        println!("  {label:<13} relevant {relevant:?}\n  {:<13} order    {order:?}", "");
    }
    Ok(())
}
