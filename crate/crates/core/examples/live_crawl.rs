//! A small focused crawl of the real web. Needs network access.
//!
//! cargo run --example live_crawl -- <table.tsv> <max-pages> <seed-url>...
//!
//! Fetches are spaced at least a second apart per host. The log goes to
//! stdout as CSV.

use std::time::Duration;

use focuscrawl::crawl::{write_records_csv, CrawlConfig, FocusedCrawler};
use focuscrawl::textproc::Stoplist;
use focuscrawl::topic::WeightTable;
use focuscrawl::webio::{LiveConfig, LiveFetcher};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.len() < 3 {
        eprintln!("usage: live_crawl <table.tsv> <max-pages> <seed-url>...");
        std::process::exit(2);
    }
    let table = WeightTable::load(&args[0])?;
    let config = CrawlConfig {
        seeds: args[2..].to_vec(),
        max_pages: args[1].parse()?,
        ..CrawlConfig::default()
    };
    let fetcher = LiveFetcher::new(LiveConfig {
        timeout: Duration::from_secs(15),
        ..LiveConfig::default()
    })?;
    let stoplist = Stoplist::default();
    let out = FocusedCrawler::new(config, &fetcher, table, &stoplist)?.run()?;

    write_records_csv(&out.records, std::io::stdout().lock())?;
    eprintln!(
        "{} fetched, {} relevant, limit {:.3}, table grew to {} terms",
        out.records.len(),
        out.db.len(),
        out.relevancy_limit,
        out.table.len()
    );
    for f in &out.failures {
        eprintln!("  failed {}: {}", f.url, f.error);
    }
    Ok(())
}
