//! Builds a topic weight table from a directory of plain-text documents and
//! prints it heaviest first, with the raw tf·df weight behind each entry.
//!
//! cargo run --example build_table [corpus-dir] [topic-name] [capacity]
//!
//! Without arguments it uses the bundled business corpus, whose weights
//! come out as 1.00, 0.58, 0.45, 0.34 and 0.27.

use std::path::PathBuf;

use focuscrawl::textproc::Stoplist;
use focuscrawl::topic::{build_topic_table, corpus_stats, load_corpus_dir};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/business_corpus"));
    let topic = args.next().unwrap_or_else(|| "business".into());
    let capacity: usize = args.next().map(|c| c.parse()).transpose()?.unwrap_or(50);

    let stoplist = Stoplist::default();
    let docs = load_corpus_dir(&dir, &stoplist)?;
    let stats = corpus_stats(&docs)?;
    let table = build_topic_table(&dir, &topic, capacity, &stoplist)?;

    println!(
        "{} documents, {} distinct terms, table of {}\n",
        docs.len(),
        stats.tf_total.len(),
        table.len()
    );
    println!("{:<16}{:>8}{:>6}{:>10}{:>10}", "term", "tf", "df", "tf*df", "weight");
    for (term, weight) in table.ranked() {
        let tf = stats.tf_total.get(term).copied().unwrap_or(0);
        let df = stats.df.get(term).copied().unwrap_or(0);
        println!(
            "{:<16}{:>8}{:>6}{:>10}{:>10.4}",
            term.as_str(),
            tf,
            df,
            tf * u64::from(df),
            weight
        );
    }
    Ok(())
}
