//! Scores one HTML page against a weight table: the page's relevance, then
//! every out-link ranked by its link score with the four addends shown.
//!
//! cargo run --example score_page [page.html] [table.tsv] [page-url]
//!
//! Without arguments a small built-in page is scored against the business
//! table bundled with the detour graph.

use std::path::PathBuf;
use std::time::SystemTime;

use focuscrawl::scoring::{positional_weights, relevance, score_breakdown, LinkCandidate};
use focuscrawl::textproc::Stoplist;
use focuscrawl::topic::WeightTable;
use focuscrawl::webio::{parse_page, RawPage};

const SAMPLE: &str = r#"<html><head><title>Business solutions for your corporation</title></head>
<body>
<p>We help every customer with management and business planning.</p>
<a href="/services/customer-management.html">Customer management</a>
<a href="/blog/gardening">Spring gardening tips</a>
<a href="http://www.example.com/corporate-solutions">Corporate business solutions</a>
<a href="/contact">Contact us</a>
</body></html>"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let html = match args.next() {
        Some(path) => std::fs::read(path)?,
        None => SAMPLE.as_bytes().to_vec(),
    };
    let table_path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/detour/table.tsv"));
    let url = args.next().unwrap_or_else(|| "http://shop.test/index.html".into());

    let table = WeightTable::load(table_path)?;
    let stoplist = Stoplist::default();
    let raw = RawPage {
        url,
        content_type: "text/html".into(),
        body: html,
        fetched_at: SystemTime::now(),
        truncated: false,
    };
    let page = parse_page(&raw, &stoplist)?;
    let rel = relevance(&table, &positional_weights(&page.title_terms, &page.body_terms))?;
    println!("{}  relevance {rel:.4}\n", page.url);

    let mut rows: Vec<_> = page
        .links
        .iter()
        .map(|l| {
            let mut c = LinkCandidate::new(l.url.clone(), l.anchor_terms.clone(), &stoplist);
            c.add_parent(&page.url, rel);
            (l.url.clone(), score_breakdown(&c, &table))
        })
        .collect();
    rows.sort_by(|a, b| b.1.total().total_cmp(&a.1.total()));
    println!(
        "{:>7} {:>7} {:>7} {:>7} {:>7}  link",
        "score", "url", "anchor", "inlinks", "parents"
    );
    for (url, s) in rows {
        println!(
            "{:>7.4} {:>7.4} {:>7.4} {:>7} {:>7.4}  {url}",
            s.total(),
            s.url_score,
            s.anchor_score,
            s.relevant_inlinks,
            s.parent_relevance
        );
    }
    Ok(())
}
