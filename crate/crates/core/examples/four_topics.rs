//! Focused crawler against breadth-first search on a generated graph for
//! each of the four built-in topics, printed as a final-precision table.
//!
//! cargo run --release --example four_topics [out-dir] [params.json]

use std::path::PathBuf;
use std::time::Instant;

use focuscrawl::harness::{synthetic_topic, vocab::TOPICS, write_report, ComparisonConfig, SynthGraphParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("focuscrawl-four-topics"));
    let config = ComparisonConfig::default();
    let params: SynthGraphParams = match std::env::args().nth(2) {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => SynthGraphParams::default(),
    };
    println!(
        "{} pages per graph, budget {}, maxLevel {}\n",
        params.page_count(),
        config.max_pages,
        config.max_level
    );
    println!(
        "{:<16}{:>10}{:>10}{:>12}{:>12}{:>10}{:>10}",
        "topic", "focused", "bfs", "focused*", "bfs*", "first10%", "last20%"
    );
    let mut runs = Vec::new();
    for (i, t) in TOPICS.iter().enumerate() {
        let started = Instant::now();
        let p = SynthGraphParams {
            rng_seed: params.rng_seed + i as u64,
            ..params.clone()
        };
        let run = synthetic_topic(t.name, &p, &config, &out.join("inputs").join(t.name))?;
        let s = run.summary();
        println!(
            "{:<16}{:>10.2}{:>10.2}{:>12.2}{:>12.2}{:>10.2}{:>10.2}   ({} + {} fetches, {:.1?})",
            s.topic,
            s.focused_precision,
            s.bfs_precision,
            s.focused_label_precision,
            s.bfs_label_precision,
            run.focused_curve.mean_between(0.0, 0.1),
            run.focused_curve.mean_between(0.8, 1.0),
            run.focused.records.len(),
            run.bfs.records.len(),
            started.elapsed()
        );
        runs.push(run);
    }
    write_report(&runs, &out)?;
    println!("\n* = against generator labels. Report written to {}", out.display());
    Ok(())
}
