//! One topic, both crawlers, same graph, budget and weight table. Prints
//! the two precision curves at checkpoints and writes the full report.
//!
//! cargo run --release --example bfs_vs_focused [topic] [out-dir]

use std::path::PathBuf;

use focuscrawl::harness::{synthetic_topic, write_report, ComparisonConfig, SynthGraphParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let topic = args.next().unwrap_or_else(|| "Politics".into());
    let out = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("focuscrawl-bfs-vs-focused"));
    let config = ComparisonConfig::default();
    let run = synthetic_topic(&topic, &SynthGraphParams::default(), &config, &out.join("inputs"))?;

    println!(
        "{topic}: relevancy limit {:.4}, budget {}\n",
        run.echo.focused.relevancy_limit, config.max_pages
    );
    println!("{:>8}{:>10}{:>10}{:>12}", "pages", "focused", "bfs", "via tunnel");
    let n = run.focused_curve.len().min(run.bfs_curve.len());
    for k in (1..=10).map(|i| (n * i / 10).max(1)) {
        let tunneled = run.focused.records[..k].iter().filter(|r| r.via_tunnel).count();
        println!(
            "{k:>8}{:>10.3}{:>10.3}{tunneled:>12}",
            run.focused_curve.points()[k - 1].precision,
            run.bfs_curve.points()[k - 1].precision,
        );
    }
    let s = run.summary();
    println!(
        "\nagainst labels: focused {:.3}, bfs {:.3} ({:.2}x)",
        s.focused_label_precision,
        s.bfs_label_precision,
        s.focused_label_precision / s.bfs_label_precision
    );
    write_report(std::slice::from_ref(&run), &out)?;
    println!("report in {}", out.display());
    Ok(())
}
