//! Generates a synthetic labeled graph and prints its make-up: page counts
//! per region, how many pages sit behind tunnel gates, and how far each
//! hidden page is from the seeds.
//!
//! cargo run --example gen_graph [topic] [rng-seed] [out.json]

use std::collections::{HashMap, VecDeque};

use focuscrawl::harness::{generate_graph, SynthGraphParams, Vocabulary};

fn region(url: &str) -> &str {
    let path = url.strip_prefix("http://synth.test/").unwrap_or(url);
    let dir = path.split('/').next().unwrap_or("");
    dir.trim_end_matches(|c: char| c.is_ascii_digit())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let topic = args.next().unwrap_or_else(|| "Nanotechnology".into());
    let rng_seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let params = SynthGraphParams {
        vocabulary: Vocabulary::builtin(&topic).ok_or("unknown topic")?,
        rng_seed,
        ..SynthGraphParams::default()
    };
    let m = generate_graph(&params)?;

    let mut counts: HashMap<&str, (usize, usize)> = HashMap::new();
    for p in &m.pages {
        let e = counts.entry(region(&p.url)).or_default();
        e.0 += 1;
        e.1 += usize::from(p.label.is_some());
    }
    println!("{} pages, {} seeds, topic {topic}", m.pages.len(), m.seeds.len());
    let mut regions: Vec<_> = counts.into_iter().collect();
    regions.sort();
    for (r, (n, labeled)) in regions {
        println!("  {r:<8}{n:>6} pages, {labeled:>4} labeled relevant");
    }

    // hop distance from the seeds, over the link graph
    let links: HashMap<&str, Vec<&str>> = m
        .pages
        .iter()
        .map(|p| (p.url.as_str(), p.links.iter().map(|l| l.href.as_str()).collect()))
        .collect();
    let mut dist: HashMap<&str, usize> = m.seeds.iter().map(|s| (s.as_str(), 0)).collect();
    let mut queue: VecDeque<&str> = m.seeds.iter().map(String::as_str).collect();
    while let Some(u) = queue.pop_front() {
        let d = dist[u];
        for &v in links.get(u).into_iter().flatten() {
            if !dist.contains_key(v) {
                dist.insert(v, d + 1);
                queue.push_back(v);
            }
        }
    }
    let mut hidden: Vec<usize> = m
        .pages
        .iter()
        .filter(|p| region(&p.url) == "deep")
        .map(|p| dist[p.url.as_str()])
        .collect();
    hidden.sort();
    println!(
        "  hidden pages: nearest {} hops from a seed, farthest {}",
        hidden.first().unwrap_or(&0),
        hidden.last().unwrap_or(&0)
    );

    if let Some(out) = args.next() {
        std::fs::write(&out, m.to_json())?;
        println!("written to {out}");
    }
    Ok(())
}
