use std::collections::{HashSet, VecDeque};

use super::focused::CrawlCore;
use super::{CrawlConfig, CrawlError, CrawlOutcome};
use crate::textproc::Stoplist;
use crate::topic::WeightTable;
use crate::webio::{PageDocument, PageSource};

/// Breadth-first baseline. Pages are fetched in discovery order with no
/// ranking and no irrelevant table, and the weight table is never expanded.
/// Every page is still scored so the two crawlers' logs are comparable.
pub fn run_bfs<S: PageSource>(
    config: CrawlConfig,
    source: S,
    table: WeightTable,
    stoplist: &Stoplist,
) -> Result<CrawlOutcome, CrawlError> {
    let mut core = CrawlCore::new(config, source, table, stoplist)?;
    let mut queue = VecDeque::new();
    let mut seen = HashSet::new();
    let mut enqueue = |doc: &PageDocument, queue: &mut VecDeque<String>| {
        for url in doc.outlink_urls() {
            if seen.insert(url.to_string()) {
                queue.push_back(url.to_string());
            }
        }
    };

    for (doc, rel) in core.fetch_seeds()? {
        if rel >= core.limit {
            core.store(&doc, rel);
        }
        enqueue(&doc, &mut queue);
    }

    while core.budget_left() {
        let Some(url) = queue.pop_front() else { break };
        if core.fetched.contains(&url) {
            continue;
        }
        let Some((doc, rel)) = core.fetch_page(&url) else {
            core.note_failure(&url, false, 0);
            continue;
        };
        if core.record(&doc.url, rel, false, 0) {
            core.store(&doc, rel);
        }
        enqueue(&doc, &mut queue);
    }
    Ok(core.into_outcome())
}
