use std::collections::{HashMap, HashSet, VecDeque};

use super::{
    resolve_relevancy_limit, CompositeScorer, CrawlConfig, CrawlError, CrawlOutcome, CrawlRecord, FetchFailure,
    Frontier, IrrelevantTable, LinkScorer, RelevancyLimit, RelevantPageDb, StoredPage,
};
use crate::scoring::{self, LinkCandidate};
use crate::textproc::Stoplist;
use crate::topic::{self, WeightTable};
use crate::webio::{self, PageDocument, PageLink, PageSource};

pub(super) fn page_relevance(table: &WeightTable, doc: &PageDocument) -> f64 {
    let weights = scoring::positional_weights(&doc.title_terms, &doc.body_terms);
    scoring::relevance(table, &weights).unwrap_or(0.0)
}

/// State shared by both engines: fetching, the fetched set, the crawl log
/// and the relevant-page database.
pub(super) struct CrawlCore<'a, S> {
    pub config: CrawlConfig,
    pub source: S,
    pub stoplist: &'a Stoplist,
    pub table: WeightTable,
    pub fetched: HashSet<String>,
    pub db: RelevantPageDb,
    pub records: Vec<CrawlRecord>,
    pub failures: Vec<FetchFailure>,
    pub limit: f64,
}

impl<'a, S: PageSource> CrawlCore<'a, S> {
    pub fn new(config: CrawlConfig, source: S, table: WeightTable, stoplist: &'a Stoplist) -> Result<Self, CrawlError> {
        if table.is_empty() {
            return Err(CrawlError::EmptyTable);
        }
        let limit = match config.relevancy_limit {
            RelevancyLimit::Fixed(v) => v,
            // placeholder until the seeds are in
            RelevancyLimit::Auto => 1.0,
        };
        Ok(Self {
            config,
            source,
            stoplist,
            table,
            fetched: HashSet::new(),
            db: RelevantPageDb::new(),
            records: Vec::new(),
            failures: Vec::new(),
            limit,
        })
    }

    pub fn budget_left(&self) -> bool {
        self.records.len() < self.config.max_pages
    }

    /// Fetches, parses and scores a page, marking the URL (and any redirect
    /// target) fetched. Failures are logged but not recorded.
    pub fn fetch_page(&mut self, url: &str) -> Option<(PageDocument, f64)> {
        self.fetched.insert(url.to_string());
        let fail = |core: &mut Self, error: String| {
            core.failures.push(FetchFailure {
                url: url.to_string(),
                error,
            });
            None
        };
        let raw = match self.source.fetch(url) {
            Ok(raw) => raw,
            Err(e) => return fail(self, e.to_string()),
        };
        if raw.url != url && !self.fetched.insert(raw.url.clone()) {
            return fail(self, format!("redirects to already fetched {}", raw.url));
        }
        let doc = match webio::parse_page(&raw, self.stoplist) {
            Ok(doc) => doc,
            Err(e) => return fail(self, e.to_string()),
        };
        let rel = page_relevance(&self.table, &doc);
        Some((doc, rel))
    }

    /// Appends a crawl record and returns whether the page counts as relevant.
    pub fn record(&mut self, url: &str, relevance: f64, via_tunnel: bool, level: u32) -> bool {
        let relevant = relevance >= self.limit;
        self.records.push(CrawlRecord {
            seq: self.records.len() + 1,
            url: url.to_string(),
            relevance,
            relevant,
            via_tunnel,
            level,
        });
        relevant
    }

    pub fn note_failure(&mut self, url: &str, via_tunnel: bool, level: u32) {
        if self.config.count_failures {
            self.records.push(CrawlRecord {
                seq: self.records.len() + 1,
                url: url.to_string(),
                relevance: 0.0,
                relevant: false,
                via_tunnel,
                level,
            });
        }
    }

    /// Fetches the seeds in order, resolves the relevancy limit and logs
    /// the seed fetches. Returns the seed pages that could be fetched.
    pub fn fetch_seeds(&mut self) -> Result<Vec<(PageDocument, f64)>, CrawlError> {
        if self.config.seeds.is_empty() {
            return Err(CrawlError::NoSeeds);
        }
        let mut seeds = Vec::new();
        for s in &self.config.seeds {
            let url = webio::canonical_url(s).ok_or_else(|| CrawlError::InvalidSeed(s.clone()))?;
            if !seeds.contains(&url) {
                seeds.push(url);
            }
        }

        let mut outcomes = Vec::new();
        let mut counted = 0;
        for url in seeds {
            if counted >= self.config.max_pages {
                break;
            }
            if self.fetched.contains(&url) {
                continue;
            }
            let outcome = self.fetch_page(&url);
            if outcome.is_some() || self.config.count_failures {
                counted += 1;
            }
            outcomes.push((url, outcome));
        }

        let relevances: Vec<f64> = outcomes
            .iter()
            .filter_map(|(_, o)| o.as_ref().map(|(_, r)| *r))
            .collect();
        if relevances.is_empty() {
            return Err(CrawlError::SeedsUnreachable);
        }
        if self.config.relevancy_limit == RelevancyLimit::Auto {
            self.limit = resolve_relevancy_limit(&relevances)?;
        }

        let mut pages = Vec::new();
        for (url, outcome) in outcomes {
            match outcome {
                Some((doc, rel)) => {
                    self.record(&doc.url, rel, false, 0);
                    pages.push((doc, rel));
                }
                None => self.note_failure(&url, false, 0),
            }
        }
        Ok(pages)
    }

    pub fn store(&mut self, doc: &PageDocument, relevance: f64) {
        self.db.insert(StoredPage {
            url: doc.url.clone(),
            relevance,
            terms: doc.term_counts.clone(),
            outlinks: doc.outlink_urls().map(str::to_string).collect(),
        });
    }

    pub fn into_outcome(self) -> CrawlOutcome {
        CrawlOutcome {
            records: self.records,
            db: self.db,
            relevancy_limit: self.limit,
            table: self.table,
            failures: self.failures,
        }
    }
}

/// What one pass over the irrelevant table did.
#[derive(Debug, Clone, PartialEq)]
pub enum TunnelStep {
    /// The table was empty.
    Empty,
    /// The top entry was past `max_level` and was dropped unfetched.
    Expired {
        url: String,
        level: u32,
    },
    /// The fetch failed; the entry is gone.
    Failed {
        url: String,
    },
    Relevant {
        url: String,
        level: u32,
        relevance: f64,
    },
    Irrelevant {
        url: String,
        level: u32,
        relevance: f64,
        demoted: Vec<String>,
    },
}

impl TunnelStep {
    /// Whether a page was downloaded and scored.
    pub fn fetched(&self) -> bool {
        matches!(self, Self::Relevant { .. } | Self::Irrelevant { .. })
    }
}

/// Best-first topical crawler with tunneling through irrelevant pages.
///
/// Relevant pages push their out-links into the frontier. An irrelevant
/// frontier page sends its out-links to the irrelevant table at level 0,
/// and the table is then drained highest score first: a relevant tunnel
/// page adds its out-links one level deeper (while below `max_level`), an
/// irrelevant one pushes every same-level entry that scores no higher one
/// level deeper and, unless `tunnel_through_irrelevant` is off, queues its
/// own out-links one level deeper too. Entries past `max_level` are never fetched. All
/// tunnel fetches are charged to the same `max_pages` budget.
///
/// A relevant page first reached through the tunnel keeps its out-links
/// out of the frontier. If a relevant frontier page later links to it, its
/// out-links are handed to the frontier as though it had been reached
/// there.
pub struct FocusedCrawler<'a, S> {
    core: CrawlCore<'a, S>,
    scorer: Box<dyn LinkScorer + 'a>,
    frontier: Frontier,
    irrelevant: IrrelevantTable,
    /// In-link counts from the relevant-page database.
    db_inlinks: HashMap<String, u32>,
    /// Relevant tunnel pages whose out-links have not reached the frontier.
    held: HashMap<String, (f64, Vec<PageLink>)>,
    started: bool,
}

impl<'a, S: PageSource> FocusedCrawler<'a, S> {
    pub fn new(config: CrawlConfig, source: S, table: WeightTable, stoplist: &'a Stoplist) -> Result<Self, CrawlError> {
        Ok(Self {
            core: CrawlCore::new(config, source, table, stoplist)?,
            scorer: Box::new(CompositeScorer),
            frontier: Frontier::new(),
            irrelevant: IrrelevantTable::new(),
            db_inlinks: HashMap::new(),
            held: HashMap::new(),
            started: false,
        })
    }

    pub fn with_scorer(mut self, scorer: impl LinkScorer + 'a) -> Self {
        self.scorer = Box::new(scorer);
        self
    }

    /// Overrides the relevancy limit, e.g. when driving steps by hand.
    pub fn set_relevancy_limit(&mut self, limit: f64) {
        self.core.limit = limit;
    }

    pub fn relevancy_limit(&self) -> f64 {
        self.core.limit
    }

    pub fn frontier(&self) -> &Frontier {
        &self.frontier
    }

    pub fn irrelevant_table(&self) -> &IrrelevantTable {
        &self.irrelevant
    }

    pub fn records(&self) -> &[CrawlRecord] {
        &self.core.records
    }

    pub fn db(&self) -> &RelevantPageDb {
        &self.core.db
    }

    pub fn table(&self) -> &WeightTable {
        &self.core.table
    }

    pub fn is_fetched(&self, url: &str) -> bool {
        self.core.fetched.contains(url)
    }

    /// Runs the crawl to completion, starting it first if needed.
    pub fn run(mut self) -> Result<CrawlOutcome, CrawlError> {
        if !self.started {
            self.start()?;
        }
        let max_level = self.core.config.max_level;
        while self.core.budget_left() {
            if let Some((cand, _)) = self.frontier.pop() {
                self.visit(&cand.url);
            } else if self.core.config.tunneling && self.irrelevant.has_eligible(max_level) {
                self.drain_tunnel();
            } else {
                break;
            }
        }
        Ok(self.core.into_outcome())
    }

    /// Fetches the seeds and queues their links. Seed links always go to
    /// the frontier, whatever the seed's relevance.
    pub fn start(&mut self) -> Result<(), CrawlError> {
        let pages = self.core.fetch_seeds()?;
        self.started = true;
        for (doc, rel) in pages {
            if rel >= self.core.limit {
                self.store_relevant(&doc, rel);
            }
            self.links_to_frontier(&doc.url, rel, doc.links);
        }
        Ok(())
    }

    /// Downloads and scores a page outside the crawl loop. The URL counts
    /// as fetched; nothing is recorded.
    pub fn fetch_document(&mut self, url: &str) -> Option<(PageDocument, f64)> {
        self.fetch(url)
    }

    fn fetch(&mut self, url: &str) -> Option<(PageDocument, f64)> {
        self.frontier.remove(url);
        self.irrelevant.remove(url);
        let (doc, rel) = self.core.fetch_page(url)?;
        if doc.url != url {
            self.frontier.remove(&doc.url);
            self.irrelevant.remove(&doc.url);
        }
        Some((doc, rel))
    }

    fn visit(&mut self, url: &str) {
        if self.core.fetched.contains(url) {
            return;
        }
        let Some((doc, rel)) = self.fetch(url) else {
            self.core.note_failure(url, false, 0);
            return;
        };
        if self.core.record(&doc.url, rel, false, 0) {
            self.store_relevant(&doc, rel);
            self.links_to_frontier(&doc.url, rel, doc.links);
        } else if self.core.config.tunneling {
            self.handle_irrelevant(&doc, rel, 0);
            self.drain_tunnel();
        }
    }

    /// Tunnel steps until the budget runs out or nothing eligible is left.
    pub fn drain_tunnel(&mut self) {
        while self.core.budget_left() && self.irrelevant.has_eligible(self.core.config.max_level) {
            self.tunnel_step();
        }
    }

    fn score(&self, cand: &LinkCandidate) -> f64 {
        self.scorer.score(cand, &self.core.table)
    }

    fn new_candidate(&self, link: &PageLink, parent: &str, parent_rel: f64, level: u32) -> LinkCandidate {
        let mut cand = LinkCandidate::new(link.url.clone(), link.anchor_terms.clone(), self.core.stoplist);
        cand.add_parent(parent, parent_rel);
        cand.relevant_inlinks = self.db_inlinks.get(&link.url).copied().unwrap_or(0);
        cand.level = level;
        cand
    }

    /// Queues the out-links of an irrelevant page in the irrelevant table at
    /// `level`. Links already fetched are skipped; links already in the
    /// frontier stay there and just gain a parent. A link already in the
    /// table keeps the lower of its two levels.
    pub fn handle_irrelevant(&mut self, page: &PageDocument, relevance: f64, level: u32) {
        self.links_to_table(&page.url, relevance, &page.links, level);
    }

    fn links_to_table(&mut self, parent: &str, parent_rel: f64, links: &[PageLink], level: u32) {
        let (scorer, table) = (&self.scorer, &self.core.table);
        for link in links {
            let url = link.url.as_str();
            if self.core.fetched.contains(url) {
                continue;
            }
            if self.frontier.contains(url) {
                self.frontier.update(url, |c| {
                    c.add_parent(parent, parent_rel);
                    scorer.score(c, table)
                });
            } else if self.irrelevant.contains(url) {
                self.irrelevant.update(url, |c| {
                    c.add_parent(parent, parent_rel);
                    c.level = c.level.min(level);
                    scorer.score(c, table)
                });
            } else {
                let cand = self.new_candidate(link, parent, parent_rel, level);
                let score = self.score(&cand);
                self.irrelevant.insert(cand, score);
            }
        }
    }

    /// Queues out-links of a relevant page in the frontier, pulling them out
    /// of the irrelevant table if needed, and releases the held links of
    /// any tunnel-fetched relevant page it points at.
    fn links_to_frontier(&mut self, parent: &str, parent_rel: f64, links: Vec<PageLink>) {
        let mut work = VecDeque::from([(parent.to_string(), parent_rel, links)]);
        while let Some((parent, parent_rel, links)) = work.pop_front() {
            for link in &links {
                let url = link.url.as_str();
                if self.core.fetched.contains(url) {
                    if let Some((rel, held)) = self.held.remove(url) {
                        work.push_back((link.url.clone(), rel, held));
                    }
                    continue;
                }
                let (scorer, table) = (&self.scorer, &self.core.table);
                if self.frontier.contains(url) {
                    self.frontier.update(url, |c| {
                        c.add_parent(&parent, parent_rel);
                        scorer.score(c, table)
                    });
                    continue;
                }
                let cand = match self.irrelevant.remove(url) {
                    Some((mut c, _)) => {
                        c.add_parent(&parent, parent_rel);
                        c.level = 0;
                        c
                    }
                    None => self.new_candidate(link, &parent, parent_rel, 0),
                };
                let score = self.score(&cand);
                self.frontier.push(cand, score);
            }
        }
    }

    fn store_relevant(&mut self, doc: &PageDocument, relevance: f64) {
        self.core.store(doc, relevance);
        let (scorer, table) = (&self.scorer, &self.core.table);
        for url in doc.outlink_urls() {
            let n = self.db_inlinks.entry(url.to_string()).or_insert(0);
            *n += 1;
            let n = *n;
            let bump = |c: &mut LinkCandidate| {
                c.relevant_inlinks = n;
                scorer.score(c, table)
            };
            if !self.frontier.update(url, bump) {
                self.irrelevant.update(url, bump);
            }
        }
        if self.core.config.expand_table {
            let expanded = topic::expand_table(&self.core.table, &doc.term_counts, relevance);
            if expanded.len() != self.core.table.len() {
                self.core.table = expanded;
                self.rescore_all();
            }
        }
    }

    fn rescore_all(&mut self) {
        let (scorer, table) = (&self.scorer, &self.core.table);
        for url in self.frontier.urls() {
            self.frontier.update(&url, |c| scorer.score(c, table));
        }
        let urls: Vec<String> = self.irrelevant.iter().map(|(c, _)| c.url.clone()).collect();
        for url in urls {
            self.irrelevant.update(&url, |c| scorer.score(c, table));
        }
    }

    /// Takes the best entry off the irrelevant table and processes it.
    pub fn tunnel_step(&mut self) -> TunnelStep {
        let Some((cand, score)) = self.irrelevant.pop_max() else {
            return TunnelStep::Empty;
        };
        let level = cand.level;
        if level > self.core.config.max_level {
            return TunnelStep::Expired { url: cand.url, level };
        }
        let Some((doc, rel)) = self.fetch(&cand.url) else {
            self.core.note_failure(&cand.url, true, level);
            return TunnelStep::Failed { url: cand.url };
        };
        let url = doc.url.clone();
        if self.core.record(&url, rel, true, level) {
            self.store_relevant(&doc, rel);
            if self.core.config.tunnel_relevant_links_to_frontier {
                self.links_to_frontier(&url, rel, doc.links);
            } else {
                if level < self.core.config.max_level {
                    self.links_to_table(&url, rel, &doc.links, level + 1);
                }
                self.held.insert(url.clone(), (rel, doc.links));
            }
            TunnelStep::Relevant {
                url,
                level,
                relevance: rel,
            }
        } else {
            let demoted = self.irrelevant.demote_siblings(score, level);
            if self.core.config.tunnel_through_irrelevant && level < self.core.config.max_level {
                self.links_to_table(&url, rel, &doc.links, level + 1);
            }
            TunnelStep::Irrelevant {
                url,
                level,
                relevance: rel,
                demoted,
            }
        }
    }
}
