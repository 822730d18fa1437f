use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::scoring::LinkCandidate;

/// Position of an entry: score descending, then insertion order, then URL.
#[derive(Debug, Clone)]
struct Slot {
    score: f64,
    seq: u64,
    url: String,
}

impl PartialEq for Slot {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Slot {}

impl PartialOrd for Slot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slot {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .score
            .total_cmp(&self.score)
            .then(self.seq.cmp(&other.seq))
            .then_with(|| self.url.cmp(&other.url))
    }
}

struct Entry {
    score: f64,
    seq: u64,
    candidate: LinkCandidate,
}

/// Max-score priority queue of link candidates with lookup by URL, so a
/// queued candidate can be rescored in place. Rescoring keeps the entry's
/// original insertion rank for tie-breaking.
#[derive(Default)]
pub struct ScoredQueue {
    order: BTreeSet<Slot>,
    entries: HashMap<String, Entry>,
    next_seq: u64,
}

impl ScoredQueue {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, url: &str) -> bool {
        self.entries.contains_key(url)
    }

    pub fn get(&self, url: &str) -> Option<(&LinkCandidate, f64)> {
        self.entries.get(url).map(|e| (&e.candidate, e.score))
    }

    /// Inserts a new candidate. Returns false (and drops it) if the URL is
    /// already queued.
    pub fn push(&mut self, candidate: LinkCandidate, score: f64) -> bool {
        if self.entries.contains_key(&candidate.url) {
            return false;
        }
        let seq = self.next_seq;
        self.next_seq += 1;
        self.order.insert(Slot {
            score,
            seq,
            url: candidate.url.clone(),
        });
        self.entries
            .insert(candidate.url.clone(), Entry { score, seq, candidate });
        true
    }

    pub fn peek(&self) -> Option<(&LinkCandidate, f64)> {
        let slot = self.order.first()?;
        self.get(&slot.url)
    }

    pub fn pop(&mut self) -> Option<(LinkCandidate, f64)> {
        let slot = self.order.pop_first()?;
        let e = self.entries.remove(&slot.url).expect("slot without entry");
        Some((e.candidate, e.score))
    }

    pub fn remove(&mut self, url: &str) -> Option<(LinkCandidate, f64)> {
        let e = self.entries.remove(url)?;
        self.order.remove(&Slot {
            score: e.score,
            seq: e.seq,
            url: url.to_string(),
        });
        Some((e.candidate, e.score))
    }

    /// Mutates a queued candidate and moves it to the score returned by
    /// `f`. Returns false if the URL is not queued.
    pub fn update(&mut self, url: &str, f: impl FnOnce(&mut LinkCandidate) -> f64) -> bool {
        let Some(e) = self.entries.get_mut(url) else {
            return false;
        };
        let old = Slot {
            score: e.score,
            seq: e.seq,
            url: url.to_string(),
        };
        let score = f(&mut e.candidate);
        if score.total_cmp(&e.score) != Ordering::Equal {
            self.order.remove(&old);
            e.score = score;
            self.order.insert(Slot { score, ..old });
        }
        true
    }

    /// Candidates in pop order.
    pub fn iter(&self) -> impl Iterator<Item = (&LinkCandidate, f64)> {
        self.order.iter().map(|s| {
            let e = &self.entries[&s.url];
            (&e.candidate, e.score)
        })
    }

    pub fn urls(&self) -> Vec<String> {
        self.order.iter().map(|s| s.url.clone()).collect()
    }
}

/// A row of the irrelevant table as shown in traces.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub url: String,
    pub score: f64,
    pub level: u32,
}

/// URLs found on irrelevant pages, ordered by link score, each carrying
/// the tunnel level it was discovered at.
#[derive(Default)]
pub struct IrrelevantTable {
    queue: ScoredQueue,
}

impl IrrelevantTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.queue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queue.is_empty()
    }

    pub fn contains(&self, url: &str) -> bool {
        self.queue.contains(url)
    }

    pub fn get(&self, url: &str) -> Option<(&LinkCandidate, f64)> {
        self.queue.get(url)
    }

    pub fn insert(&mut self, candidate: LinkCandidate, score: f64) -> bool {
        self.queue.push(candidate, score)
    }

    pub fn pop_max(&mut self) -> Option<(LinkCandidate, f64)> {
        self.queue.pop()
    }

    pub fn remove(&mut self, url: &str) -> Option<(LinkCandidate, f64)> {
        self.queue.remove(url)
    }

    pub fn update(&mut self, url: &str, f: impl FnOnce(&mut LinkCandidate) -> f64) -> bool {
        self.queue.update(url, f)
    }

    /// True while some entry may still be fetched.
    pub fn has_eligible(&self, max_level: u32) -> bool {
        self.queue.iter().any(|(c, _)| c.level <= max_level)
    }

    /// Raises by one the level of every entry that scores no higher than
    /// `score` and sits at `level`. Scores, and so the order, are untouched.
    /// Returns the demoted URLs.
    pub fn demote_siblings(&mut self, score: f64, level: u32) -> Vec<String> {
        let targets: Vec<(String, f64)> = self
            .queue
            .iter()
            .filter(|(c, s)| *s <= score && c.level == level)
            .map(|(c, s)| (c.url.clone(), s))
            .collect();
        for (url, s) in &targets {
            self.queue.update(url, |c| {
                c.level += 1;
                *s
            });
        }
        targets.into_iter().map(|(u, _)| u).collect()
    }

    pub fn rows(&self) -> Vec<TableRow> {
        self.queue
            .iter()
            .map(|(c, score)| TableRow {
                url: c.url.clone(),
                score,
                level: c.level,
            })
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LinkCandidate, f64)> {
        self.queue.iter()
    }
}
