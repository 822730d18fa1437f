//! Topic weight table: tf·df keyword weighting over a seed corpus,
//! normalization by the heaviest keyword, and expansion from highly
//! relevant crawled pages.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::textproc::{self, Stoplist, Term, TermCounts};
use crate::webio;

/// Pages at or above this relevance contribute a keyword to the table.
pub const EXPANSION_THRESHOLD: f64 = 0.9;

#[derive(Debug, Error)]
pub enum TopicError {
    #[error("topic corpus is empty")]
    EmptyCorpus,
    #[error("table capacity must be at least 1")]
    InvalidCapacity,
    #[error("weight table line {line}: {reason}")]
    TableFormat { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Summed term frequency and document frequency over a seed corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusStats {
    pub tf_total: BTreeMap<Term, u64>,
    pub df: BTreeMap<Term, u32>,
    pub doc_count: usize,
}

impl CorpusStats {
    /// `tf * df` for every term.
    pub fn raw_weights(&self) -> impl Iterator<Item = (&Term, f64)> + '_ {
        self.tf_total
            .iter()
            .map(|(t, &tf)| (t, tf as f64 * f64::from(self.df[t])))
    }
}

pub fn corpus_stats<D: AsRef<[Term]>>(documents: &[D]) -> Result<CorpusStats, TopicError> {
    if documents.is_empty() {
        return Err(TopicError::EmptyCorpus);
    }
    let mut tf_total = BTreeMap::new();
    let mut df = BTreeMap::new();
    for doc in documents {
        let counts = textproc::term_frequencies(doc.as_ref());
        for (term, c) in counts.iter() {
            *tf_total.entry(term.clone()).or_insert(0u64) += u64::from(c);
            *df.entry(term.clone()).or_insert(0u32) += 1;
        }
    }
    Ok(CorpusStats {
        tf_total,
        df,
        doc_count: documents.len(),
    })
}

/// Topic keywords with weights in (0, 1]. This is the crawl target.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    entries: BTreeMap<Term, f64>,
    capacity: usize,
}

impl WeightTable {
    pub fn get(&self, term: &str) -> Option<f64> {
        self.entries.get(term).copied()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.entries.contains_key(term)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Entries in lexicographic term order.
    pub fn iter(&self) -> impl Iterator<Item = (&Term, f64)> {
        self.entries.iter().map(|(t, &w)| (t, w))
    }

    /// Entries by descending weight, then term.
    pub fn ranked(&self) -> Vec<(&Term, f64)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// Σ w², the table's squared vector norm.
    pub fn norm_squared(&self) -> f64 {
        self.entries.values().map(|w| w * w).sum()
    }

    /// Inserts each term at weight 1.0 unless it is already present.
    pub fn ensure_keywords<'a>(&mut self, terms: impl IntoIterator<Item = &'a Term>) {
        for t in terms {
            self.entries.entry(t.clone()).or_insert(1.0);
        }
    }

    /// Builds a table directly from `(term, weight)` pairs that are already
    /// normalized. Weights outside (0, 1] are rejected.
    pub fn from_weights(weights: impl IntoIterator<Item = (Term, f64)>) -> Result<Self, TopicError> {
        let mut entries = BTreeMap::new();
        for (i, (t, w)) in weights.into_iter().enumerate() {
            if !(w > 0.0 && w <= 1.0) {
                return Err(TopicError::TableFormat {
                    line: i + 1,
                    reason: format!("weight {w} for {t} is outside (0, 1]"),
                });
            }
            entries.insert(t, w);
        }
        let capacity = entries.len().max(1);
        Ok(Self { entries, capacity })
    }

    /// `term<TAB>weight` lines, 6 decimals, descending weight then term.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (t, w) in self.ranked() {
            let _ = writeln!(out, "{t}\t{w:.6}");
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self, TopicError> {
        let mut pairs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let bad = |reason: String| TopicError::TableFormat { line: i + 1, reason };
            if line.trim().is_empty() {
                continue;
            }
            let (term, weight) = line
                .split_once('\t')
                .ok_or_else(|| bad("expected term<TAB>weight".into()))?;
            let term = Term::new(term.trim()).ok_or_else(|| bad(format!("bad term {term:?}")))?;
            let weight: f64 = weight
                .trim()
                .parse()
                .map_err(|e| bad(format!("bad weight {weight:?}: {e}")))?;
            if !(weight > 0.0 && weight <= 1.0) {
                return Err(bad(format!("weight {weight} is outside (0, 1]")));
            }
            pairs.push((term, weight));
        }
        Self::from_weights(pairs)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TopicError> {
        Self::from_tsv(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), TopicError> {
        std::fs::write(path, self.to_tsv())?;
        Ok(())
    }
}

/// Keeps the `capacity` heaviest terms by `tf * df` and divides by the
/// heaviest. Equal raw weights are ordered by term.
pub fn build_weight_table(stats: &CorpusStats, capacity: usize) -> Result<WeightTable, TopicError> {
    table_from_raw_weights(stats.raw_weights().map(|(t, w)| (t.clone(), w)), capacity)
}

/// The truncation and normalization half of [`build_weight_table`], over
/// arbitrary positive raw weights.
pub fn table_from_raw_weights(
    raw: impl IntoIterator<Item = (Term, f64)>,
    capacity: usize,
) -> Result<WeightTable, TopicError> {
    if capacity == 0 {
        return Err(TopicError::InvalidCapacity);
    }
    let mut ranked: Vec<(Term, f64)> = raw.into_iter().filter(|(_, w)| *w > 0.0).collect();
    if ranked.is_empty() {
        return Err(TopicError::EmptyCorpus);
    }
    ranked.sort_by(|a, b| match b.1.total_cmp(&a.1) {
        Ordering::Equal => a.0.cmp(&b.0),
        o => o,
    });
    ranked.truncate(capacity);
    let max = ranked[0].1;
    let entries = ranked
        .into_iter()
        .enumerate()
        // exact 1.0 for the heaviest; w / w is not guaranteed to be 1.0 for
        // every float, so don't rely on the division
        .map(|(i, (t, w))| (t, if i == 0 { 1.0 } else { w / max }))
        .collect();
    Ok(WeightTable { entries, capacity })
}

/// Adds the page's most frequent term at weight `page_relevance` when the
/// page is highly relevant. Existing keywords are never overwritten.
pub fn expand_table(table: &WeightTable, page_terms: &TermCounts, page_relevance: f64) -> WeightTable {
    let mut out = table.clone();
    if page_relevance < EXPANSION_THRESHOLD {
        return out;
    }
    if let Some(top) = page_terms.most_frequent() {
        out.entries.entry(top.clone()).or_insert(page_relevance.min(1.0));
    }
    out
}

/// Reads every regular file in `dir` (sorted by file name) and runs it
/// through the text pipeline. Files ending in `.html`/`.htm` are parsed as
/// HTML (title + visible text); anything else is read as plain text.
pub fn load_corpus_dir(dir: impl AsRef<Path>, stoplist: &Stoplist) -> Result<Vec<Vec<Term>>, TopicError> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    let mut docs = Vec::with_capacity(paths.len());
    for path in paths {
        let bytes = std::fs::read(&path)?;
        let text = String::from_utf8_lossy(&bytes);
        let is_html = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| e.eq_ignore_ascii_case("html") || e.eq_ignore_ascii_case("htm"));
        let terms = if is_html {
            let (title, body) = webio::extract_text(&text);
            let mut t = textproc::analyze(&title, stoplist);
            t.extend(textproc::analyze(&body, stoplist));
            t
        } else {
            textproc::analyze(&text, stoplist)
        };
        docs.push(terms);
    }
    Ok(docs)
}

/// Builds the table for `topic_name` from a corpus directory. The topic
/// name's own terms are forced in at weight 1.0 if the corpus left them out.
pub fn build_topic_table(
    dir: impl AsRef<Path>,
    topic_name: &str,
    capacity: usize,
    stoplist: &Stoplist,
) -> Result<WeightTable, TopicError> {
    let docs = load_corpus_dir(dir, stoplist)?;
    let stats = corpus_stats(&docs)?;
    let mut table = build_weight_table(&stats, capacity)?;
    table.ensure_keywords(&textproc::analyze(topic_name, stoplist));
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> Term {
        Term::new(s).unwrap()
    }

    fn doc(v: &[&str]) -> Vec<Term> {
        v.iter().map(|s| t(s)).collect()
    }

    #[test]
    fn stats_examples() {
        let stats = corpus_stats(&[doc(&["busi", "busi"]), doc(&["busi", "manag"])]).unwrap();
        assert_eq!(stats.tf_total[&t("busi")], 3);
        assert_eq!(stats.tf_total[&t("manag")], 1);
        assert_eq!(stats.df[&t("busi")], 2);
        assert_eq!(stats.df[&t("manag")], 1);
        assert_eq!(stats.doc_count, 2);

        let single = corpus_stats(&[doc(&["aterm"])]).unwrap();
        assert_eq!(single.df[&t("aterm")], 1);

        assert!(matches!(corpus_stats::<Vec<Term>>(&[]), Err(TopicError::EmptyCorpus)));
    }

    #[test]
    fn business_corpus_ratios() {
        let raw = [("busi", 200.0), ("manag", 116.0), ("other", 10.0)];
        let table = table_from_raw_weights(raw.iter().map(|(s, w)| (t(s), *w)), 2).unwrap();
        assert_eq!(table.len(), 2);
        assert_eq!(table.get("busi"), Some(1.0));
        assert!((table.get("manag").unwrap() - 0.58).abs() < 1e-12);
        assert!(!table.contains("other"));
    }

    #[test]
    fn single_term_gets_weight_one() {
        let stats = corpus_stats(&[doc(&["solo", "solo"])]).unwrap();
        let table = build_weight_table(&stats, 50).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table.get("solo"), Some(1.0));
    }

    #[test]
    fn capacity_zero_rejected() {
        let stats = corpus_stats(&[doc(&["solo"])]).unwrap();
        assert!(matches!(
            build_weight_table(&stats, 0),
            Err(TopicError::InvalidCapacity)
        ));
    }

    #[test]
    fn truncation_ties_are_lexicographic() {
        let raw = [("zed", 5.0), ("alp", 5.0), ("mid", 5.0), ("top", 9.0)];
        let table = table_from_raw_weights(raw.iter().map(|(s, w)| (t(s), *w)), 3).unwrap();
        let kept: Vec<_> = table.ranked().into_iter().map(|(t, _)| t.to_string()).collect();
        assert_eq!(kept, ["top", "alp", "mid"]);
    }

    fn sample_table() -> WeightTable {
        WeightTable::from_weights([(t("busi"), 1.0), (t("manag"), 0.58)]).unwrap()
    }

    #[test]
    fn expansion_adds_top_term() {
        let page = textproc::term_frequencies(&doc(&["commerc", "commerc", "busi"]));
        let out = expand_table(&sample_table(), &page, 0.95);
        assert_eq!(out.get("commerc"), Some(0.95));
        assert_eq!(out.len(), 3);
    }

    #[test]
    fn expansion_below_threshold_is_noop() {
        let page = textproc::term_frequencies(&doc(&["commerc", "commerc"]));
        assert_eq!(expand_table(&sample_table(), &page, 0.89), sample_table());
    }

    #[test]
    fn expansion_never_overwrites() {
        let page = textproc::term_frequencies(&doc(&["busi", "busi", "commerc"]));
        let out = expand_table(&sample_table(), &page, 0.92);
        assert_eq!(out, sample_table());
        // the other branch of the same page at a different top term
        let page = textproc::term_frequencies(&doc(&["commerc", "commerc", "busi"]));
        assert_eq!(expand_table(&sample_table(), &page, 0.92).len(), 3);
    }

    #[test]
    fn tsv_format_and_parse() {
        let table = sample_table();
        assert_eq!(table.to_tsv(), "busi\t1.000000\nmanag\t0.580000\n");
        assert_eq!(WeightTable::from_tsv(&table.to_tsv()).unwrap(), table);
        let err = WeightTable::from_tsv("busi\t1.0\nmanag 0.5\n").unwrap_err();
        assert!(matches!(err, TopicError::TableFormat { line: 2, .. }));
        assert!(WeightTable::from_tsv("busi\t1.5\n").is_err());
    }

    #[test]
    fn ensure_keywords_forces_missing_topic_term() {
        let mut table = sample_table();
        table.ensure_keywords(&[t("busi"), t("ecommerc")]);
        assert_eq!(table.get("busi"), Some(1.0));
        assert_eq!(table.get("ecommerc"), Some(1.0));
    }

    fn vocab() -> Vec<Term> {
        (0..100)
            .map(|i| t(&format!("term{}", char::from(b'a' + (i % 26) as u8)).repeat(1 + i / 26)))
            .collect()
    }

    proptest! {
        #[test]
        fn max_weight_is_exactly_one(weights in prop::collection::vec(0.001f64..1e6, 1..100)) {
            let v = vocab();
            let table = table_from_raw_weights(v.into_iter().zip(weights), 50).unwrap();
            let max = table.iter().map(|(_, w)| w).fold(0.0, f64::max);
            prop_assert_eq!(max, 1.0);
            prop_assert!(table.iter().all(|(_, w)| w > 0.0 && w <= 1.0));
        }

        #[test]
        fn top_k_matches_full_sort(weights in prop::collection::vec(1u32..50, 100)) {
            let v = vocab();
            let raw: Vec<(Term, f64)> = v.into_iter().zip(weights.iter().map(|&w| f64::from(w))).collect();
            let table = table_from_raw_weights(raw.clone(), 10).unwrap();
            let mut sorted = raw.clone();
            sorted.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
            let expected: Vec<&Term> = sorted.iter().take(10).map(|(t, _)| t).collect();
            let got: Vec<&Term> = table.ranked().into_iter().map(|(t, _)| t).collect();
            prop_assert_eq!(got, expected);
        }

        #[test]
        fn scale_invariant(weights in prop::collection::vec(0.01f64..1e3, 1..40), c in 0.001f64..1e3) {
            let v = vocab();
            let a = table_from_raw_weights(v.iter().cloned().zip(weights.iter().copied()), 20).unwrap();
            let b = table_from_raw_weights(v.iter().cloned().zip(weights.iter().map(|w| w * c)), 20).unwrap();
            prop_assert_eq!(a.len(), b.len());
            for (term, w) in a.iter() {
                prop_assert!((b.get(term.as_str()).unwrap() - w).abs() < 1e-12);
            }
        }

        #[test]
        fn expansion_below_threshold_never_changes(rel in 0.0f64..0.9, idx in prop::collection::vec(0usize..100, 1..30)) {
            let v = vocab();
            let page = textproc::term_frequencies(idx.iter().map(|&i| &v[i]));
            prop_assert_eq!(expand_table(&sample_table(), &page, rel), sample_table());
        }

        #[test]
        fn expansion_is_monotone(rel in 0.0f64..=1.0, idx in prop::collection::vec(0usize..100, 1..30)) {
            let v = vocab();
            let page = textproc::term_frequencies(idx.iter().map(|&i| &v[i]));
            let base = sample_table();
            let out = expand_table(&base, &page, rel);
            prop_assert!(out.len() >= base.len());
            for (term, w) in base.iter() {
                prop_assert_eq!(out.get(term.as_str()), Some(w));
            }
        }

        #[test]
        fn stats_match_naive_recount(docs in prop::collection::vec(prop::collection::vec(0usize..15, 0..12), 1..20)) {
            let v = vocab();
            let docs: Vec<Vec<Term>> = docs.iter().map(|d| d.iter().map(|&i| v[i].clone()).collect()).collect();
            let stats = corpus_stats(&docs).unwrap();
            for term in v.iter().take(15) {
                let tf: u64 = docs.iter().map(|d| d.iter().filter(|x| *x == term).count() as u64).sum();
                let df = docs.iter().filter(|d| d.contains(term)).count() as u32;
                prop_assert_eq!(stats.tf_total.get(term).copied().unwrap_or(0), tf);
                prop_assert_eq!(stats.df.get(term).copied().unwrap_or(0), df);
                if df > 0 {
                    prop_assert!(df as usize <= stats.doc_count);
                    prop_assert!(tf >= u64::from(df));
                }
            }
        }
    }
}
