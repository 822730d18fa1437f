//! Text pipeline shared by every other module: tokenization, stopword
//! removal, Porter stemming and term counting.
//!
//! The full pipeline ([`analyze`]) is
//! `tokenize -> remove_stopwords -> drop 1-letter tokens -> stem`.

mod porter;

use std::borrow::Borrow;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

/// A stemmed, lowercase, non-empty token.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Term(String);

impl Term {
    /// Wraps an already-stemmed string. Returns `None` for empty input or
    /// input with whitespace or uppercase characters.
    pub fn new(stem: impl Into<String>) -> Option<Self> {
        let s = stem.into();
        if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c.is_uppercase()) {
            return None;
        }
        Some(Term(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for Term {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for Term {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Occurrence counts per term. Absent terms are never stored with a zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TermCounts(BTreeMap<Term, u32>);

impl TermCounts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: Term) {
        *self.0.entry(term).or_insert(0) += 1;
    }

    pub fn get(&self, term: &str) -> u32 {
        self.0.get(term).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of all counts.
    pub fn total(&self) -> u64 {
        self.0.values().map(|&c| u64::from(c)).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, u32)> {
        self.0.iter().map(|(t, &c)| (t, c))
    }

    /// The most frequent term; ties go to the lexicographically smallest.
    pub fn most_frequent(&self) -> Option<&Term> {
        // BTreeMap iterates in lexicographic order, so keeping the first
        // maximum gives the tie rule.
        let mut best: Option<(&Term, u32)> = None;
        for (t, c) in self.iter() {
            if best.is_none_or(|(_, bc)| c > bc) {
                best = Some((t, c));
            }
        }
        best.map(|(t, _)| t)
    }
}

impl FromIterator<Term> for TermCounts {
    fn from_iter<I: IntoIterator<Item = Term>>(iter: I) -> Self {
        let mut counts = TermCounts::new();
        for t in iter {
            counts.add(t);
        }
        counts
    }
}

/// Set of lowercase words removed before stemming.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stoplist {
    words: HashSet<String>,
}

const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords.txt");

impl Default for Stoplist {
    /// The bundled English list.
    fn default() -> Self {
        Self::parse(DEFAULT_STOPWORDS)
    }
}

impl Stoplist {
    pub fn empty() -> Self {
        Self { words: HashSet::new() }
    }

    /// Parses the stopword file format: one word per line, `#` starts a
    /// comment, blank lines are ignored. Words are lowercased.
    pub fn parse(text: &str) -> Self {
        let words = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|w| !w.is_empty())
            .map(str::to_lowercase)
            .collect();
        Self { words }
    }

    pub fn from_file(path: impl AsRef<Path>) -> std::io::Result<Self> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl<S: Into<String>> FromIterator<S> for Stoplist {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Self {
            words: iter.into_iter().map(|s| s.into().to_lowercase()).collect(),
        }
    }
}

/// Splits text into maximal runs of ASCII letters, lowercased. Everything
/// else (digits, punctuation, whitespace, non-ASCII) separates tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_ascii_alphabetic())
        .filter(|s| !s.is_empty())
        .map(str::to_ascii_lowercase)
        .collect()
}

pub fn remove_stopwords(tokens: Vec<String>, stoplist: &Stoplist) -> Vec<String> {
    tokens.into_iter().filter(|t| !stoplist.contains(t)).collect()
}

/// Porter-stems a lowercase token.
///
/// The only input Porter can reduce to nothing is `"s"`; in that case the
/// token is kept as is so the result is always a valid [`Term`].
pub fn stem(token: &str) -> Term {
    let s = porter::stem(token);
    if s.is_empty() {
        Term(token.to_string())
    } else {
        Term(s)
    }
}

pub fn term_frequencies<'a>(terms: impl IntoIterator<Item = &'a Term>) -> TermCounts {
    terms.into_iter().cloned().collect()
}

/// Runs the whole pipeline over `text`.
pub fn analyze(text: &str, stoplist: &Stoplist) -> Vec<Term> {
    analyze_tokens(tokenize(text), stoplist)
}

/// Pipeline minus tokenization, for callers that split text their own way.
pub fn analyze_tokens(tokens: Vec<String>, stoplist: &Stoplist) -> Vec<Term> {
    remove_stopwords(tokens, stoplist)
        .into_iter()
        .filter(|t| t.len() > 1)
        .map(|t| stem(&t))
        .collect()
}
