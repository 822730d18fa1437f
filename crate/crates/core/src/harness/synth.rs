//! Synthetic topical web graphs.
//!
//! A graph has a visible topic cluster, a larger off-topic cluster, and a
//! number of hidden topic sub-clusters. Each hidden sub-cluster hangs off a
//! visible topic page, or off an earlier sub-cluster, behind a chain of
//! `tunnel_depth` off-topic pages, so a crawler that never crosses
//! irrelevant pages cannot see it. Topic pages also carry decoy links:
//! topical anchor text pointing at off-topic pages.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::vocab::{self, BACKGROUND};
use super::HarnessError;
use crate::webio::{Manifest, ManifestLink, ManifestPage};

pub const RELEVANT_LABEL: &str = "relevant";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    pub topic: Vec<String>,
    pub background: Vec<String>,
}

impl Vocabulary {
    /// One of the built-in topics against the shared background list.
    pub fn builtin(topic: &str) -> Option<Self> {
        let t = vocab::topic(topic)?;
        Some(Self {
            topic: t.words.iter().map(|w| w.to_string()).collect(),
            background: BACKGROUND.iter().map(|w| w.to_string()).collect(),
        })
    }
}

impl Default for Vocabulary {
    fn default() -> Self {
        Self::builtin("E-Business").expect("built-in topic")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthGraphParams {
    pub topic_cluster_size: usize,
    pub offtopic_cluster_size: usize,
    /// Off-topic pages between a visible topic page and a hidden sub-cluster.
    pub tunnel_depth: usize,
    pub hidden_clusters: usize,
    pub hidden_cluster_size: usize,
    /// Links from each topic page into the off-topic cluster.
    pub cross_links_per_page: usize,
    /// Links from each topic page to other topic pages.
    pub intra_links_per_page: usize,
    /// Links from each off-topic page to other off-topic pages.
    pub offtopic_links_per_page: usize,
    /// Off-topic links with topical anchors on each topic page.
    pub decoy_links_per_page: usize,
    /// Chance that an off-topic page links back into the topic cluster.
    pub backlink_probability: f64,
    pub words_per_page: usize,
    /// Share of topic words in the text of a topic page.
    pub topic_share: f64,
    /// Share of topic words in the text of an off-topic page.
    pub noise_share: f64,
    pub seed_count: usize,
    /// Extra off-topic links with topical anchors on each seed page, as on
    /// a portal that links widely.
    pub seed_decoy_links: usize,
    pub vocabulary: Vocabulary,
    pub rng_seed: u64,
}

impl Default for SynthGraphParams {
    fn default() -> Self {
        Self {
            topic_cluster_size: 400,
            offtopic_cluster_size: 550,
            tunnel_depth: 2,
            hidden_clusters: 5,
            hidden_cluster_size: 10,
            cross_links_per_page: 2,
            intra_links_per_page: 10,
            offtopic_links_per_page: 12,
            decoy_links_per_page: 1,
            backlink_probability: 0.1,
            words_per_page: 40,
            topic_share: 0.5,
            noise_share: 0.03,
            seed_count: 10,
            seed_decoy_links: 8,
            vocabulary: Vocabulary::default(),
            rng_seed: 1,
        }
    }
}

impl SynthGraphParams {
    pub fn for_topic(topic: &str) -> Option<Self> {
        Some(Self {
            vocabulary: Vocabulary::builtin(topic)?,
            ..Self::default()
        })
    }

    pub fn page_count(&self) -> usize {
        self.topic_cluster_size
            + self.offtopic_cluster_size
            + self.hidden_clusters * (self.tunnel_depth + self.hidden_cluster_size)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let invalid = |field: &str, reason: &str| Err(HarnessError::ParamInvalid(format!("{field}: {reason}")));
        if self.topic_cluster_size == 0 {
            return invalid("topic_cluster_size", "must be at least 1");
        }
        if self.offtopic_cluster_size == 0 {
            return invalid("offtopic_cluster_size", "must be at least 1");
        }
        if self.hidden_clusters > 0 && self.hidden_cluster_size == 0 {
            return invalid("hidden_cluster_size", "must be at least 1 when hidden_clusters > 0");
        }
        if self.seed_count == 0 || self.seed_count > self.topic_cluster_size {
            return invalid("seed_count", "must be between 1 and topic_cluster_size");
        }
        if self.words_per_page == 0 {
            return invalid("words_per_page", "must be at least 1");
        }
        for (field, v) in [
            ("topic_share", self.topic_share),
            ("noise_share", self.noise_share),
            ("backlink_probability", self.backlink_probability),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return invalid(field, "must lie in [0, 1]");
            }
        }
        if self.vocabulary.topic.is_empty() || self.vocabulary.background.is_empty() {
            return invalid("vocabulary", "topic and background lists must be non-empty");
        }
        Ok(())
    }
}

const HOST: &str = "http://synth.test";

fn topic_url(i: usize) -> String {
    format!("{HOST}/topic/p{i}")
}

fn offtopic_url(i: usize) -> String {
    format!("{HOST}/misc/p{i}")
}

fn gate_url(k: usize, d: usize) -> String {
    format!("{HOST}/gate{k}/p{d}")
}

fn hidden_url(k: usize, i: usize) -> String {
    format!("{HOST}/deep{k}/p{i}")
}

struct Writer<'a> {
    rng: ChaCha8Rng,
    topic: &'a [String],
    background: &'a [String],
    /// Cumulative Zipf weights over the topic list.
    zipf: Vec<f64>,
}

impl<'a> Writer<'a> {
    fn new(vocab: &'a Vocabulary, seed: u64) -> Self {
        let mut acc = 0.0;
        let zipf = (0..vocab.topic.len())
            .map(|r| {
                acc += 1.0 / (r + 1) as f64;
                acc
            })
            .collect();
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            topic: &vocab.topic,
            background: &vocab.background,
            zipf,
        }
    }

    fn topic_word(&mut self) -> &'a str {
        let x = self.rng.gen::<f64>() * self.zipf.last().copied().unwrap_or(0.0);
        let i = self.zipf.partition_point(|&c| c < x).min(self.topic.len() - 1);
        &self.topic[i]
    }

    fn background_word(&mut self) -> &'a str {
        self.background.choose(&mut self.rng).expect("non-empty background")
    }

    fn text(&mut self, words: usize, topic_share: f64) -> String {
        (0..words)
            .map(|_| {
                if self.rng.gen_bool(topic_share) {
                    self.topic_word()
                } else {
                    self.background_word()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// `n` distinct picks from `0..len`, never `exclude`.
    fn distinct(&mut self, len: usize, n: usize, exclude: Option<usize>) -> Vec<usize> {
        let avail = len - usize::from(exclude.is_some_and(|e| e < len));
        let n = n.min(avail);
        let mut picked = BTreeSet::new();
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let i = self.rng.gen_range(0..len);
            if Some(i) != exclude && picked.insert(i) {
                out.push(i);
            }
        }
        out
    }
}

fn link(href: String, anchor: String) -> ManifestLink {
    ManifestLink { href, anchor }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    Topic(usize),
    Hidden(usize, usize),
}

/// Generates a labeled graph. The same parameters always give the same
/// manifest; seeds are the first `seed_count` topic pages.
///
/// Each hidden sub-cluster is a star around an entry page. Its gate chain
/// starts on a visible topic page or on a page of an earlier sub-cluster,
/// so some sub-clusters can only be found from others.
pub fn generate_graph(params: &SynthGraphParams) -> Result<Manifest, HarnessError> {
    params.validate()?;
    let p = params;
    let mut w = Writer::new(&p.vocabulary, p.rng_seed);
    let words = p.words_per_page;
    let mut pages = Vec::with_capacity(p.page_count());

    let non_seed = p.topic_cluster_size - p.seed_count;
    let gate_parents: Vec<Node> = (0..p.hidden_clusters)
        .map(|k| {
            let pool = non_seed + k * p.hidden_cluster_size;
            if pool == 0 {
                return Node::Topic(0);
            }
            let x = w.rng.gen_range(0..pool);
            if x < non_seed {
                Node::Topic(p.seed_count + x)
            } else {
                let x = x - non_seed;
                Node::Hidden(x / p.hidden_cluster_size, x % p.hidden_cluster_size)
            }
        })
        .collect();
    let gate_links = |node: Node, w: &mut Writer| -> Vec<ManifestLink> {
        let mut out = Vec::new();
        for (k, _) in gate_parents.iter().enumerate().filter(|(_, &g)| g == node) {
            out.push(if p.tunnel_depth == 0 {
                link(hidden_url(k, 0), format!("{} {}", w.topic_word(), w.topic_word()))
            } else {
                link(gate_url(k, 1), format!("{} {}", w.topic_word(), w.background_word()))
            });
        }
        out
    };
    let offtopic_links = |n: usize, anchor_topical: bool, w: &mut Writer| -> Vec<ManifestLink> {
        w.distinct(p.offtopic_cluster_size, n, None)
            .into_iter()
            .map(|j| {
                let anchor = if anchor_topical {
                    format!("{} {}", w.topic_word(), w.topic_word())
                } else {
                    format!("{} {}", w.background_word(), w.background_word())
                };
                link(offtopic_url(j), anchor)
            })
            .collect()
    };

    for i in 0..p.topic_cluster_size {
        let mut links = Vec::new();
        for j in w.distinct(p.topic_cluster_size, p.intra_links_per_page, Some(i)) {
            let anchor = format!("{} {}", w.topic_word(), w.topic_word());
            links.push(link(topic_url(j), anchor));
        }
        links.extend(offtopic_links(p.cross_links_per_page, false, &mut w));
        links.extend(offtopic_links(p.decoy_links_per_page, true, &mut w));
        if i < p.seed_count {
            links.extend(offtopic_links(p.seed_decoy_links, true, &mut w));
        }
        links.extend(gate_links(Node::Topic(i), &mut w));
        links.shuffle(&mut w.rng);
        pages.push(ManifestPage {
            url: topic_url(i),
            title: w.text(3, 0.8),
            body: w.text(words, p.topic_share),
            links,
            redirect: None,
            label: Some(RELEVANT_LABEL.into()),
        });
    }

    for i in 0..p.offtopic_cluster_size {
        let mut links = Vec::new();
        for j in w.distinct(p.offtopic_cluster_size, p.offtopic_links_per_page, Some(i)) {
            let anchor = format!("{} {}", w.background_word(), w.background_word());
            links.push(link(offtopic_url(j), anchor));
        }
        if w.rng.gen_bool(p.backlink_probability) {
            let j = w.rng.gen_range(0..p.topic_cluster_size);
            links.push(link(topic_url(j), w.topic_word().to_string()));
        }
        pages.push(ManifestPage {
            url: offtopic_url(i),
            title: w.text(3, 0.0),
            body: w.text(words, p.noise_share),
            links,
            redirect: None,
            label: None,
        });
    }

    for k in 0..p.hidden_clusters {
        for d in 1..=p.tunnel_depth {
            let mut links = offtopic_links(2, false, &mut w);
            if d < p.tunnel_depth {
                let anchor = format!("{} {}", w.topic_word(), w.background_word());
                links.push(link(gate_url(k, d + 1), anchor));
            } else {
                let anchor = format!("{} {}", w.topic_word(), w.topic_word());
                links.push(link(hidden_url(k, 0), anchor));
            }
            links.shuffle(&mut w.rng);
            pages.push(ManifestPage {
                url: gate_url(k, d),
                title: w.text(3, 0.0),
                body: w.text(words, p.noise_share),
                links,
                redirect: None,
                label: None,
            });
        }
        for i in 0..p.hidden_cluster_size {
            let targets: Vec<usize> = if i == 0 {
                (1..p.hidden_cluster_size).collect()
            } else {
                let mut t = vec![0];
                t.extend(
                    w.distinct(p.hidden_cluster_size, 2, Some(i))
                        .into_iter()
                        .filter(|&j| j != 0),
                );
                t
            };
            let mut links: Vec<ManifestLink> = targets
                .into_iter()
                .map(|j| {
                    let anchor = format!("{} {}", w.topic_word(), w.topic_word());
                    link(hidden_url(k, j), anchor)
                })
                .collect();
            links.extend(offtopic_links(p.cross_links_per_page.min(1), false, &mut w));
            links.extend(gate_links(Node::Hidden(k, i), &mut w));
            links.shuffle(&mut w.rng);
            pages.push(ManifestPage {
                url: hidden_url(k, i),
                title: w.text(3, 0.8),
                body: w.text(words, p.topic_share),
                links,
                redirect: None,
                label: Some(RELEVANT_LABEL.into()),
            });
        }
    }

    Ok(Manifest {
        pages,
        seeds: (0..p.seed_count).map(topic_url).collect(),
    })
}

/// Plain-text topic documents drawn from the topic vocabulary, used to
/// build the weight table. Returns `(file name, text)` pairs.
pub fn generate_corpus(vocab: &Vocabulary, docs: usize, words: usize, seed: u64) -> Vec<(String, String)> {
    let mut w = Writer::new(vocab, seed ^ 0x5eed_c0de);
    (0..docs)
        .map(|i| (format!("doc{i:03}.txt"), w.text(words, 1.0)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::webio::FixtureFetcher;

    fn small() -> SynthGraphParams {
        SynthGraphParams {
            topic_cluster_size: 30,
            offtopic_cluster_size: 40,
            hidden_clusters: 2,
            hidden_cluster_size: 5,
            ..SynthGraphParams::default()
        }
    }

    #[test]
    fn deterministic() {
        let a = generate_graph(&small()).unwrap().to_json();
        let b = generate_graph(&small()).unwrap().to_json();
        assert_eq!(a, b);
        let other = SynthGraphParams { rng_seed: 2, ..small() };
        assert_ne!(a, generate_graph(&other).unwrap().to_json());
    }

    #[test]
    fn loads_as_fixture() {
        let m = generate_graph(&small()).unwrap();
        assert_eq!(m.pages.len(), small().page_count());
        let f = FixtureFetcher::from_manifest(&m).unwrap();
        assert_eq!(f.len(), m.pages.len());
        assert_eq!(f.seeds().len(), 10);
    }

    #[test]
    fn hidden_pages_only_behind_gates() {
        let params = SynthGraphParams {
            hidden_clusters: 6,
            ..small()
        };
        let m = generate_graph(&params).unwrap();
        for p in &m.pages {
            let inside = p.url.contains("/deep") || p.url.contains("/gate");
            for l in &p.links {
                if l.href.contains("/deep") {
                    assert!(inside, "{} -> {}", p.url, l.href);
                }
            }
        }
        // every island is still reachable from the seeds
        let out: std::collections::HashMap<&str, Vec<&str>> = m
            .pages
            .iter()
            .map(|p| (p.url.as_str(), p.links.iter().map(|l| l.href.as_str()).collect()))
            .collect();
        let mut seen: std::collections::HashSet<&str> = m.seeds.iter().map(String::as_str).collect();
        let mut stack: Vec<&str> = seen.iter().copied().collect();
        while let Some(u) = stack.pop() {
            for &v in out.get(u).into_iter().flatten() {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        for k in 0..params.hidden_clusters {
            for i in 0..params.hidden_cluster_size {
                assert!(seen.contains(hidden_url(k, i).as_str()));
            }
        }
    }

    #[test]
    fn zero_depth_links_hidden_entries_from_topic_pages() {
        let params = SynthGraphParams {
            tunnel_depth: 0,
            ..small()
        };
        let m = generate_graph(&params).unwrap();
        assert!(m.pages.iter().all(|p| !p.url.contains("/gate")));
        for k in 0..params.hidden_clusters {
            let entry = hidden_url(k, 0);
            let parents: Vec<_> = m
                .pages
                .iter()
                .filter(|p| p.links.iter().any(|l| l.href == entry))
                .collect();
            assert!(parents.iter().any(|p| p.label.is_some() && p.url.contains("/topic/")));
        }
    }

    #[test]
    fn bad_params() {
        for p in [
            SynthGraphParams {
                topic_cluster_size: 0,
                ..small()
            },
            SynthGraphParams {
                seed_count: 31,
                ..small()
            },
            SynthGraphParams {
                topic_share: 1.5,
                ..small()
            },
        ] {
            assert!(matches!(generate_graph(&p), Err(HarnessError::ParamInvalid(_))));
        }
    }

    #[test]
    fn corpus_is_on_topic() {
        let v = Vocabulary::default();
        let docs = generate_corpus(&v, 3, 20, 7);
        assert_eq!(docs.len(), 3);
        for (_, text) in &docs {
            assert!(text.split(' ').all(|w| v.topic.iter().any(|t| t == w)));
        }
    }
}
