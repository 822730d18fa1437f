//! Reference formulas written straight from their definitions, with plain
//! vectors and loops, for checking the library against.

use rand::seq::SliceRandom;
use rand::Rng;

/// Cosine relevance of a page against a table. Title occurrences weigh 2,
/// body occurrences 1. A page with no shared term scores 0.
pub fn cosine_relevance(table: &[(String, f64)], title: &[String], body: &[String]) -> f64 {
    let mut page_terms: Vec<&String> = title.iter().chain(body).collect();
    page_terms.sort();
    page_terms.dedup();
    let w_kp = |k: &str| {
        2.0 * title.iter().filter(|t| t.as_str() == k).count() as f64
            + body.iter().filter(|t| t.as_str() == k).count() as f64
    };

    let mut numerator = 0.0;
    for (k, w_kt) in table {
        if page_terms.contains(&k) {
            numerator += w_kt * w_kp(k);
        }
    }
    if numerator == 0.0 {
        return 0.0;
    }
    let mut sum_t = 0.0;
    for (_, w) in table {
        sum_t += w * w;
    }
    let mut sum_p = 0.0;
    for k in &page_terms {
        sum_p += w_kp(k) * w_kp(k);
    }
    numerator / (sum_t * sum_p).sqrt()
}

/// Link score from its four addends: URL and anchor terms scored as plain
/// text, plus relevant in-links, plus the parents' relevances.
pub fn link_score_sum(
    table: &[(String, f64)],
    url_terms: &[String],
    anchor: &[String],
    inlinks: u32,
    parents: &[f64],
) -> f64 {
    let url_score = cosine_relevance(table, &[], url_terms);
    let anchor_score = cosine_relevance(table, &[], anchor);
    let mut parent_sum = 0.0;
    for r in parents {
        parent_sum += r;
    }
    url_score + anchor_score + f64::from(inlinks) + parent_sum
}

const STEMS: &[&str] = &[
    "busi", "manag", "solut", "corpor", "custom", "market", "trade", "bank", "stock", "price", "garden", "travel",
    "cook", "sport", "footbal", "nano", "atom", "vote", "elect", "parti", "weather", "music", "film", "school",
];

/// A random table over the shared stem pool: 1 to 12 distinct terms with
/// weights in (0, 1].
pub fn random_table(rng: &mut impl Rng) -> Vec<(String, f64)> {
    let n = rng.gen_range(1..=12);
    STEMS
        .choose_multiple(rng, n)
        .map(|s| (s.to_string(), 1.0 - rng.gen::<f64>()))
        .collect()
}

/// Up to `max` terms from the stem pool, repeats allowed.
pub fn random_terms(rng: &mut impl Rng, max: usize) -> Vec<String> {
    let n = rng.gen_range(0..=max);
    (0..n).map(|_| STEMS.choose(rng).unwrap().to_string()).collect()
}

pub fn lib_terms(v: &[String]) -> Vec<focuscrawl::textproc::Term> {
    v.iter()
        .map(|s| focuscrawl::textproc::Term::new(s.as_str()).unwrap())
        .collect()
}

pub fn lib_table(v: &[(String, f64)]) -> focuscrawl::topic::WeightTable {
    focuscrawl::topic::WeightTable::from_weights(
        v.iter()
            .map(|(t, w)| (focuscrawl::textproc::Term::new(t.as_str()).unwrap(), *w)),
    )
    .unwrap()
}
