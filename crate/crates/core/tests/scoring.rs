mod common;

use common::oracle::{cosine_relevance, lib_table, lib_terms, link_score_sum, random_table, random_terms};
use focuscrawl::scoring::{link_score, positional_weights, relevance, score_breakdown, LinkCandidate};
use focuscrawl::textproc::{analyze, Stoplist};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn candidate(rng: &mut ChaCha8Rng, stop: &Stoplist) -> LinkCandidate {
    use rand::Rng;
    let path = random_terms(rng, 4).join("-");
    let mut c = LinkCandidate::new(
        format!("http://site.test/{path}"),
        lib_terms(&random_terms(rng, 5)),
        stop,
    );
    c.relevant_inlinks = rng.gen_range(0..20);
    for i in 0..rng.gen_range(0..5) {
        c.add_parent(&format!("http://parent.test/{i}"), rng.gen());
    }
    c
}

fn strings(terms: &[focuscrawl::textproc::Term]) -> Vec<String> {
    terms.iter().map(|t| t.as_str().to_string()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn relevance_matches_reference(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = random_table(&mut rng);
        let title = random_terms(&mut rng, 6);
        let body = random_terms(&mut rng, 30);
        let got = relevance(&lib_table(&table), &positional_weights(&lib_terms(&title), &lib_terms(&body))).unwrap();
        let want = cosine_relevance(&table, &title, &body);
        prop_assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
        prop_assert!((0.0..=1.0).contains(&got));
    }

    #[test]
    fn link_score_is_sum_of_addends(seed in any::<u64>()) {
        let stop = Stoplist::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = random_table(&mut rng);
        let c = candidate(&mut rng, &stop);
        let parents: Vec<f64> = c.parent_relevances().collect();
        let want = link_score_sum(&table, &strings(&c.url_terms), &strings(&c.anchor_terms), c.relevant_inlinks, &parents);
        let got = link_score(&c, &lib_table(&table));
        prop_assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
    }

    #[test]
    fn link_score_is_monotone(seed in any::<u64>(), extra in 1u32..10, bump in 0.0f64..1.0) {
        let stop = Stoplist::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = lib_table(&random_table(&mut rng));
        let c = candidate(&mut rng, &stop);
        let base = link_score(&c, &table);

        let mut more_links = c.clone();
        more_links.relevant_inlinks += extra;
        prop_assert!(link_score(&more_links, &table) > base);

        let mut more_parents = c.clone();
        more_parents.add_parent("http://parent.test/new", bump);
        prop_assert!(link_score(&more_parents, &table) >= base);

        if let Some(first) = c.parents.first() {
            let mut higher = c.clone();
            higher.parents[0].1 = (first.1 + bump).min(1.0);
            prop_assert!(link_score(&higher, &table) >= base);
        }
    }
}

#[test]
fn title_words_outweigh_body_words() {
    let stop = Stoplist::default();
    let table = lib_table(&[("busi".into(), 1.0), ("garden".into(), 1.0)]);
    let a = positional_weights(&analyze("business", &stop), &analyze("gardening", &stop));
    let b = positional_weights(&analyze("gardening", &stop), &analyze("business", &stop));
    // symmetric table, so swapping title and body keeps the score
    assert_eq!(relevance(&table, &a).unwrap(), relevance(&table, &b).unwrap());
    let only_body = positional_weights(&[], &analyze("business gardening gardening", &stop));
    let in_title = positional_weights(&analyze("business", &stop), &analyze("gardening gardening", &stop));
    let t = lib_table(&[("busi".into(), 1.0)]);
    assert!(relevance(&t, &in_title).unwrap() > relevance(&t, &only_body).unwrap());
}

#[test]
fn url_boilerplate_does_not_score() {
    let stop = Stoplist::default();
    let table = lib_table(&[("busi".into(), 1.0)]);
    let plain = LinkCandidate::new("http://www.example.com/index.html", vec![], &stop);
    assert_eq!(score_breakdown(&plain, &table).url_score, 0.0);
    let topical = LinkCandidate::new("http://www.example.com/business.html", vec![], &stop);
    assert_eq!(score_breakdown(&topical, &table).url_score, 1.0);
}
