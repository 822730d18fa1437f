//! Checks the stemmer against frozen output of a reference Porter (1980)
//! implementation over ~2000 words.

use focuscrawl::textproc::stem;

fn reference_pairs() -> Vec<(&'static str, &'static str)> {
    include_str!("data/porter_vocab.tsv")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| l.split_once('\t').expect("word<TAB>stem"))
        .collect()
}

#[test]
fn matches_reference_stemmer() {
    let pairs = reference_pairs();
    assert!(pairs.len() > 1500);
    let mismatches: Vec<_> = pairs
        .iter()
        .filter(|(w, s)| stem(w).as_str() != *s)
        .map(|(w, s)| format!("{w}: got {}, want {s}", stem(w)))
        .collect();
    assert!(mismatches.is_empty(), "{mismatches:#?}");
}

#[test]
fn idempotent_on_fixed_points_of_reference() {
    // Porter is not idempotent in general ("agreed" -> "agre" -> "agr");
    // restrict to words whose reference stem is a fixed point.
    let pairs = reference_pairs();
    let stable: std::collections::HashSet<&str> = pairs.iter().map(|(_, s)| *s).collect();
    for (_, s) in &pairs {
        let expected_fixed = pairs.iter().any(|(w, ws)| w == s && ws == s);
        if expected_fixed {
            let once = stem(s);
            assert_eq!(stem(once.as_str()), once);
        }
    }
    assert!(!stable.is_empty());
}
