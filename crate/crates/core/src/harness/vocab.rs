//! Word lists for synthetic graphs and topic corpora.
//!
//! Topic lists carry no stopwords and no stem shared with the background
//! list, so generated pages are cleanly on or off topic.

/// A topic name with its vocabulary, most characteristic words first.
#[derive(Debug, Clone, Copy)]
pub struct TopicVocab {
    pub name: &'static str,
    pub words: &'static [&'static str],
}

pub const TOPICS: [TopicVocab; 4] = [
    TopicVocab {
        name: "E-Business",
        words: &[
            "business",
            "management",
            "solution",
            "corporation",
            "customer",
            "commerce",
            "market",
            "enterprise",
            "retail",
            "payment",
            "transaction",
            "supplier",
            "supply",
            "online",
            "shopping",
            "product",
            "service",
            "sales",
            "revenue",
            "profit",
            "strategy",
            "investment",
            "consumer",
            "brand",
            "merchant",
            "invoice",
            "logistics",
            "vendor",
            "trade",
            "finance",
            "ecommerce",
            "portal",
            "catalog",
            "order",
            "billing",
            "partner",
            "startup",
            "economy",
            "auction",
            "wholesale",
        ],
    },
    TopicVocab {
        name: "Nanotechnology",
        words: &[
            "nanotechnology",
            "nanoparticle",
            "molecule",
            "atom",
            "quantum",
            "carbon",
            "nanotube",
            "graphene",
            "material",
            "microscope",
            "particle",
            "semiconductor",
            "laboratory",
            "research",
            "physics",
            "chemistry",
            "surface",
            "crystal",
            "polymer",
            "electron",
            "fabrication",
            "sensor",
            "coating",
            "silicon",
            "device",
            "engineering",
            "synthesis",
            "molecular",
            "biomedical",
            "membrane",
            "nanowire",
            "lithography",
            "catalyst",
            "optical",
            "thermal",
            "composite",
            "structure",
            "experiment",
            "scientist",
            "nanoscale",
        ],
    },
    TopicVocab {
        name: "Politics",
        words: &[
            "politics",
            "government",
            "election",
            "parliament",
            "minister",
            "policy",
            "party",
            "vote",
            "voter",
            "democracy",
            "campaign",
            "senate",
            "congress",
            "president",
            "candidate",
            "legislation",
            "law",
            "constitution",
            "diplomacy",
            "cabinet",
            "opposition",
            "coalition",
            "referendum",
            "ballot",
            "reform",
            "debate",
            "citizen",
            "republic",
            "governor",
            "senator",
            "treaty",
            "sovereignty",
            "leader",
            "rally",
            "manifesto",
            "poll",
            "ministry",
            "budget",
            "tax",
        ],
    },
    TopicVocab {
        name: "Sports",
        words: &[
            "sports",
            "football",
            "cricket",
            "tennis",
            "match",
            "tournament",
            "player",
            "team",
            "coach",
            "league",
            "championship",
            "goal",
            "stadium",
            "athlete",
            "olympic",
            "medal",
            "racing",
            "cycling",
            "basketball",
            "baseball",
            "hockey",
            "golf",
            "swimming",
            "referee",
            "fitness",
            "training",
            "season",
            "victory",
            "defeat",
            "captain",
            "striker",
            "wicket",
            "inning",
            "trophy",
            "fans",
            "club",
            "sprint",
            "marathon",
            "umpire",
        ],
    },
];

pub const BACKGROUND: &[&str] = &[
    "weather",
    "garden",
    "recipe",
    "cooking",
    "kitchen",
    "travel",
    "holiday",
    "music",
    "guitar",
    "piano",
    "movie",
    "film",
    "actor",
    "novel",
    "poetry",
    "painting",
    "museum",
    "history",
    "ancient",
    "castle",
    "river",
    "mountain",
    "forest",
    "ocean",
    "beach",
    "island",
    "animal",
    "bird",
    "flower",
    "tree",
    "summer",
    "winter",
    "autumn",
    "family",
    "children",
    "school",
    "teacher",
    "student",
    "library",
    "book",
    "story",
    "church",
    "village",
    "city",
    "street",
    "house",
    "furniture",
    "clothing",
    "fashion",
    "jewelry",
    "perfume",
    "coffee",
    "bread",
    "cheese",
    "wine",
    "fruit",
    "vegetable",
    "chocolate",
    "pizza",
    "salad",
    "soup",
    "breakfast",
    "dinner",
    "camera",
    "photo",
    "picture",
    "color",
    "dog",
    "horse",
    "farm",
    "tractor",
    "harvest",
    "rain",
    "snow",
    "cloud",
    "storm",
    "wind",
    "moon",
    "planet",
    "galaxy",
    "telescope",
    "lake",
    "valley",
    "desert",
    "bridge",
    "tower",
    "subway",
    "airport",
    "hotel",
    "restaurant",
    "festival",
    "concert",
    "theater",
    "dance",
    "song",
    "singer",
    "artist",
    "sculpture",
    "pottery",
    "knitting",
    "quilt",
    "candle",
    "lamp",
    "window",
    "door",
    "garage",
    "bicycle",
    "boat",
    "sailing",
    "fishing",
    "hiking",
    "camping",
    "tent",
    "picnic",
    "birthday",
    "wedding",
    "baby",
    "puppy",
    "kitten",
    "parrot",
    "turtle",
    "rabbit",
    "hamster",
    "aquarium",
    "tulip",
    "rose",
    "orchid",
    "cactus",
    "herb",
    "spice",
    "garlic",
    "onion",
    "tomato",
    "potato",
    "carrot",
    "apple",
    "banana",
    "orange",
    "grape",
    "lemon",
    "honey",
    "butter",
    "sugar",
    "flour",
    "cake",
    "cookie",
    "pie",
    "pasta",
    "rice",
    "noodle",
    "sandwich",
    "burger",
    "tea",
    "juice",
    "milk",
    "yogurt",
    "cereal",
];

/// Looks a topic up by name, ignoring case.
pub fn topic(name: &str) -> Option<&'static TopicVocab> {
    TOPICS.iter().find(|t| t.name.eq_ignore_ascii_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textproc::{self, Stoplist};
    use std::collections::HashSet;

    #[test]
    fn lists_are_disjoint_after_stemming() {
        let stop = Stoplist::default();
        let bg: HashSet<_> = BACKGROUND.iter().map(|w| textproc::stem(w)).collect();
        assert_eq!(bg.len(), BACKGROUND.len());
        for t in &TOPICS {
            for w in t.words {
                assert!(!stop.contains(w), "{w}");
                assert!(!bg.contains(&textproc::stem(w)), "{w}");
            }
        }
        assert!(BACKGROUND.iter().all(|w| !stop.contains(w)));
    }

    #[test]
    fn lookup() {
        assert_eq!(topic("sports").unwrap().name, "Sports");
        assert!(topic("cooking").is_none());
    }
}
