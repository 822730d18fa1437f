//! Porter (1980) suffix-stripping stemmer.
//!
//! This is the algorithm as originally published, not the later revision
//! distributed as "Porter2"/Snowball English. In particular step 2 maps
//! `abli` to `able` and has no `logi` rule, and words of one or two letters
//! are run through the steps like any other word.
//!
//! Input is expected to be lowercase ASCII. Non-ASCII input is returned
//! unchanged.

/// Stems a single lowercase word.
pub fn stem(word: &str) -> String {
    if word.is_empty() || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return word.to_string();
    }
    let mut w = Word {
        b: word.as_bytes().to_vec(),
    };
    w.step1a();
    w.step1b();
    w.step1c();
    w.step2();
    w.step3();
    w.step4();
    w.step5a();
    w.step5b();
    // only ASCII letters were ever pushed
    String::from_utf8(w.b).expect("ascii")
}

type Condition = fn(&Word, usize) -> bool;

struct Word {
    b: Vec<u8>,
}

impl Word {
    fn is_consonant(&self, i: usize) -> bool {
        match self.b[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => i == 0 || !self.is_consonant(i - 1),
            _ => true,
        }
    }

    /// Number of VC sequences in `b[..len]`.
    fn measure(&self, len: usize) -> usize {
        let mut m = 0;
        let mut i = 0;
        while i < len && self.is_consonant(i) {
            i += 1;
        }
        loop {
            while i < len && !self.is_consonant(i) {
                i += 1;
            }
            if i >= len {
                return m;
            }
            while i < len && self.is_consonant(i) {
                i += 1;
            }
            m += 1;
        }
    }

    fn has_vowel(&self, len: usize) -> bool {
        (0..len).any(|i| !self.is_consonant(i))
    }

    fn ends_double_consonant(&self, len: usize) -> bool {
        len >= 2 && self.b[len - 1] == self.b[len - 2] && self.is_consonant(len - 1)
    }

    /// `*o`: stem ends consonant-vowel-consonant, final consonant not w, x or y.
    fn ends_cvc(&self, len: usize) -> bool {
        len >= 3
            && self.is_consonant(len - 3)
            && !self.is_consonant(len - 2)
            && self.is_consonant(len - 1)
            && !matches!(self.b[len - 1], b'w' | b'x' | b'y')
    }

    fn ends_with(&self, suffix: &str) -> bool {
        self.b.ends_with(suffix.as_bytes())
    }

    fn replace_suffix(&mut self, suffix_len: usize, replacement: &str) {
        let keep = self.b.len() - suffix_len;
        self.b.truncate(keep);
        self.b.extend_from_slice(replacement.as_bytes());
    }

    /// Applies the rule with the longest matching suffix, if its condition
    /// holds. Returns whether any suffix matched (regardless of condition).
    fn apply_longest(&mut self, rules: &[(&str, &str)], cond: Condition) -> bool {
        let matched = rules
            .iter()
            .filter(|(suffix, _)| self.ends_with(suffix))
            .max_by_key(|(suffix, _)| suffix.len());
        match matched {
            Some(&(suffix, replacement)) => {
                let stem_len = self.b.len() - suffix.len();
                if cond(self, stem_len) {
                    self.replace_suffix(suffix.len(), replacement);
                }
                true
            }
            None => false,
        }
    }

    fn step1a(&mut self) {
        if self.ends_with("sses") {
            self.replace_suffix(4, "ss");
        } else if self.ends_with("ies") {
            self.replace_suffix(3, "i");
        } else if self.ends_with("ss") {
        } else if self.ends_with("s") {
            self.replace_suffix(1, "");
        }
    }

    fn step1b(&mut self) {
        if self.ends_with("eed") {
            if self.measure(self.b.len() - 3) > 0 {
                self.replace_suffix(3, "ee");
            }
            return;
        }
        let stripped = if self.ends_with("ed") && self.has_vowel(self.b.len() - 2) {
            self.replace_suffix(2, "");
            true
        } else if self.ends_with("ing") && self.has_vowel(self.b.len() - 3) {
            self.replace_suffix(3, "");
            true
        } else {
            false
        };
        if !stripped {
            return;
        }
        let len = self.b.len();
        if self.ends_with("at") || self.ends_with("bl") || self.ends_with("iz") {
            self.b.push(b'e');
        } else if self.ends_double_consonant(len) && !matches!(self.b[len - 1], b'l' | b's' | b'z') {
            self.b.pop();
        } else if self.measure(len) == 1 && self.ends_cvc(len) {
            self.b.push(b'e');
        }
    }

    fn step1c(&mut self) {
        let len = self.b.len();
        if self.ends_with("y") && self.has_vowel(len - 1) {
            self.b[len - 1] = b'i';
        }
    }

    fn step2(&mut self) {
        const RULES: &[(&str, &str)] = &[
            ("ational", "ate"),
            ("tional", "tion"),
            ("enci", "ence"),
            ("anci", "ance"),
            ("izer", "ize"),
            ("abli", "able"),
            ("alli", "al"),
            ("entli", "ent"),
            ("eli", "e"),
            ("ousli", "ous"),
            ("ization", "ize"),
            ("ation", "ate"),
            ("ator", "ate"),
            ("alism", "al"),
            ("iveness", "ive"),
            ("fulness", "ful"),
            ("ousness", "ous"),
            ("aliti", "al"),
            ("iviti", "ive"),
            ("biliti", "ble"),
        ];
        self.apply_longest(RULES, |w, len| w.measure(len) > 0);
    }

    fn step3(&mut self) {
        const RULES: &[(&str, &str)] = &[
            ("icate", "ic"),
            ("ative", ""),
            ("alize", "al"),
            ("iciti", "ic"),
            ("ical", "ic"),
            ("ful", ""),
            ("ness", ""),
        ];
        self.apply_longest(RULES, |w, len| w.measure(len) > 0);
    }

    fn step4(&mut self) {
        const RULES: &[(&str, &str)] = &[
            ("al", ""),
            ("ance", ""),
            ("ence", ""),
            ("er", ""),
            ("ic", ""),
            ("able", ""),
            ("ible", ""),
            ("ant", ""),
            ("ement", ""),
            ("ment", ""),
            ("ent", ""),
            ("ion", ""),
            ("ou", ""),
            ("ism", ""),
            ("ate", ""),
            ("iti", ""),
            ("ous", ""),
            ("ive", ""),
            ("ize", ""),
        ];
        self.apply_longest(RULES, |w, len| {
            if w.measure(len) <= 1 {
                return false;
            }
            // `ion` additionally needs the stem to end in s or t
            if w.b.len() - len == 3 && w.b[len..] == *b"ion" {
                return len > 0 && matches!(w.b[len - 1], b's' | b't');
            }
            true
        });
    }

    fn step5a(&mut self) {
        if !self.ends_with("e") {
            return;
        }
        let len = self.b.len() - 1;
        let m = self.measure(len);
        if m > 1 || (m == 1 && !self.ends_cvc(len)) {
            self.b.pop();
        }
    }

    fn step5b(&mut self) {
        let len = self.b.len();
        if self.measure(len) > 1 && self.ends_double_consonant(len) && self.b[len - 1] == b'l' {
            self.b.pop();
        }
    }
}
