use std::collections::HashSet;

use scraper::{ElementRef, Html, Node, Selector};
use thiserror::Error;
use url::Url;

use super::{canon, RawPage};
use crate::textproc::{self, Stoplist, Term, TermCounts};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{url}: body is not text")]
    NotText { url: String },
}

/// An out-link with the analyzed terms of its anchor text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageLink {
    pub url: String,
    pub anchor_terms: Vec<Term>,
}

/// A parsed page: title and body terms plus canonical out-links.
#[derive(Debug, Clone, PartialEq)]
pub struct PageDocument {
    pub url: String,
    pub title_terms: Vec<Term>,
    pub body_terms: Vec<Term>,
    pub links: Vec<PageLink>,
    /// Title and body combined.
    pub term_counts: TermCounts,
}

impl PageDocument {
    pub fn outlink_urls(&self) -> impl Iterator<Item = &str> {
        self.links.iter().map(|l| l.url.as_str())
    }
}

const HIDDEN: &[&str] = &["script", "style", "noscript", "template", "head"];

fn visible_text(el: ElementRef<'_>, out: &mut String) {
    for child in el.children() {
        match child.value() {
            Node::Text(t) => {
                out.push_str(t);
                out.push(' ');
            }
            Node::Element(e) if !HIDDEN.contains(&e.name()) => {
                if let Some(child_el) = ElementRef::wrap(child) {
                    visible_text(child_el, out);
                }
            }
            _ => {}
        }
    }
}

fn title_and_body(doc: &Html) -> (String, String) {
    let title_sel = Selector::parse("title").expect("static selector");
    let body_sel = Selector::parse("body").expect("static selector");
    let title = doc
        .select(&title_sel)
        .next()
        .map(|t| t.text().collect::<Vec<_>>().join(" "))
        .unwrap_or_default();
    let mut body = String::new();
    for b in doc.select(&body_sel) {
        visible_text(b, &mut body);
    }
    (title, body)
}

/// Raw title and visible body text of an HTML document.
pub fn extract_text(html: &str) -> (String, String) {
    title_and_body(&Html::parse_document(html))
}

/// Parses a fetched HTML page.
///
/// Anchor text is part of the body text as well as of its link. Links are
/// resolved against the page URL; rejected hrefs and links back to the page
/// itself are dropped, and for repeated targets the first anchor wins.
pub fn parse_page(raw: &RawPage, stoplist: &Stoplist) -> Result<PageDocument, ParseError> {
    if raw.body.contains(&0) {
        return Err(ParseError::NotText { url: raw.url.clone() });
    }
    let html = String::from_utf8_lossy(&raw.body);
    let doc = Html::parse_document(&html);
    let (title, body) = title_and_body(&doc);
    let title_terms = textproc::analyze(&title, stoplist);
    let body_terms = textproc::analyze(&body, stoplist);

    let base = Url::parse(&raw.url).ok();
    let link_sel = Selector::parse("a[href]").expect("static selector");
    let mut seen = HashSet::new();
    let mut links = Vec::new();
    for a in doc.select(&link_sel) {
        let Some(href) = a.value().attr("href") else {
            continue;
        };
        let Some(url) = canon::canonicalize_with(base.as_ref(), href) else {
            continue;
        };
        if url == raw.url || !seen.insert(url.clone()) {
            continue;
        }
        let anchor = a.text().collect::<Vec<_>>().join(" ");
        links.push(PageLink {
            url,
            anchor_terms: textproc::analyze(&anchor, stoplist),
        });
    }

    let term_counts = textproc::term_frequencies(title_terms.iter().chain(&body_terms));
    Ok(PageDocument {
        url: raw.url.clone(),
        title_terms,
        body_terms,
        links,
        term_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::SystemTime;

    fn raw(url: &str, html: &str) -> RawPage {
        RawPage {
            url: url.into(),
            content_type: "text/html".into(),
            body: html.as_bytes().to_vec(),
            fetched_at: SystemTime::UNIX_EPOCH,
            truncated: false,
        }
    }

    fn strs(terms: &[Term]) -> Vec<&str> {
        terms.iter().map(Term::as_str).collect()
    }

    #[test]
    fn title_body_and_anchor() {
        let page = parse_page(
            &raw(
                "http://s.com/",
                r#"<title>Business</title><body>management <a href="/x">customer care</a></body>"#,
            ),
            &Stoplist::default(),
        )
        .unwrap();
        assert_eq!(strs(&page.title_terms), ["busi"]);
        assert_eq!(strs(&page.body_terms), ["manag", "custom", "care"]);
        assert_eq!(page.links.len(), 1);
        assert_eq!(page.links[0].url, "http://s.com/x");
        assert_eq!(strs(&page.links[0].anchor_terms), ["custom", "care"]);
    }

    #[test]
    fn missing_title() {
        let page = parse_page(&raw("http://s.com/", "<p>hello world</p>"), &Stoplist::default()).unwrap();
        assert!(page.title_terms.is_empty());
        assert_eq!(strs(&page.body_terms), ["hello", "world"]);
    }

    #[test]
    fn duplicate_href_keeps_first_anchor() {
        let page = parse_page(
            &raw(
                "http://s.com/",
                r#"<a href="/d">alpha beta</a> <a href="/d#x">gamma</a>"#,
            ),
            &Stoplist::empty(),
        )
        .unwrap();
        assert_eq!(page.links.len(), 1);
        assert_eq!(strs(&page.links[0].anchor_terms), ["alpha", "beta"]);
    }

    #[test]
    fn drops_self_links_and_bad_schemes() {
        let page = parse_page(
            &raw(
                "http://s.com/p",
                r##"<a href="#top">top</a><a href="mailto:a@b.c">mail</a><a href="javascript:void(0)">js</a><a href="q">q</a>"##,
            ),
            &Stoplist::empty(),
        )
        .unwrap();
        let urls: Vec<_> = page.outlink_urls().collect();
        assert_eq!(urls, ["http://s.com/q"]);
    }

    #[test]
    fn script_and_style_are_invisible() {
        let page = parse_page(
            &raw(
                "http://s.com/",
                "<html><head><title>t</title><style>body{color:red}</style></head>\
                 <body><script>var market = 1;</script>garden <noscript>hidden</noscript></body></html>",
            ),
            &Stoplist::empty(),
        )
        .unwrap();
        assert_eq!(strs(&page.body_terms), ["garden"]);
    }

    #[test]
    fn term_counts_cover_title_and_body() {
        let page = parse_page(
            &raw("http://s.com/", "<title>garden garden</title><body>garden rain</body>"),
            &Stoplist::empty(),
        )
        .unwrap();
        let expected = textproc::term_frequencies(page.title_terms.iter().chain(&page.body_terms));
        assert_eq!(page.term_counts, expected);
        assert_eq!(page.term_counts.get("garden"), 3);
    }

    #[test]
    fn binary_body_fails() {
        let mut r = raw("http://s.com/", "");
        r.body = vec![0x89, b'P', b'N', b'G', 0, 0];
        assert!(parse_page(&r, &Stoplist::empty()).is_err());
    }
}
