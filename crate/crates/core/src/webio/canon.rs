use url::Url;

/// Resolves `href` against `base` and normalizes the result.
///
/// Scheme and host are lowercased, default ports and fragments dropped, an
/// empty path becomes `/`. Query strings are kept. Returns `None` for
/// anything that is not http(s) or does not parse.
pub fn canonicalize(base: &str, href: &str) -> Option<String> {
    let base = Url::parse(base).ok();
    canonicalize_with(base.as_ref(), href)
}

pub(crate) fn canonicalize_with(base: Option<&Url>, href: &str) -> Option<String> {
    let href = href.trim();
    let mut url = match base {
        Some(b) => b.join(href).ok()?,
        None => Url::parse(href).ok()?,
    };
    if !matches!(url.scheme(), "http" | "https") {
        return None;
    }
    url.host_str().filter(|h| !h.is_empty())?;
    url.set_fragment(None);
    Some(url.into())
}

/// Canonical form of an absolute URL.
pub fn canonical_url(url: &str) -> Option<String> {
    canonicalize_with(None, url)
}
