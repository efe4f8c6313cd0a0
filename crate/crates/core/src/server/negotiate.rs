//! `Accept` header evaluation.

use crate::rdf::RdfFormat;

pub const HTML: &str = "text/html";

/// Media types a resource with RDF metadata offers, most preferred first.
/// The first entry also wins when the client states no preference.
pub const OFFERED: [&str; 5] = [HTML, "text/turtle", "application/n-quads", "application/trig", "application/n-triples"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MediaRange {
    pub main: String,
    pub sub: String,
    /// Quality in thousandths, 0..=1000.
    pub q: u16,
}

impl MediaRange {
    /// 3 for an exact type, 2 for `type/*`, 1 for `*/*`, 0 if no match.
    fn specificity(&self, main: &str, sub: &str) -> u8 {
        match (self.main.as_str(), self.sub.as_str()) {
            ("*", "*") => 1,
            (m, "*") if m == main => 2,
            (m, s) if m == main && s == sub => 3,
            _ => 0,
        }
    }
}

fn parse_q(value: &str) -> Option<u16> {
    let value = value.trim();
    let (int, frac) = value.split_once('.').unwrap_or((value, ""));
    if frac.len() > 3 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let whole = match int {
        "0" => 0u16,
        "1" => 1000,
        _ => return None,
    };
    let mut thousandths = 0u16;
    for (i, c) in frac.chars().enumerate() {
        thousandths += (c as u16 - b'0' as u16) * [100, 10, 1][i];
    }
    let q = whole + thousandths;
    (q <= 1000).then_some(q)
}

/// Parses an `Accept` header. Malformed entries are dropped.
pub fn parse_accept(header: &str) -> Vec<MediaRange> {
    let mut out = Vec::new();
    for item in header.split(',') {
        let mut parts = item.split(';');
        let Some((main, sub)) = parts.next().and_then(|t| t.trim().split_once('/')) else { continue };
        let (main, sub) = (main.trim().to_ascii_lowercase(), sub.trim().to_ascii_lowercase());
        if main.is_empty() || sub.is_empty() || (main == "*" && sub != "*") {
            continue;
        }
        let mut q = Some(1000);
        for param in parts {
            if let Some((k, v)) = param.split_once('=') {
                if k.trim().eq_ignore_ascii_case("q") {
                    q = parse_q(v);
                }
            }
        }
        if let Some(q) = q {
            out.push(MediaRange { main, sub, q });
        }
    }
    out
}

/// Quality the client assigns to `media_type`, from the most specific
/// matching range.
pub fn quality(ranges: &[MediaRange], media_type: &str) -> u16 {
    let (main, sub) = media_type.split_once('/').unwrap_or((media_type, ""));
    ranges
        .iter()
        .map(|r| (r.specificity(main, sub), r.q))
        .filter(|(s, _)| *s > 0)
        .max_by_key(|(s, _)| *s)
        .map_or(0, |(_, q)| q)
}

/// The offered type with the highest quality, ties going to the earlier
/// offer. `None` when nothing is acceptable.
pub fn choose<'a>(accept: Option<&str>, offered: &[&'a str]) -> Option<&'a str> {
    let ranges = accept.map(parse_accept).unwrap_or_default();
    if ranges.is_empty() {
        return offered.first().copied();
    }
    let mut best: Option<(&str, u16)> = None;
    for &t in offered {
        let q = quality(&ranges, t);
        if q > 0 && best.is_none_or(|(_, bq)| q > bq) {
            best = Some((t, q));
        }
    }
    best.map(|(t, _)| t)
}

pub fn format_for(media_type: &str) -> Option<RdfFormat> {
    RdfFormat::from_media_type(media_type)
}
