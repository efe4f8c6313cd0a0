//! Permanent-URL redirect table.
//!
//! One rule per line, `pattern -> target`, `#` starts a comment. A
//! placeholder `{name}` stands for one whole, non-empty path segment.
//! Targets may use the pattern's placeholders and `{current}`, the
//! snapshot's version. A `{version}` value of `dev` also means the current
//! version.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Segment {
    Literal(String),
    Var(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Template {
    raw: String,
    segments: Vec<Segment>,
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RedirectError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {second}: pattern {second_pattern} overlaps {first_pattern} on line {first}")]
    Overlap { first: usize, second: usize, first_pattern: String, second_pattern: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no permanent URL matches {0}")]
pub struct NotFound(pub String);

pub const CURRENT: &str = "current";
pub const DEV: &str = "dev";

fn split_path(path: &str) -> Option<Vec<&str>> {
    let rest = path.strip_prefix('/')?;
    let rest = rest.strip_suffix('/').unwrap_or(rest);
    if rest.is_empty() {
        return Some(Vec::new());
    }
    Some(rest.split('/').collect())
}

fn parse_template(raw: &str, line: usize) -> Result<Template, RedirectError> {
    let syntax = |message: String| RedirectError::Syntax { line, message };
    let parts = split_path(raw).ok_or_else(|| syntax(format!("{raw:?} must start with '/'")))?;
    let mut segments = Vec::new();
    for part in parts {
        if let Some(name) = part.strip_prefix('{').and_then(|p| p.strip_suffix('}')) {
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_lowercase() || c == '_') {
                return Err(syntax(format!("bad placeholder {part:?}")));
            }
            segments.push(Segment::Var(name.to_owned()));
        } else if part.contains(['{', '}']) {
            return Err(syntax(format!("placeholders must span a whole segment: {part:?}")));
        } else if part.is_empty() {
            return Err(syntax(format!("empty segment in {raw:?}")));
        } else {
            segments.push(Segment::Literal(part.to_owned()));
        }
    }
    Ok(Template { raw: raw.to_owned(), segments })
}

fn overlaps(a: &Template, b: &Template) -> bool {
    a.segments.len() == b.segments.len()
        && a.segments.iter().zip(&b.segments).all(|pair| match pair {
            (Segment::Literal(x), Segment::Literal(y)) => x == y,
            _ => true,
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedirectEntry {
    pattern: Template,
    target: Template,
    line: usize,
}

impl RedirectEntry {
    pub fn pattern(&self) -> &str {
        &self.pattern.raw
    }

    pub fn target(&self) -> &str {
        &self.target.raw
    }

    fn bind<'p>(&self, segments: &[&'p str]) -> Option<Vec<(&str, &'p str)>> {
        if segments.len() != self.pattern.segments.len() {
            return None;
        }
        let mut bindings = Vec::new();
        for (seg, value) in self.pattern.segments.iter().zip(segments) {
            match seg {
                Segment::Literal(l) if l == value => {}
                Segment::Var(name) if !value.is_empty() => bindings.push((name.as_str(), *value)),
                _ => return None,
            }
        }
        Some(bindings)
    }
}

/// Ordered, pairwise-disjoint redirect rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedirectTable {
    entries: Vec<RedirectEntry>,
    default_version: String,
}

impl RedirectTable {
    pub fn parse(text: &str, default_version: &str) -> Result<Self, RedirectError> {
        let mut entries: Vec<RedirectEntry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (pattern, target) = content
                .split_once("->")
                .ok_or_else(|| RedirectError::Syntax { line, message: "expected `pattern -> target`".into() })?;
            let pattern = parse_template(pattern.trim(), line)?;
            let target = parse_template(target.trim(), line)?;
            let mut bound = BTreeSet::new();
            for s in &pattern.segments {
                if let Segment::Var(v) = s {
                    if v == CURRENT || !bound.insert(v.clone()) {
                        return Err(RedirectError::Syntax { line, message: format!("placeholder {{{v}}} cannot be used here") });
                    }
                }
            }
            for s in &target.segments {
                if let Segment::Var(v) = s {
                    if v != CURRENT && !bound.contains(v) {
                        return Err(RedirectError::Syntax { line, message: format!("target uses unbound placeholder {{{v}}}") });
                    }
                }
            }
            if let Some(prev) = entries.iter().find(|e| overlaps(&e.pattern, &pattern)) {
                return Err(RedirectError::Overlap {
                    first: prev.line,
                    second: line,
                    first_pattern: prev.pattern.raw.clone(),
                    second_pattern: pattern.raw.clone(),
                });
            }
            entries.push(RedirectEntry { pattern, target, line });
        }
        Ok(RedirectTable { entries, default_version: default_version.to_owned() })
    }

    pub fn entries(&self) -> &[RedirectEntry] {
        &self.entries
    }

    pub fn default_version(&self) -> &str {
        &self.default_version
    }

    /// Indices of every rule matching `path`; at most one for a loaded table.
    pub fn matching(&self, path: &str) -> Vec<usize> {
        let Some(segments) = split_path(path) else { return Vec::new() };
        self.entries.iter().enumerate().filter(|(_, e)| e.bind(&segments).is_some()).map(|(i, _)| i).collect()
    }

    pub fn resolve(&self, path: &str) -> Result<String, NotFound> {
        let not_found = || NotFound(path.to_owned());
        let segments = split_path(path).ok_or_else(not_found)?;
        for entry in &self.entries {
            let Some(bindings) = entry.bind(&segments) else { continue };
            let mut out = String::new();
            for seg in &entry.target.segments {
                out.push('/');
                match seg {
                    Segment::Literal(l) => out.push_str(l),
                    Segment::Var(v) if v == CURRENT => out.push_str(&self.default_version),
                    Segment::Var(v) => {
                        let value = bindings.iter().find(|(n, _)| n == v).map(|(_, val)| *val).ok_or_else(not_found)?;
                        if v == "version" && value == DEV {
                            out.push_str(&self.default_version);
                        } else {
                            out.push_str(value);
                        }
                    }
                }
            }
            if out.is_empty() {
                out.push('/');
            }
            return Ok(out);
        }
        Err(not_found())
    }
}

pub fn resolve_purl(table: &RedirectTable, path: &str) -> Result<String, NotFound> {
    table.resolve(path)
}

/// Splits a resolved target `/<version>/<key...>` into version and key.
pub fn split_target(target: &str) -> Option<(&str, &str)> {
    let rest = target.strip_prefix('/')?;
    match rest.split_once('/') {
        Some((version, key)) => Some((version, key.trim_end_matches('/'))),
        None if !rest.is_empty() => Some((rest, "")),
        None => None,
    }
}

/// The standard rule set for a published registry.
pub fn default_redirects() -> String {
    let mut out = String::from("# Permanent URLs -> /<version>/<resource key>\n/ -> /{current}\n/v/{version} -> /{version}\n");
    for (segment, var) in [("datasets", "id"), ("tasks", "id"), ("profiles", "id"), ("results", "report")] {
        out.push_str(&format!(
            "/{segment} -> /{{current}}/{segment}\n\
             /{segment}/{{{var}}} -> /{{current}}/{segment}/{{{var}}}\n\
             /v/{{version}}/{segment} -> /{{version}}/{segment}\n\
             /v/{{version}}/{segment}/{{{var}}} -> /{{version}}/{segment}/{{{var}}}\n"
        ));
        if segment != "results" {
            out.push_str(&format!("/{segment}/{{{var}}}/{{version}} -> /{{version}}/{segment}/{{{var}}}\n"));
        }
    }
    out
}
