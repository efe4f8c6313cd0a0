use percent_encoding::{utf8_percent_encode, AsciiSet, CONTROLS};
use thiserror::Error;

use crate::rdf::Iri;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid source path {0:?}")]
pub struct InvalidPath(pub String);

/// Characters escaped inside one path segment.
const SEGMENT: &AsciiSet = &CONTROLS
    .add(b' ')
    .add(b'"')
    .add(b'#')
    .add(b'%')
    .add(b'<')
    .add(b'>')
    .add(b'?')
    .add(b'`')
    .add(b'{')
    .add(b'}')
    .add(b'|')
    .add(b'\\')
    .add(b'^')
    .add(b'[')
    .add(b']');

/// `<base>/edit/main/<path>`.
pub fn render_edit_url(source_repo_base: &Iri, source_path: &str) -> Result<Iri, InvalidPath> {
    render_edit_url_on(source_repo_base, "main", source_path)
}

/// `<base>/edit/<branch>/<path>`, each path segment percent-encoded.
pub fn render_edit_url_on(source_repo_base: &Iri, branch: &str, source_path: &str) -> Result<Iri, InvalidPath> {
    let invalid = || InvalidPath(source_path.to_owned());
    if source_path.is_empty() || source_path.starts_with('/') || source_path.contains('\\') {
        return Err(invalid());
    }
    let mut encoded = Vec::new();
    for segment in source_path.split('/') {
        if segment.is_empty() || segment == "." || segment == ".." {
            return Err(invalid());
        }
        encoded.push(utf8_percent_encode(segment, SEGMENT).to_string());
    }
    let branch: String = utf8_percent_encode(branch, SEGMENT).to_string();
    let base = source_repo_base.as_str().trim_end_matches('/');
    Iri::new(format!("{base}/edit/{branch}/{}", encoded.join("/"))).map_err(|_| invalid())
}
