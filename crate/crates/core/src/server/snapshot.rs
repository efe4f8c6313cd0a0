use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use thiserror::Error;

use super::negotiate::{choose, format_for, HTML, OFFERED};
use super::purl::{split_target, RedirectTable};
use crate::rdf::{parse_document, serialize_document, Iri, RdfDataset, RdfFormat};
use crate::sitegen::{Manifest, DUMP_NQ, DUMP_TTL, MANIFEST_FILE, REDIRECTS_FILE};

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("snapshot is missing {}", .0.display())]
    Missing(PathBuf),
    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
}

/// One addressable resource and its prepared representations.
#[derive(Clone, Debug)]
pub struct Resource {
    pub key: String,
    pub kind: String,
    pub iri: Option<Iri>,
    pub page: String,
    /// Absent for index pages, which only have documentation.
    pub graph: Option<RdfDataset>,
    bodies: BTreeMap<RdfFormat, Vec<u8>>,
}

impl Resource {
    pub fn offered(&self) -> &'static [&'static str] {
        if self.graph.is_some() {
            &OFFERED
        } else {
            &OFFERED[..1]
        }
    }
}

/// A loaded, immutable publication.
#[derive(Clone, Debug)]
pub struct Snapshot {
    pub version: String,
    pub table: RedirectTable,
    pub resources: BTreeMap<String, Resource>,
    /// Site-relative path to page bytes.
    pub pages: BTreeMap<String, Vec<u8>>,
    dumps: BTreeMap<String, (&'static str, Vec<u8>)>,
}

/// What the server sends back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub status: u16,
    pub media_type: Option<String>,
    pub location: Option<String>,
    pub body: Vec<u8>,
    /// Whether the response depends on `Accept`.
    pub negotiated: bool,
}

impl Representation {
    fn ok(media_type: &str, body: Vec<u8>) -> Self {
        Representation { status: 200, media_type: Some(media_type.to_owned()), location: None, body, negotiated: false }
    }

    fn see_other(location: String) -> Self {
        Representation { status: 303, media_type: None, location: Some(location), body: Vec::new(), negotiated: true }
    }

    fn not_found(path: &str) -> Self {
        Representation {
            status: 404,
            media_type: Some("text/plain; charset=utf-8".into()),
            location: None,
            body: format!("not found: {path}\n").into_bytes(),
            negotiated: false,
        }
    }

    fn not_acceptable(offered: &[&str]) -> Self {
        Representation {
            status: 406,
            media_type: Some("text/plain; charset=utf-8".into()),
            location: None,
            body: format!("not acceptable; available: {}\n", offered.join(", ")).into_bytes(),
            negotiated: true,
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, SnapshotError> {
    if !path.is_file() {
        return Err(SnapshotError::Missing(path.to_owned()));
    }
    fs::read(path).map_err(|e| SnapshotError::Format { path: path.to_owned(), message: e.to_string() })
}

fn text(path: &Path) -> Result<String, SnapshotError> {
    String::from_utf8(read(path)?).map_err(|_| SnapshotError::Format { path: path.to_owned(), message: "not UTF-8".into() })
}

pub fn load_snapshot(dir: &Path) -> Result<Snapshot, SnapshotError> {
    let manifest_path = dir.join(MANIFEST_FILE);
    let manifest: Manifest = serde_json::from_str(&text(&manifest_path)?)
        .map_err(|e| SnapshotError::Format { path: manifest_path.clone(), message: e.to_string() })?;
    let redirects_path = dir.join(REDIRECTS_FILE);
    let table = RedirectTable::parse(&text(&redirects_path)?, &manifest.version)
        .map_err(|e| SnapshotError::Format { path: redirects_path, message: e.to_string() })?;

    let mut dumps = BTreeMap::new();
    dumps.insert(DUMP_NQ.to_owned(), (RdfFormat::NQuads.media_type(), read(&dir.join(DUMP_NQ))?));
    if dir.join(DUMP_TTL).is_file() {
        dumps.insert(DUMP_TTL.to_owned(), (RdfFormat::Turtle.media_type(), read(&dir.join(DUMP_TTL))?));
    }

    let site = dir.join("site");
    if !site.is_dir() {
        return Err(SnapshotError::Missing(site));
    }
    let mut pages = BTreeMap::new();
    for entry in walkdir::WalkDir::new(&site).sort_by_file_name() {
        let entry = entry.map_err(|e| SnapshotError::Format { path: site.clone(), message: e.to_string() })?;
        if entry.file_type().is_file() {
            let rel = entry.path().strip_prefix(&site).expect("walk stays below root");
            let rel = rel.components().map(|c| c.as_os_str().to_string_lossy()).collect::<Vec<_>>().join("/");
            pages.insert(rel, read(entry.path())?);
        }
    }

    let mut resources = BTreeMap::new();
    for entry in manifest.resources {
        if !pages.contains_key(&entry.page) {
            return Err(SnapshotError::Missing(site.join(&entry.page)));
        }
        let (graph, bodies) = match &entry.metadata {
            None => (None, BTreeMap::new()),
            Some(rel) => {
                let path = dir.join(rel);
                let graph = parse_document(&read(&path)?, RdfFormat::NQuads, None)
                    .map_err(|e| SnapshotError::Format { path: path.clone(), message: e.to_string() })?;
                let mut bodies = BTreeMap::new();
                for f in RdfFormat::ALL {
                    if let Ok(b) = serialize_document(&graph, f) {
                        bodies.insert(f, b);
                    }
                }
                (Some(graph), bodies)
            }
        };
        resources.insert(
            entry.key.clone(),
            Resource { key: entry.key, kind: entry.kind, iri: entry.iri, page: entry.page, graph, bodies },
        );
    }
    Ok(Snapshot { version: manifest.version, table, resources, pages, dumps })
}

/// Picks a representation of `resource` for the given `Accept` header.
pub fn negotiate(accept: Option<&str>, resource: &Resource) -> Representation {
    let offered: Vec<&str> = resource
        .offered()
        .iter()
        .copied()
        .filter(|t| *t == HTML || format_for(t).is_some_and(|f| resource.bodies.contains_key(&f)))
        .collect();
    match choose(accept, &offered) {
        Some(HTML) => Representation::see_other(format!("/site/{}", resource.page)),
        Some(t) => {
            let format = format_for(t).expect("offered RDF types map to formats");
            let mut r = Representation::ok(t, resource.bodies[&format].clone());
            r.negotiated = true;
            r
        }
        None => Representation::not_acceptable(&offered),
    }
}

impl Snapshot {
    /// Looks a PURL up without negotiating.
    pub fn resource_for(&self, path: &str) -> Option<&Resource> {
        let target = self.table.resolve(path).ok()?;
        let (version, key) = split_target(&target)?;
        if version != self.version {
            return None;
        }
        self.resources.get(key)
    }

    /// Answers one request. Only `GET` and `HEAD` are served; for `HEAD` the
    /// body is dropped and everything else is kept.
    pub fn handle(&self, method: &str, path: &str, accept: Option<&str>) -> Representation {
        let mut response = self.handle_get(path, accept);
        match method {
            "GET" => {}
            "HEAD" => response.body.clear(),
            _ => return Representation::not_found(path),
        }
        response
    }

    fn handle_get(&self, path: &str, accept: Option<&str>) -> Representation {
        let path = path.split(['?', '#']).next().unwrap_or(path);
        if let Some(rest) = path.strip_prefix("/site/") {
            let rest = if rest.is_empty() || rest.ends_with('/') { format!("{rest}index.md") } else { rest.to_owned() };
            return match self.pages.get(&rest) {
                Some(b) => Representation::ok("text/markdown; charset=utf-8", b.clone()),
                None => Representation::not_found(path),
            };
        }
        if let Some(rest) = path.strip_prefix('/') {
            if let Some((media, bytes)) = self.dumps.get(rest) {
                return Representation::ok(media, bytes.clone());
            }
        }
        match self.resource_for(path) {
            Some(resource) => negotiate(accept, resource),
            None => Representation::not_found(path),
        }
    }
}

/// The snapshot currently being served. Each request takes one `Arc` and
/// keeps it, so a reload never mixes two snapshots in one response.
#[derive(Clone, Debug)]
pub struct SnapshotStore {
    dir: PathBuf,
    current: Arc<RwLock<Arc<Snapshot>>>,
}

impl SnapshotStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, SnapshotError> {
        let dir = dir.into();
        let snapshot = load_snapshot(&dir)?;
        Ok(SnapshotStore { dir, current: Arc::new(RwLock::new(Arc::new(snapshot))) })
    }

    pub fn current(&self) -> Arc<Snapshot> {
        self.current.read().unwrap_or_else(|e| e.into_inner()).clone()
    }

    /// Loads the directory again and swaps it in. On failure the old
    /// snapshot stays.
    pub fn reload(&self) -> Result<(), SnapshotError> {
        let fresh = Arc::new(load_snapshot(&self.dir)?);
        *self.current.write().unwrap_or_else(|e| e.into_inner()) = fresh;
        Ok(())
    }
}
