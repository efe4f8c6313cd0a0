use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use percent_encoding::{percent_decode_str, utf8_percent_encode, AsciiSet, CONTROLS};
use rayon::prelude::*;
use thiserror::Error;

use super::report::{extract_report, BenchmarkRunReport};
use super::structure::{parse_nanopub, Nanopublication, StructureError};
use crate::metadata::ExtractError;
use crate::rdf::{parse_document, Iri, ParseError, RdfFormat};
use crate::vocab::Vocabulary;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("report index unavailable: {0}")]
pub struct SourceUnavailableError(pub String);

/// Why one listed nanopublication did not yield a report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscoveryError {
    #[error("fetch failed: {0}")]
    Fetch(String),
    #[error("parse failed: {0}")]
    Parse(#[from] ParseError),
    #[error("structure: {0}")]
    Structure(#[from] StructureError),
    #[error("report: {0}")]
    Extract(#[from] ExtractError),
    #[error("verification failed: {0}")]
    Verification(String),
}

/// Where report nanopublications come from.
pub trait ReportIndexSource: Sync {
    /// The nanopublication IRIs currently in the index.
    fn list(&self) -> Result<Vec<Iri>, SourceUnavailableError>;

    fn fetch(&self, iri: &Iri) -> Result<(Vec<u8>, RdfFormat), String>;

    /// Hook for signature or trusty-URI checks. Accepts everything by default.
    fn verify(&self, _iri: &Iri, _np: &Nanopublication) -> Result<(), String> {
        Ok(())
    }
}

/// A successfully ingested report together with the document it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscoveredReport {
    pub source: Iri,
    pub report: BenchmarkRunReport,
    pub nanopub: Nanopublication,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Discovery {
    /// Date descending, then report IRI ascending.
    pub reports: Vec<DiscoveredReport>,
    /// Sorted by IRI.
    pub diagnostics: Vec<(Iri, DiscoveryError)>,
}

impl Discovery {
    pub fn report_list(&self) -> Vec<BenchmarkRunReport> {
        self.reports.iter().map(|r| r.report.clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct DiscoveryOptions {
    pub parallelism: usize,
    pub vocab: Vocabulary,
}

impl Default for DiscoveryOptions {
    fn default() -> Self {
        DiscoveryOptions { parallelism: 4, vocab: Vocabulary::default() }
    }
}

fn ingest(source: &dyn ReportIndexSource, iri: &Iri, vocab: &Vocabulary) -> Result<DiscoveredReport, DiscoveryError> {
    let (bytes, format) = source.fetch(iri).map_err(DiscoveryError::Fetch)?;
    let doc = parse_document(&bytes, format, Some(iri))?;
    let nanopub = parse_nanopub(&doc)?;
    source.verify(iri, &nanopub).map_err(DiscoveryError::Verification)?;
    let report = extract_report(&nanopub, vocab)?;
    Ok(DiscoveredReport { source: iri.clone(), report, nanopub })
}

/// Fetches, checks and extracts every listed nanopublication. Per-item
/// failures become diagnostics; only a failing `list()` is an error.
pub fn discover_reports(
    source: &dyn ReportIndexSource,
    options: &DiscoveryOptions,
) -> Result<Discovery, SourceUnavailableError> {
    let mut seen = BTreeSet::new();
    let iris: Vec<Iri> = source.list()?.into_iter().filter(|i| seen.insert(i.clone())).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.parallelism.max(1))
        .build()
        .map_err(|e| SourceUnavailableError(e.to_string()))?;
    let results: Vec<_> =
        pool.install(|| iris.par_iter().map(|iri| (iri, ingest(source, iri, &options.vocab))).collect());

    let mut out = Discovery::default();
    for (iri, result) in results {
        match result {
            Ok(r) => out.reports.push(r),
            Err(e) => out.diagnostics.push((iri.clone(), e)),
        }
    }
    out.reports.sort_by(|a, b| {
        b.report
            .date
            .cmp(&a.report.date)
            .then_with(|| a.report.report_iri.cmp(&b.report.report_iri))
            .then_with(|| a.source.cmp(&b.source))
    });
    out.diagnostics.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

const SEGMENT: &AsciiSet = &CONTROLS.add(b' ').add(b'"').add(b'#').add(b'%').add(b'<').add(b'>').add(b'?').add(b'`').add(b'{').add(b'}').add(b'|').add(b'\\').add(b'^').add(b'[').add(b']');

/// Every `.trig` file in a directory is one nanopublication, identified as
/// `<base><file stem>`.
#[derive(Clone, Debug)]
pub struct DirectorySource {
    dir: PathBuf,
    base: String,
}

impl DirectorySource {
    /// Identifies files by their `file:` URL.
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        let dir = dir.into();
        let absolute = fs::canonicalize(&dir).unwrap_or_else(|_| dir.clone());
        let mut base = String::from("file://");
        for part in absolute.to_string_lossy().split('/').filter(|p| !p.is_empty()) {
            base.push('/');
            base.extend(utf8_percent_encode(part, SEGMENT));
        }
        base.push('/');
        DirectorySource { dir, base }
    }

    pub fn with_base(dir: impl Into<PathBuf>, base: &Iri) -> Self {
        DirectorySource { dir: dir.into(), base: base.as_str().to_owned() }
    }

    fn file_for(&self, iri: &Iri) -> Option<PathBuf> {
        let stem = iri.as_str().strip_prefix(&self.base)?;
        let stem = percent_decode_str(stem).decode_utf8().ok()?;
        if stem.is_empty() || stem.contains('/') || stem.contains("..") {
            return None;
        }
        Some(self.dir.join(format!("{stem}.trig")))
    }
}

impl ReportIndexSource for DirectorySource {
    fn list(&self) -> Result<Vec<Iri>, SourceUnavailableError> {
        let entries = fs::read_dir(&self.dir)
            .map_err(|e| SourceUnavailableError(format!("{}: {e}", self.dir.display())))?;
        let mut out = Vec::new();
        for entry in entries {
            let path = entry.map_err(|e| SourceUnavailableError(e.to_string()))?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("trig") {
                continue;
            }
            let Some(stem) = path.file_stem().and_then(|s| s.to_str()) else { continue };
            let encoded: String = utf8_percent_encode(stem, SEGMENT).collect();
            if let Ok(iri) = Iri::new(format!("{}{encoded}", self.base)) {
                out.push(iri);
            }
        }
        out.sort();
        Ok(out)
    }

    fn fetch(&self, iri: &Iri) -> Result<(Vec<u8>, RdfFormat), String> {
        let path = self.file_for(iri).ok_or_else(|| format!("{iri} is not served by this directory"))?;
        fs::read(&path).map(|b| (b, RdfFormat::TriG)).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// A remote index: `GET index_url` returns one nanopublication IRI per line;
/// each IRI is then fetched with `Accept: application/trig`.
pub struct HttpIndexSource {
    index_url: Iri,
    client: reqwest::blocking::Client,
}

impl HttpIndexSource {
    pub fn new(index_url: Iri, timeout: Duration) -> Result<Self, SourceUnavailableError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(timeout)
            .build()
            .map_err(|e| SourceUnavailableError(e.to_string()))?;
        Ok(HttpIndexSource { index_url, client })
    }
}

/// IRIs from a newline-delimited index body; blank lines and `#` comments are
/// skipped, as are lines that are not absolute IRIs.
pub fn parse_index(body: &str) -> Vec<Iri> {
    body.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter_map(|l| Iri::new(l.trim_start_matches('<').trim_end_matches('>')).ok())
        .collect()
}

impl ReportIndexSource for HttpIndexSource {
    fn list(&self) -> Result<Vec<Iri>, SourceUnavailableError> {
        let unavailable = |e: reqwest::Error| SourceUnavailableError(format!("{}: {e}", self.index_url));
        let response = self
            .client
            .get(self.index_url.as_str())
            .header(reqwest::header::ACCEPT, "text/plain")
            .send()
            .and_then(|r| r.error_for_status())
            .map_err(unavailable)?;
        Ok(parse_index(&response.text().map_err(unavailable)?))
    }

    fn fetch(&self, iri: &Iri) -> Result<(Vec<u8>, RdfFormat), String> {
        let response = self
            .client
            .get(iri.as_str())
            .header(reqwest::header::ACCEPT, RdfFormat::TriG.media_type())
            .send()
            .and_then(|r| r.error_for_status())
            .map_err(|e| e.to_string())?;
        let format = response
            .headers()
            .get(reqwest::header::CONTENT_TYPE)
            .and_then(|v| v.to_str().ok())
            .and_then(RdfFormat::from_media_type)
            .unwrap_or(RdfFormat::TriG);
        let bytes = response.bytes().map_err(|e| e.to_string())?;
        Ok((bytes.to_vec(), format))
    }
}

/// Picks the source for an index location: `http(s)` URLs are remote,
/// anything else is a local directory (a `file:` URL or a plain path).
pub fn source_for(location: &str, timeout: Duration) -> Result<Box<dyn ReportIndexSource + Send>, SourceUnavailableError> {
    if location.starts_with("http://") || location.starts_with("https://") {
        let iri = Iri::new(location).map_err(|e| SourceUnavailableError(e.to_string()))?;
        return Ok(Box::new(HttpIndexSource::new(iri, timeout)?));
    }
    let path = match location.strip_prefix("file://") {
        Some(p) => PathBuf::from(percent_decode_str(p).decode_utf8_lossy().into_owned()),
        None => Path::new(location).to_owned(),
    };
    Ok(Box::new(DirectorySource::new(path)))
}
