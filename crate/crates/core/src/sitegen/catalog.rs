use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::{ResourceKind, SiteWarning};
use crate::metadata::{
    enrich_metadata, extract_dataset_metadata, extract_profile_metadata, extract_task_metadata, profile_accepts,
    ConflictError, DatasetMetadata, ExtractError, ProfileMetadata, TaskMetadata,
};
use crate::nanopub::{extract_report, parse_nanopub, BenchmarkRunReport, Nanopublication};
use crate::package::{read_distributions, read_statistics, Distribution, StatisticsReport};
use crate::rdf::vocab::rdf as rdf_vocab;
use crate::rdf::{parse_document, Iri, ParseError, Quad, RdfDataset, RdfFormat, Subject};
use crate::vocab::Vocabulary;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {error}", path.display())]
    Syntax { path: PathBuf, error: ParseError },
    #[error("{}: {error}", path.display())]
    Metadata { path: PathBuf, error: ExtractError },
    #[error("{}: {message}", path.display())]
    Invalid { path: PathBuf, message: String },
    #[error("{}: {error}", path.display())]
    Conflict { path: PathBuf, error: ConflictError },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetEntry {
    pub metadata: DatasetMetadata,
    pub statistics: Option<StatisticsReport>,
    pub distributions: Vec<Distribution>,
    /// Published metadata graph.
    pub graph: RdfDataset,
    /// Repository-relative path of the editable source file.
    pub source_path: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskEntry {
    pub metadata: TaskMetadata,
    pub graph: RdfDataset,
    pub source_path: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileEntry {
    pub metadata: ProfileMetadata,
    pub graph: RdfDataset,
    pub source_path: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub report: BenchmarkRunReport,
    /// Page and key identifier, unique among reports.
    pub slug: String,
    /// The assertion graph.
    pub graph: RdfDataset,
}

/// Everything that gets published. Entries are sorted by id (reports by
/// date descending, then IRI).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    pub version: String,
    pub datasets: Vec<DatasetEntry>,
    pub tasks: Vec<TaskEntry>,
    pub profiles: Vec<ProfileEntry>,
    pub reports: Vec<ReportEntry>,
}

impl Catalog {
    pub fn empty(version: impl Into<String>) -> Self {
        Catalog { version: version.into(), ..Default::default() }
    }

    pub fn task(&self, iri: &Iri) -> Option<&TaskEntry> {
        self.tasks.iter().find(|t| &t.metadata.iri == iri)
    }

    pub fn profile(&self, iri: &Iri) -> Option<&ProfileEntry> {
        self.profiles.iter().find(|p| &p.metadata.iri == iri)
    }

    /// Datasets accepted by a profile, in catalog order.
    pub fn members(&self, profile: &ProfileMetadata) -> Vec<&DatasetEntry> {
        self.datasets.iter().filter(|d| profile_accepts(profile, &d.metadata)).collect()
    }

    pub fn profiles_of(&self, md: &DatasetMetadata) -> Vec<&ProfileEntry> {
        self.profiles.iter().filter(|p| profile_accepts(&p.metadata, md)).collect()
    }

    pub fn reports_for_task(&self, task: &Iri) -> Vec<&ReportEntry> {
        self.reports.iter().filter(|r| &r.report.task == task).collect()
    }
}

/// Options shared by catalog loading and site rendering.
#[derive(Clone, Debug)]
pub struct SiteOptions {
    /// Permanent-URL root; `<base>datasets/<id>` is the dataset IRI used
    /// when a metadata file does not name its subject.
    pub purl_base: Iri,
    pub source_repo_base: Option<Iri>,
    pub source_branch: String,
    pub vocab: Vocabulary,
}

impl Default for SiteOptions {
    fn default() -> Self {
        SiteOptions {
            purl_base: Iri::new("https://w3id.org/benchreg/").expect("constant IRI"),
            source_repo_base: None,
            source_branch: "main".to_owned(),
            vocab: Vocabulary::default(),
        }
    }
}

impl SiteOptions {
    pub fn resource_iri(&self, kind: ResourceKind, id: &str) -> Iri {
        let base = self.purl_base.as_str().trim_end_matches('/');
        Iri::new(format!("{base}/{}/{id}", kind.segment())).unwrap_or_else(|_| self.purl_base.clone())
    }
}

fn read_turtle(path: &Path, base: &Iri) -> Result<RdfDataset, CatalogError> {
    let bytes = fs::read(path).map_err(|e| CatalogError::Io { path: path.to_owned(), source: e })?;
    parse_document(&bytes, RdfFormat::Turtle, Some(base)).map_err(|error| CatalogError::Syntax { path: path.to_owned(), error })
}

/// Subdirectories of `dir` that hold a `metadata.ttl`, sorted by name.
fn resource_dirs(dir: &Path) -> Result<Vec<String>, CatalogError> {
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let io = |e| CatalogError::Io { path: dir.to_owned(), source: e };
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(io)? {
        let entry = entry.map_err(io)?;
        if entry.path().join("metadata.ttl").is_file() {
            out.push(entry.file_name().to_string_lossy().into_owned());
        }
    }
    out.sort();
    Ok(out)
}

/// The single node typed with `class`, or the IRI derived from the
/// directory name when no node is typed.
fn subject_of(graph: &RdfDataset, class: &Iri, fallback: Iri, path: &Path) -> Result<Iri, CatalogError> {
    let typed: Vec<Subject> = graph.instances_of(class).into_iter().collect();
    match typed.as_slice() {
        [] => Ok(fallback),
        [Subject::Iri(i)] => Ok(i.clone()),
        [Subject::Blank(_)] => Err(CatalogError::Invalid { path: path.to_owned(), message: "the described resource must be an IRI".into() }),
        _ => Err(CatalogError::Invalid { path: path.to_owned(), message: format!("more than one {class} is described") }),
    }
}

fn ensure_typed(mut graph: RdfDataset, subject: &Iri, class: Iri) -> RdfDataset {
    graph.insert(Quad::triple(subject.clone(), rdf_vocab::type_(), class));
    graph
}

fn check_id(dir_name: &str, id: &str, path: &Path) -> Result<(), CatalogError> {
    if dir_name != id {
        return Err(CatalogError::Invalid {
            path: path.to_owned(),
            message: format!("identifier {id:?} does not match directory name {dir_name:?}"),
        });
    }
    Ok(())
}

/// Report slugs: the last IRI segment reduced to `[a-z0-9-]`, with a hash
/// suffix when two reports would collide.
pub fn report_slugs(reports: &[BenchmarkRunReport]) -> Vec<String> {
    fn base(iri: &Iri) -> String {
        let s = iri.as_str().trim_end_matches(['/', '#']);
        let (doc, fragment) = s.split_once('#').unwrap_or((s, ""));
        let mut tail = doc.rsplit(['/', ':']).next().unwrap_or("").to_owned();
        if !fragment.is_empty() {
            tail = format!("{tail}-{}", fragment.rsplit('/').next().unwrap_or(""));
        }
        let mut out = String::new();
        for c in tail.chars() {
            let c = c.to_ascii_lowercase();
            if c.is_ascii_lowercase() || c.is_ascii_digit() {
                out.push(c);
            } else if !out.ends_with('-') {
                out.push('-');
            }
        }
        let trimmed = out.trim_matches('-').to_owned();
        if trimmed.is_empty() {
            "report".to_owned()
        } else {
            trimmed
        }
    }
    let bases: Vec<String> = reports.iter().map(|r| base(&r.report_iri)).collect();
    let mut counts = BTreeMap::new();
    for b in &bases {
        *counts.entry(b.as_str()).or_insert(0) += 1;
    }
    bases
        .iter()
        .zip(reports)
        .map(|(b, r)| {
            if counts[b.as_str()] > 1 || b == "index" {
                format!("{b}-{}", &crate::package::sha256_hex(r.report_iri.as_str().as_bytes())[..8])
            } else {
                b.clone()
            }
        })
        .collect()
}

/// Builds catalog entries for reports, sorting them and assigning slugs.
pub fn report_entries(mut reports: Vec<(BenchmarkRunReport, RdfDataset)>) -> Vec<ReportEntry> {
    reports.sort_by(|a, b| b.0.date.cmp(&a.0.date).then_with(|| a.0.report_iri.cmp(&b.0.report_iri)));
    reports.dedup_by(|a, b| a.0.report_iri == b.0.report_iri);
    let slugs = report_slugs(&reports.iter().map(|r| r.0.clone()).collect::<Vec<_>>());
    reports
        .into_iter()
        .zip(slugs)
        .map(|((report, graph), slug)| ReportEntry { report, slug, graph })
        .collect()
}

pub fn report_graph(np: &Nanopublication, report: &BenchmarkRunReport, vocab: &Vocabulary) -> RdfDataset {
    ensure_typed(np.assertion.clone(), &report.report_iri, vocab.report_class())
}

/// Reads a registry source tree:
///
/// ```text
/// datasets/<id>/metadata.ttl           contributor metadata
/// datasets/<id>/package/metadata.ttl   optional, written by packaging
/// tasks/<id>/metadata.ttl
/// profiles/<id>/metadata.ttl
/// reports/*.trig                       report nanopublications
/// ```
///
/// Broken report files are skipped with a warning; every other problem is
/// an error.
pub fn load_catalog(dir: &Path, version: &str, options: &SiteOptions) -> Result<(Catalog, Vec<SiteWarning>), CatalogError> {
    let vocab = &options.vocab;
    let mut catalog = Catalog::empty(version);
    let mut warnings = Vec::new();

    for id in resource_dirs(&dir.join("datasets"))? {
        let rel = format!("datasets/{id}/metadata.ttl");
        let path = dir.join(&rel);
        let fallback = options.resource_iri(ResourceKind::Dataset, &id);
        let mut graph = read_turtle(&path, &fallback)?;
        let packaged = dir.join("datasets").join(&id).join("package/metadata.ttl");
        if packaged.is_file() {
            let computed = read_turtle(&packaged, &fallback)?;
            graph = enrich_metadata(&graph, &computed, vocab).map_err(|error| CatalogError::Conflict { path: packaged.clone(), error })?;
        }
        let subject = subject_of(&graph, &vocab.dataset_class(), fallback, &path)?;
        let metadata = extract_dataset_metadata(&graph, &subject, vocab).map_err(|error| CatalogError::Metadata { path: path.clone(), error })?;
        check_id(&id, &metadata.id, &path)?;
        let bad = |error| CatalogError::Metadata { path: path.clone(), error };
        let statistics = read_statistics(&graph, &subject, vocab).map_err(bad)?;
        let distributions = read_distributions(&graph, &subject, vocab).map_err(bad)?;
        let graph = ensure_typed(graph, &subject, vocab.dataset_class());
        catalog.datasets.push(DatasetEntry { metadata, statistics, distributions, graph, source_path: rel });
    }

    for id in resource_dirs(&dir.join("profiles"))? {
        let rel = format!("profiles/{id}/metadata.ttl");
        let path = dir.join(&rel);
        let fallback = options.resource_iri(ResourceKind::Profile, &id);
        let graph = read_turtle(&path, &fallback)?;
        let subject = subject_of(&graph, &vocab.profile_class(), fallback, &path)?;
        let metadata = extract_profile_metadata(&graph, &subject, vocab).map_err(|error| CatalogError::Metadata { path: path.clone(), error })?;
        check_id(&id, &metadata.id, &path)?;
        let graph = ensure_typed(graph, &subject, vocab.profile_class());
        catalog.profiles.push(ProfileEntry { metadata, graph, source_path: rel });
    }

    for id in resource_dirs(&dir.join("tasks"))? {
        let rel = format!("tasks/{id}/metadata.ttl");
        let path = dir.join(&rel);
        let fallback = options.resource_iri(ResourceKind::Task, &id);
        let graph = read_turtle(&path, &fallback)?;
        let subject = subject_of(&graph, &vocab.task_class(), fallback, &path)?;
        let metadata = extract_task_metadata(&graph, &subject, vocab).map_err(|error| CatalogError::Metadata { path: path.clone(), error })?;
        check_id(&id, &metadata.id, &path)?;
        for p in &metadata.required_profiles {
            if catalog.profile(p).is_none() {
                warnings.push(SiteWarning::dangling(&metadata.iri, "requiredProfile", p));
            }
        }
        let graph = ensure_typed(graph, &subject, vocab.task_class());
        catalog.tasks.push(TaskEntry { metadata, graph, source_path: rel });
    }

    let reports_dir = dir.join("reports");
    let mut reports = Vec::new();
    if reports_dir.is_dir() {
        let io = |e| CatalogError::Io { path: reports_dir.clone(), source: e };
        let mut files: Vec<PathBuf> = fs::read_dir(&reports_dir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().and_then(|e| e.to_str()) == Some("trig"))
            .collect();
        files.sort();
        for path in files {
            let rel = format!("reports/{}", path.file_name().unwrap_or_default().to_string_lossy());
            let bytes = fs::read(&path).map_err(|e| CatalogError::Io { path: path.clone(), source: e })?;
            let fallback = options.resource_iri(ResourceKind::Report, &rel);
            let parsed = parse_document(&bytes, RdfFormat::TriG, Some(&fallback))
                .map_err(|e| e.to_string())
                .and_then(|doc| parse_nanopub(&doc).map_err(|e| e.to_string()))
                .and_then(|np| extract_report(&np, vocab).map(|r| (np, r)).map_err(|e| e.to_string()));
            match parsed {
                Ok((np, report)) => {
                    let graph = report_graph(&np, &report, vocab);
                    reports.push((report, graph));
                }
                Err(message) => warnings.push(SiteWarning::Skipped { path: rel, message }),
            }
        }
    }
    catalog.reports = report_entries(reports);
    for r in &catalog.reports {
        if catalog.task(&r.report.task).is_none() {
            warnings.push(SiteWarning::dangling(&r.report.report_iri, "task", &r.report.task));
        }
        if catalog.profile(&r.report.profile).is_none() {
            warnings.push(SiteWarning::dangling(&r.report.report_iri, "profile", &r.report.profile));
        }
    }
    warnings.sort();
    warnings.dedup();
    Ok((catalog, warnings))
}
