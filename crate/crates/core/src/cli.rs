//! The `benchreg` command line. Each command returns an exit code:
//! 0 success, 1 the input breaks a registry rule, 2 environment or I/O
//! failure (including unparseable input).

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::config::{ConfigError, RegistryConfig, DEFAULT_CONFIG_FILE};
use crate::metadata::{
    extract_dataset_metadata, validate_dataset_metadata, DatasetMetadata, Severity, ValidationReport,
    Violation,
};
use crate::nanopub::{
    build_report_nanopub, discover_reports, nanopub_to_trig, source_for, BenchmarkRunReport, EvaluatedSystem,
};
use crate::package::{derived_iri, load_source, package_dataset, validate_contents, write_package_output};
use crate::rdf::{parse_document, serialize_document, Iri, RdfDataset, RdfFormat, Subject};
use crate::server::{run_blocking, SnapshotStore, BIND_ENV, DEFAULT_BIND};
use crate::sitegen::{emit_metadata_dump, load_catalog, write_snapshot, ResourceKind, SiteOptions};
use crate::vocab::Vocabulary;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ENVIRONMENT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "benchreg", version, about = "Maintain an RDF benchmark registry")]
pub struct Cli {
    /// Configuration file [default: benchreg.toml if present]
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Only print errors
    #[arg(long, short, global = true)]
    pub quiet: bool,
    /// Print one JSON object with the outcome on stdout
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check dataset metadata files or dataset directories
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Validate a dataset and build its distributions and statistics
    Package {
        /// Directory or tar archive of element files
        source: PathBuf,
        /// Turtle metadata of the dataset
        metadata: PathBuf,
        out: PathBuf,
    },
    /// Discover benchmark run reports from the configured index
    FetchReports {
        out: PathBuf,
        /// Overrides `report-index-url`
        #[arg(long)]
        index: Option<String>,
    },
    /// Render the documentation site and metadata dumps of a catalog
    GenSite {
        catalog: PathBuf,
        out: PathBuf,
        /// Overrides the configured release label
        #[arg(long)]
        version: Option<String>,
    },
    /// Serve a generated snapshot
    Serve {
        snapshot: PathBuf,
        /// Listen address [default: $BENCHREG_BIND or 127.0.0.1:8080]
        #[arg(long)]
        bind: Option<SocketAddr>,
    },
    /// Write a benchmark run report nanopublication
    ReportNew(ReportArgs),
    /// Print the merged metadata of a catalog
    Dump {
        catalog: PathBuf,
        #[arg(long, default_value = "nquads")]
        format: RdfFormat,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Nanopublication URI
    #[arg(long)]
    pub uri: Iri,
    /// IRI of the report node [default: <uri>#report]
    #[arg(long)]
    pub report: Option<Iri>,
    #[arg(long)]
    pub task: Iri,
    #[arg(long)]
    pub profile: Iri,
    #[arg(long)]
    pub profile_version: String,
    #[arg(long)]
    pub code: Iri,
    /// `name=version`, repeatable, in order
    #[arg(long = "system", required = true, value_parser = parse_system)]
    pub systems: Vec<EvaluatedSystem>,
    #[arg(long)]
    pub orcid: String,
    #[arg(long)]
    pub date: NaiveDate,
    #[arg(long)]
    pub results: Option<Iri>,
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_system(s: &str) -> Result<EvaluatedSystem, String> {
    match s.split_once('=') {
        Some((name, version)) if !name.trim().is_empty() && !version.trim().is_empty() => {
            Ok(EvaluatedSystem { name: name.trim().to_owned(), version: version.trim().to_owned() })
        }
        _ => Err(format!("expected name=version, got {s:?}")),
    }
}

/// One line of command output.
#[derive(Clone, Debug, Serialize)]
pub struct Diagnostic {
    pub level: &'static str,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub message: String,
}

impl Diagnostic {
    fn new(level: &'static str, source: impl ToString, message: impl ToString) -> Self {
        Diagnostic { level, source: source.to_string(), rule: None, path: None, message: message.to_string() }
    }

    fn error(source: impl ToString, message: impl ToString) -> Self {
        Self::new("error", source, message)
    }

    fn warning(source: impl ToString, message: impl ToString) -> Self {
        Self::new("warning", source, message)
    }

    fn from_violation(source: &Path, v: &Violation) -> Self {
        Diagnostic {
            level: if v.severity == Severity::Error { "error" } else { "warning" },
            source: source.display().to_string(),
            rule: Some(v.rule_id.clone()),
            path: Some(v.path.clone()),
            message: v.message.clone(),
        }
    }
}

/// The result of one command.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub command: &'static str,
    #[serde(rename = "exitCode")]
    pub exit_code: i32,
    pub diagnostics: Vec<Diagnostic>,
    pub outputs: Vec<String>,
}

impl Outcome {
    fn new(command: &'static str) -> Self {
        Outcome { command, exit_code: EXIT_OK, diagnostics: Vec::new(), outputs: Vec::new() }
    }

    /// Raises the exit code; never lowers it.
    fn raise(&mut self, code: i32) {
        self.exit_code = self.exit_code.max(code);
    }

    fn fail(mut self, code: i32, d: Diagnostic) -> Self {
        self.raise(code);
        self.diagnostics.push(d);
        self
    }
}

/// Stages a directory next to `out` and swaps it in only when `build`
/// succeeds, so a failing command leaves `out` as it was.
fn atomic_dir<E>(out: &Path, build: impl FnOnce(&Path) -> Result<(), E>) -> Result<Result<(), E>, std::io::Error> {
    let parent = match out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_owned(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&parent)?;
    let stage = tempfile::Builder::new().prefix(".benchreg-stage-").tempdir_in(&parent)?;
    if let Err(e) = build(stage.path()) {
        return Ok(Err(e));
    }
    let staged = stage.keep();
    if out.exists() {
        let old = tempfile::Builder::new().prefix(".benchreg-old-").tempdir_in(&parent)?;
        let old_path = old.path().join("previous");
        fs::rename(out, &old_path)?;
        if let Err(e) = fs::rename(&staged, out) {
            let _ = fs::rename(&old_path, out);
            let _ = fs::remove_dir_all(&staged);
            return Err(e);
        }
        drop(old);
    } else if let Err(e) = fs::rename(&staged, out) {
        let _ = fs::remove_dir_all(&staged);
        return Err(e);
    }
    Ok(Ok(()))
}

fn atomic_file(out: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let parent = match out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_owned(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&parent)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&parent)?;
    tmp.write_all(bytes)?;
    tmp.persist(out).map_err(|e| e.error)?;
    Ok(())
}

fn turtle(ds: &RdfDataset) -> Vec<u8> {
    serialize_document(ds, RdfFormat::Turtle).expect("metadata graphs have no named graphs")
}

/// Metadata of one dataset, read the way the catalog reads it: relative
/// IRIs resolve against the dataset's permanent URL, derived from the name
/// of the directory holding the file.
struct LoadedMetadata {
    graph: RdfDataset,
    subject: Iri,
}

enum MetadataFailure {
    Environment(String),
    Invalid(ValidationReport),
}

fn dataset_iri_for(path: &Path, site: &SiteOptions) -> Iri {
    let abs = fs::canonicalize(path).unwrap_or_else(|_| path.to_owned());
    let id = abs.parent().and_then(|p| p.file_name()).map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    site.resource_iri(ResourceKind::Dataset, &id)
}

fn load_metadata(path: &Path, site: &SiteOptions) -> Result<LoadedMetadata, MetadataFailure> {
    let bytes = fs::read(path).map_err(|e| MetadataFailure::Environment(e.to_string()))?;
    let base = dataset_iri_for(path, site);
    let graph = parse_document(&bytes, RdfFormat::Turtle, Some(&base))
        .map_err(|e| MetadataFailure::Environment(format!("syntax error: {e}")))?;
    let typed: Vec<Subject> = graph.instances_of(&site.vocab.dataset_class()).into_iter().collect();
    let subject = match typed.as_slice() {
        [] => base,
        [Subject::Iri(i)] => i.clone(),
        [Subject::Blank(_)] => {
            return Err(MetadataFailure::Invalid(ValidationReport::new(vec![Violation::error(
                "subject",
                "iri",
                "the described dataset must be an IRI",
            )])))
        }
        _ => {
            return Err(MetadataFailure::Invalid(ValidationReport::new(vec![Violation::error(
                "subject",
                "iri",
                "more than one dataset is described",
            )])))
        }
    };
    Ok(LoadedMetadata { graph, subject })
}

fn extract(loaded: &LoadedMetadata, vocab: &Vocabulary) -> Result<DatasetMetadata, ValidationReport> {
    extract_dataset_metadata(&loaded.graph, &loaded.subject, vocab).map_err(|e| e.to_report())
}

fn report_path_for(input: &Path) -> PathBuf {
    if input.is_dir() {
        return input.join("validation.ttl");
    }
    let stem = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    input.with_file_name(format!("{stem}.validation.ttl"))
}

fn source_in(dir: &Path) -> Option<PathBuf> {
    ["source", "source.tar"].iter().map(|n| dir.join(n)).find(|p| p.exists())
}

fn validate_one(path: &Path, config: &RegistryConfig, out: &mut Outcome) {
    let site = config.site_options();
    let vocab = &site.vocab;
    let (metadata_path, source) = if path.is_dir() {
        (path.join("metadata.ttl"), source_in(path))
    } else {
        (path.to_owned(), None)
    };
    let loaded = match load_metadata(&metadata_path, &site) {
        Ok(l) => l,
        Err(MetadataFailure::Environment(m)) => {
            out.raise(EXIT_ENVIRONMENT);
            out.diagnostics.push(Diagnostic::error(metadata_path.display(), m));
            return;
        }
        Err(MetadataFailure::Invalid(report)) => {
            let focus = dataset_iri_for(&metadata_path, &site);
            write_report(path, &report, &focus, vocab, out);
            return;
        }
    };
    let report = match extract(&loaded, vocab) {
        Ok(md) => {
            let mut report = validate_dataset_metadata(&md, &config.policy());
            if let Some(src) = source {
                match load_source(&src) {
                    Ok(s) => report = report.merge(&validate_contents(&s, &md)),
                    Err(e) => {
                        let code = if e.is_environmental() { EXIT_ENVIRONMENT } else { EXIT_VIOLATION };
                        out.raise(code);
                        out.diagnostics.push(Diagnostic::error(src.display(), e));
                        return;
                    }
                }
            }
            report
        }
        Err(report) => report,
    };
    write_report(path, &report, &loaded.subject, vocab, out);
}

fn write_report(input: &Path, report: &ValidationReport, focus: &Iri, vocab: &Vocabulary, out: &mut Outcome) {
    let target = report_path_for(input);
    let graph = report.to_rdf(&derived_iri(focus, "validation"), focus, vocab);
    if let Err(e) = atomic_file(&target, &turtle(&graph)) {
        out.raise(EXIT_ENVIRONMENT);
        out.diagnostics.push(Diagnostic::error(target.display(), e));
        return;
    }
    out.outputs.push(target.display().to_string());
    out.diagnostics.extend(report.violations().iter().map(|v| Diagnostic::from_violation(input, v)));
    if report.has_errors() {
        out.raise(EXIT_VIOLATION);
    }
}

pub fn cmd_validate(paths: &[PathBuf], config: &RegistryConfig) -> Outcome {
    let mut out = Outcome::new("validate");
    for p in paths {
        if !p.exists() {
            out.raise(EXIT_ENVIRONMENT);
            out.diagnostics.push(Diagnostic::error(p.display(), "no such file or directory"));
            continue;
        }
        validate_one(p, config, &mut out);
    }
    out
}

pub fn cmd_package(source: &Path, metadata: &Path, target: &Path, config: &RegistryConfig) -> Outcome {
    let out = Outcome::new("package");
    let options = match config.package_options() {
        Ok(o) => o,
        Err(e) => return out.fail(EXIT_ENVIRONMENT, Diagnostic::error("config", e)),
    };
    let site = config.site_options();
    let loaded = match load_metadata(metadata, &site) {
        Ok(l) => l,
        Err(MetadataFailure::Environment(m)) => return out.fail(EXIT_ENVIRONMENT, Diagnostic::error(metadata.display(), m)),
        Err(MetadataFailure::Invalid(r)) => return with_report(out, metadata, &r),
    };
    let md = match extract(&loaded, &options.vocab) {
        Ok(md) => md,
        Err(r) => return with_report(out, metadata, &r),
    };
    let src = match load_source(source) {
        Ok(s) => s,
        Err(e) => {
            let code = if e.is_environmental() { EXIT_ENVIRONMENT } else { EXIT_VIOLATION };
            return out.fail(code, Diagnostic::error(source.display(), e));
        }
    };
    let result = match package_dataset(&src, &loaded.graph, &md, &options) {
        Ok(r) => r,
        Err(e) => {
            let code = if e.is_environmental() { EXIT_ENVIRONMENT } else { EXIT_VIOLATION };
            return out.fail(code, Diagnostic::error(source.display(), e));
        }
    };
    if !result.succeeded() {
        return with_report(out, metadata, &result.report);
    }
    let mut out = out;
    out.diagnostics.extend(result.report.violations().iter().map(|v| Diagnostic::from_violation(metadata, v)));
    match atomic_dir(target, |dir| write_package_output(&result, dir, &options.vocab)) {
        Ok(Ok(())) => {
            out.outputs.extend(result.artifacts.iter().map(|a| target.join("dist").join(&a.distribution.file_name).display().to_string()));
            out
        }
        Ok(Err(e)) => out.fail(EXIT_ENVIRONMENT, Diagnostic::error(target.display(), e)),
        Err(e) => out.fail(EXIT_ENVIRONMENT, Diagnostic::error(target.display(), e)),
    }
}

fn with_report(mut out: Outcome, source: &Path, report: &ValidationReport) -> Outcome {
    out.diagnostics.extend(report.violations().iter().map(|v| Diagnostic::from_violation(source, v)));
    if report.has_errors() {
        out.raise(EXIT_VIOLATION);
    }
    out
}

/// File stem for a fetched nanopublication: its IRI, reduced to safe
/// characters, with the position in the sorted list as a tiebreaker.
fn nanopub_file_name(index: usize, iri: &Iri) -> String {
    let tail: String = iri
        .as_str()
        .trim_end_matches(['/', '#'])
        .rsplit(['/', '#'])
        .next()
        .unwrap_or("")
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.' { c } else { '-' })
        .take(64)
        .collect();
    let tail = tail.trim_matches(['-', '.']);
    if tail.is_empty() {
        format!("{index:04}.trig")
    } else {
        format!("{index:04}-{tail}.trig")
    }
}

pub fn cmd_fetch_reports(target: &Path, index: Option<&str>, config: &RegistryConfig) -> Outcome {
    let out = Outcome::new("fetch-reports");
    let Some(location) = index.or(config.report_index_url.as_deref()) else {
        return out.fail(EXIT_ENVIRONMENT, Diagnostic::error("config", "no report index configured (report-index-url or --index)"));
    };
    let source = match source_for(location, config.timeout()) {
        Ok(s) => s,
        Err(e) => return out.fail(EXIT_ENVIRONMENT, Diagnostic::error(location, e)),
    };
    let discovery = match discover_reports(source.as_ref(), &config.discovery_options()) {
        Ok(d) => d,
        Err(e) => return out.fail(EXIT_ENVIRONMENT, Diagnostic::error(location, e)),
    };
    let mut out = out;
    for (iri, e) in &discovery.diagnostics {
        out.diagnostics.push(Diagnostic::warning(iri, e));
    }
    let reports: Vec<&BenchmarkRunReport> = discovery.reports.iter().map(|r| &r.report).collect();
    let mut files = Vec::new();
    let written = atomic_dir(target, |dir| -> std::io::Result<()> {
        for (i, r) in discovery.reports.iter().enumerate() {
            let name = nanopub_file_name(i, &r.source);
            fs::write(dir.join(&name), nanopub_to_trig(&r.nanopub))?;
            files.push(name);
        }
        let mut json = serde_json::to_vec_pretty(&reports).map_err(std::io::Error::other)?;
        json.push(b'\n');
        fs::write(dir.join("reports.json"), json)?;
        let mut log = String::new();
        for (iri, e) in &discovery.diagnostics {
            log.push_str(&format!("{iri}\t{e}\n"));
        }
        fs::write(dir.join("diagnostics.log"), log)
    });
    match written {
        Ok(Ok(())) => {
            out.outputs.extend(files.iter().map(|f| target.join(f).display().to_string()));
            out
        }
        Ok(Err(e)) | Err(e) => out.fail(EXIT_ENVIRONMENT, Diagnostic::error(target.display(), e)),
    }
}

pub fn cmd_gen_site(catalog_dir: &Path, target: &Path, version: Option<&str>, config: &RegistryConfig) -> Outcome {
    let out = Outcome::new("gen-site");
    let version = version.unwrap_or(&config.version);
    if version.is_empty() || version.contains('/') {
        return out.fail(EXIT_VIOLATION, Diagnostic::error("version", "version must be a single path segment"));
    }
    if !catalog_dir.is_dir() {
        return out.fail(EXIT_ENVIRONMENT, Diagnostic::error(catalog_dir.display(), "catalog directory not found"));
    }
    let site = config.site_options();
    let (catalog, warnings) = match load_catalog(catalog_dir, version, &site) {
        Ok(c) => c,
        Err(e) => {
            use crate::sitegen::CatalogError;
            let code = if matches!(e, CatalogError::Io { .. } | CatalogError::Syntax { .. }) { EXIT_ENVIRONMENT } else { EXIT_VIOLATION };
            return out.fail(code, Diagnostic::error(catalog_dir.display(), e));
        }
    };
    let mut manifest = None;
    let written = atomic_dir(target, |dir| {
        manifest = Some(write_snapshot(&catalog, &site, &warnings, dir)?);
        Ok::<(), std::io::Error>(())
    });
    let mut out = out;
    match written {
        Ok(Ok(())) => {
            let manifest = manifest.expect("written on success");
            out.diagnostics.extend(manifest.warnings.iter().map(|w| Diagnostic::warning(catalog_dir.display(), w)));
            out.outputs.extend(manifest.resources.iter().map(|r| target.join("site").join(&r.page).display().to_string()));
            out
        }
        Ok(Err(e)) | Err(e) => out.fail(EXIT_ENVIRONMENT, Diagnostic::error(target.display(), e)),
    }
}

pub fn cmd_report_new(args: &ReportArgs, config: &RegistryConfig) -> Outcome {
    let out = Outcome::new("report-new");
    let vocab = config.vocabulary();
    let report = BenchmarkRunReport {
        report_iri: args.report.clone().unwrap_or_else(|| crate::nanopub::local_iri(&args.uri, "report")),
        task: args.task.clone(),
        profile: args.profile.clone(),
        profile_version: args.profile_version.clone(),
        benchmark_code: args.code.clone(),
        systems: args.systems.clone(),
        author_orcid: crate::metadata::orcid::bare_orcid(&args.orcid).to_owned(),
        date: args.date,
        results_link: args.results.clone(),
    };
    let np = match build_report_nanopub(&report, &args.uri, &vocab) {
        Ok(np) => np,
        Err(e) => return out.fail(EXIT_VIOLATION, Diagnostic::error("report", e)),
    };
    match atomic_file(&args.out, &nanopub_to_trig(&np)) {
        Ok(()) => {
            let mut out = out;
            out.outputs.push(args.out.display().to_string());
            out
        }
        Err(e) => out.fail(EXIT_ENVIRONMENT, Diagnostic::error(args.out.display(), e)),
    }
}

/// Returns the dump bytes when no output file is given.
pub fn cmd_dump(catalog_dir: &Path, format: RdfFormat, target: Option<&Path>, config: &RegistryConfig) -> (Outcome, Option<Vec<u8>>) {
    let out = Outcome::new("dump");
    if !catalog_dir.is_dir() {
        return (out.fail(EXIT_ENVIRONMENT, Diagnostic::error(catalog_dir.display(), "catalog directory not found")), None);
    }
    let site = config.site_options();
    let (catalog, _) = match load_catalog(catalog_dir, &config.version, &site) {
        Ok(c) => c,
        Err(e) => return (out.fail(EXIT_ENVIRONMENT, Diagnostic::error(catalog_dir.display(), e)), None),
    };
    let dump = emit_metadata_dump(&catalog, &site.vocab);
    let bytes = match format {
        RdfFormat::NQuads => dump.nquads,
        RdfFormat::Turtle => dump.turtle,
        other => {
            let graph = crate::sitegen::merged_graph(&catalog, &site.vocab);
            match serialize_document(&graph, other) {
                Ok(b) => b,
                Err(e) => return (out.fail(EXIT_VIOLATION, Diagnostic::error("format", e)), None),
            }
        }
    };
    match target {
        None => (out, Some(bytes)),
        Some(path) => match atomic_file(path, &bytes) {
            Ok(()) => {
                let mut out = out;
                out.outputs.push(path.display().to_string());
                (out, None)
            }
            Err(e) => (out.fail(EXIT_ENVIRONMENT, Diagnostic::error(path.display(), e)), None),
        },
    }
}

fn load_config(cli: &Cli) -> Result<RegistryConfig, ConfigError> {
    match &cli.config {
        Some(p) => RegistryConfig::load(p, true),
        None => RegistryConfig::load(Path::new(DEFAULT_CONFIG_FILE), false),
    }
}

fn report(cli: &Cli, outcome: &Outcome) {
    if cli.json {
        let mut line = serde_json::to_string(outcome).unwrap_or_else(|_| json!({"exitCode": outcome.exit_code}).to_string());
        line.push('\n');
        let _ = std::io::stdout().write_all(line.as_bytes());
        return;
    }
    for d in &outcome.diagnostics {
        if cli.quiet && d.level != "error" {
            continue;
        }
        let location = match &d.path {
            Some(p) => format!("{} [{}] {}", d.source, d.rule.as_deref().unwrap_or("-"), p),
            None => d.source.clone(),
        };
        eprintln!("{}: {location}: {}", d.level, d.message);
    }
    if !cli.quiet {
        for o in &outcome.outputs {
            eprintln!("wrote {o}");
        }
    }
}

/// Runs a parsed command line and returns its exit code.
pub fn run(cli: Cli) -> i32 {
    let config = match load_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            let outcome = Outcome::new("config").fail(EXIT_ENVIRONMENT, Diagnostic::error("config", e));
            report(&cli, &outcome);
            return outcome.exit_code;
        }
    };
    let outcome = match &cli.command {
        Command::Validate { paths } => cmd_validate(paths, &config),
        Command::Package { source, metadata, out } => cmd_package(source, metadata, out, &config),
        Command::FetchReports { out, index } => cmd_fetch_reports(out, index.as_deref(), &config),
        Command::GenSite { catalog, out, version } => cmd_gen_site(catalog, out, version.as_deref(), &config),
        Command::ReportNew(args) => cmd_report_new(args, &config),
        Command::Dump { catalog, format, out } => {
            let (outcome, bytes) = cmd_dump(catalog, *format, out.as_deref(), &config);
            if let Some(b) = bytes {
                let _ = std::io::stdout().write_all(&b);
            }
            outcome
        }
        Command::Serve { snapshot, bind } => cmd_serve(snapshot, *bind, cli.quiet),
    };
    report(&cli, &outcome);
    outcome.exit_code
}

fn cmd_serve(snapshot: &Path, bind: Option<SocketAddr>, quiet: bool) -> Outcome {
    let out = Outcome::new("serve");
    let addr = match bind {
        Some(a) => a,
        None => {
            let raw = std::env::var(BIND_ENV).unwrap_or_else(|_| DEFAULT_BIND.to_owned());
            match raw.parse() {
                Ok(a) => a,
                Err(_) => return out.fail(EXIT_ENVIRONMENT, Diagnostic::error(BIND_ENV, format!("{raw:?} is not a socket address"))),
            }
        }
    };
    let store = match SnapshotStore::open(snapshot) {
        Ok(s) => s,
        Err(e) => return out.fail(EXIT_ENVIRONMENT, Diagnostic::error(snapshot.display(), e)),
    };
    match run_blocking(store, addr, |local| {
        if !quiet {
            eprintln!("serving {} on http://{local}", snapshot.display());
        }
    }) {
        Ok(()) => out,
        Err(e) => out.fail(EXIT_ENVIRONMENT, Diagnostic::error(addr, e)),
    }
}

/// Parses `args` (including the program name) and runs the command. Usage
/// errors exit with 1; `--help` and `--version` with 0.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
    }
}
