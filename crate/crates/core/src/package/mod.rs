//! Dataset processing: load a stream of element files, check it against the
//! declared metadata, compute statistics and build distributions.

mod distribute;
mod rdf;
mod source;
mod stats;

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use distribute::{
    build_distributions, deterministic_tar, effective_caps, sha256_hex, Artifact, Distribution, DistributionKind,
    DEFAULT_CAP_LADDER,
};
pub use rdf::{derived_iri, distribution_iri, distributions_to_rdf, read_distributions, read_statistics, statistics_to_rdf};
pub use source::{load_source, SourceDataset};
pub use stats::{compute_statistics, validate_contents, StatisticsReport};

use crate::metadata::{
    enrich_metadata, validate_dataset_metadata, ConflictError, DatasetMetadata, ExtractError, ValidationPolicy,
    ValidationReport,
};
use crate::rdf::{serialize_document, FormatCapabilityError, ParseError, RdfDataset, RdfFormat};
use crate::vocab::Vocabulary;

#[derive(Debug, Error)]
pub enum PackageError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{file}: {error}")]
    Syntax { file: String, error: ParseError },
    #[error("{} contains no RDF files", .0.display())]
    EmptySource(PathBuf),
    #[error(transparent)]
    Metadata(#[from] ExtractError),
    #[error(transparent)]
    Capability(#[from] FormatCapabilityError),
    #[error(transparent)]
    Conflict(#[from] ConflictError),
}

impl PackageError {
    /// Problems with the environment or unreadable input, as opposed to
    /// content that breaks a registry rule.
    pub fn is_environmental(&self) -> bool {
        matches!(self, PackageError::Io { .. } | PackageError::Syntax { .. })
    }
}

#[derive(Clone, Debug)]
pub struct PackageOptions {
    pub ladder: Vec<u64>,
    pub formats: Vec<RdfFormat>,
    pub policy: ValidationPolicy,
    pub vocab: Vocabulary,
}

impl Default for PackageOptions {
    fn default() -> Self {
        PackageOptions {
            ladder: DEFAULT_CAP_LADDER.to_vec(),
            formats: vec![RdfFormat::NQuads],
            policy: ValidationPolicy::default(),
            vocab: Vocabulary::default(),
        }
    }
}

/// Everything one packaging run produces. Artifacts and statistics are only
/// present when validation found no errors.
#[derive(Clone, Debug)]
pub struct PackageOutput {
    pub metadata: DatasetMetadata,
    pub report: ValidationReport,
    pub statistics: Option<StatisticsReport>,
    pub artifacts: Vec<Artifact>,
    pub enriched: Option<RdfDataset>,
}

impl PackageOutput {
    pub fn succeeded(&self) -> bool {
        self.enriched.is_some()
    }
}

pub fn package_dataset(
    source: &SourceDataset,
    metadata_graph: &RdfDataset,
    md: &DatasetMetadata,
    options: &PackageOptions,
) -> Result<PackageOutput, PackageError> {
    let report = validate_dataset_metadata(md, &options.policy).merge(&validate_contents(source, md));
    let mut out = PackageOutput { metadata: md.clone(), report, statistics: None, artifacts: Vec::new(), enriched: None };
    if out.report.has_errors() {
        return Ok(out);
    }
    let stats = compute_statistics(source);
    let artifacts = build_distributions(source, &options.ladder, &options.formats)?;
    let dists: Vec<Distribution> = artifacts.iter().map(|a| a.distribution.clone()).collect();
    let mut computed = statistics_to_rdf(&stats, &md.iri, &options.vocab);
    computed.extend(distributions_to_rdf(&dists, &md.iri, &options.vocab).iter().cloned());
    out.enriched = Some(enrich_metadata(metadata_graph, &computed, &options.vocab)?);
    out.statistics = Some(stats);
    out.artifacts = artifacts;
    Ok(out)
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), PackageError> {
    fs::write(path, bytes).map_err(|e| PackageError::Io { path: path.to_owned(), source: e })
}

fn turtle(ds: &RdfDataset) -> Vec<u8> {
    serialize_document(ds, RdfFormat::Turtle).expect("metadata graphs have no named graphs")
}

/// Writes `validation.ttl` and, on success, `dist/`, `stats.ttl` and the
/// enriched `metadata.ttl` into `dir`.
pub fn write_package_output(output: &PackageOutput, dir: &Path, vocab: &Vocabulary) -> Result<(), PackageError> {
    let io = |e| PackageError::Io { path: dir.to_owned(), source: e };
    fs::create_dir_all(dir).map_err(io)?;
    let report_iri = derived_iri(&output.metadata.iri, "validation");
    write(&dir.join("validation.ttl"), &turtle(&output.report.to_rdf(&report_iri, &output.metadata.iri, vocab)))?;
    if let (Some(stats), Some(enriched)) = (&output.statistics, &output.enriched) {
        let dist = dir.join("dist");
        fs::create_dir_all(&dist).map_err(io)?;
        for a in &output.artifacts {
            write(&dist.join(&a.distribution.file_name), &a.bytes)?;
        }
        write(&dir.join("stats.ttl"), &turtle(&statistics_to_rdf(stats, &output.metadata.iri, vocab)))?;
        write(&dir.join("metadata.ttl"), &turtle(enriched))?;
    }
    Ok(())
}
