//! Benchmark run reports published as nanopublications: structural checks,
//! report extraction and construction, and discovery from an index.

mod discover;
mod report;
mod structure;

pub use discover::{
    discover_reports, parse_index, source_for, DirectorySource, DiscoveredReport, Discovery, DiscoveryError,
    DiscoveryOptions, HttpIndexSource, ReportIndexSource, SourceUnavailableError,
};
pub use report::{build_report_nanopub, extract_report, local_iri, BenchmarkRunReport, EvaluatedSystem};
pub use structure::{parse_nanopub, Nanopublication, StructureError, StructureRule};

use crate::rdf::{serialize_document, RdfFormat};

/// Deterministic TriG text of a nanopublication.
pub fn nanopub_to_trig(np: &Nanopublication) -> Vec<u8> {
    serialize_document(&np.to_dataset(), RdfFormat::TriG).expect("TriG expresses named graphs")
}
