use super::catalog::Catalog;
use super::ResourceKind;
use crate::metadata::with_registry_prefixes;
use crate::rdf::{serialize_document, Iri, Quad, RdfDataset, RdfFormat};
use crate::vocab::Vocabulary;

/// A catalog resource with its published metadata graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResourceGraph {
    pub kind: ResourceKind,
    /// `datasets/<id>`, `results/<slug>`, ...
    pub key: String,
    pub iri: Iri,
    pub title: String,
    pub graph: RdfDataset,
}

/// Every dataset, task, profile and report in catalog order. Profile graphs
/// carry their computed member list.
pub fn resource_graphs(catalog: &Catalog, vocab: &Vocabulary) -> Vec<ResourceGraph> {
    let mut out = Vec::new();
    for d in &catalog.datasets {
        out.push(ResourceGraph {
            kind: ResourceKind::Dataset,
            key: ResourceKind::Dataset.key(&d.metadata.id),
            iri: d.metadata.iri.clone(),
            title: d.metadata.title.clone(),
            graph: d.graph.clone(),
        });
    }
    for t in &catalog.tasks {
        out.push(ResourceGraph {
            kind: ResourceKind::Task,
            key: ResourceKind::Task.key(&t.metadata.id),
            iri: t.metadata.iri.clone(),
            title: t.metadata.name.clone(),
            graph: t.graph.clone(),
        });
    }
    for p in &catalog.profiles {
        let mut graph = p.graph.clone();
        for d in catalog.members(&p.metadata) {
            graph.insert(Quad::triple(p.metadata.iri.clone(), vocab.includes_dataset(), d.metadata.iri.clone()));
        }
        out.push(ResourceGraph {
            kind: ResourceKind::Profile,
            key: ResourceKind::Profile.key(&p.metadata.id),
            iri: p.metadata.iri.clone(),
            title: p.metadata.name.clone(),
            graph,
        });
    }
    for r in &catalog.reports {
        out.push(ResourceGraph {
            kind: ResourceKind::Report,
            key: ResourceKind::Report.key(&r.slug),
            iri: r.report.report_iri.clone(),
            title: format!("Benchmark run {}", r.slug),
            graph: r.graph.clone(),
        });
    }
    out
}

/// All resource graphs merged into the default graph; blank nodes stay
/// apart per resource.
pub fn merged_graph(catalog: &Catalog, vocab: &Vocabulary) -> RdfDataset {
    let mut merged = RdfDataset::new();
    for r in resource_graphs(catalog, vocab) {
        merged.merge_disjoint(&r.graph);
    }
    with_registry_prefixes(merged, vocab)
}

/// The dump in N-Quads and Turtle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetadataDump {
    pub nquads: Vec<u8>,
    pub turtle: Vec<u8>,
}

pub fn emit_metadata_dump(catalog: &Catalog, vocab: &Vocabulary) -> MetadataDump {
    let merged = merged_graph(catalog, vocab);
    MetadataDump {
        nquads: serialize_document(&merged, RdfFormat::NQuads).expect("N-Quads accepts any dataset"),
        turtle: serialize_document(&merged, RdfFormat::Turtle).expect("the merged graph has no named graphs"),
    }
}
