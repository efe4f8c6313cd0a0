use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::rdf::vocab::rdf as rdf_vocab;
use crate::rdf::{GraphName, Iri, Quad, RdfDataset, Subject, Term};
use crate::vocab::np;

/// The structural rule a document failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureRule {
    HeadLinks,
    MissingProvenance,
    EmptyAssertion,
    GraphCount,
}

impl StructureRule {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureRule::HeadLinks => "head-links",
            StructureRule::MissingProvenance => "missing-provenance",
            StructureRule::EmptyAssertion => "empty-assertion",
            StructureRule::GraphCount => "graph-count",
        }
    }
}

impl fmt::Display for StructureRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{rule}: {message}")]
pub struct StructureError {
    pub rule: StructureRule,
    pub message: String,
}

fn fail<T>(rule: StructureRule, message: impl Into<String>) -> Result<T, StructureError> {
    Err(StructureError { rule, message: message.into() })
}

/// A nanopublication split into its four graphs. Each part holds its
/// statements in the default graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nanopublication {
    pub uri: Iri,
    pub head_graph: Iri,
    pub assertion_graph: Iri,
    pub provenance_graph: Iri,
    pub pubinfo_graph: Iri,
    pub head: RdfDataset,
    pub assertion: RdfDataset,
    pub provenance: RdfDataset,
    pub pubinfo: RdfDataset,
}

impl Nanopublication {
    /// The four graphs as one dataset with named graphs.
    pub fn to_dataset(&self) -> RdfDataset {
        let mut out = RdfDataset::new();
        for (graph, part) in [
            (&self.head_graph, &self.head),
            (&self.assertion_graph, &self.assertion),
            (&self.provenance_graph, &self.provenance),
            (&self.pubinfo_graph, &self.pubinfo),
        ] {
            for q in part.iter() {
                out.insert(q.clone().in_graph(GraphName::Iri(graph.clone())));
            }
            for (p, ns) in part.prefixes() {
                out.set_prefix(p.clone(), ns.clone());
            }
        }
        out
    }
}

fn mentions(graph: &RdfDataset, iri: &Iri) -> bool {
    let subject = Subject::Iri(iri.clone());
    let term = Term::Iri(iri.clone());
    graph.iter().any(|q| q.subject == subject || q.object == term)
}

fn single_link(head: &RdfDataset, np_uri: &Iri, predicate: &Iri) -> Result<Option<Iri>, String> {
    let s = Subject::Iri(np_uri.clone());
    let values: Vec<&Term> = head.objects(&s, predicate).collect();
    match values.as_slice() {
        [] => Ok(None),
        [Term::Iri(i)] => Ok(Some(i.clone())),
        [_] => Err(format!("{predicate} must point at a graph IRI")),
        _ => Err(format!("{predicate} is given more than once")),
    }
}

pub fn parse_nanopub(doc: &RdfDataset) -> Result<Nanopublication, StructureError> {
    use StructureRule::*;

    let type_ = rdf_vocab::type_();
    let class = Term::Iri(np::nanopublication());
    let declarations: Vec<&Quad> = doc.iter().filter(|q| q.predicate == type_ && q.object == class).collect();
    let (uri, head_graph) = match declarations.as_slice() {
        [q] => match (&q.subject, &q.graph) {
            (Subject::Iri(u), GraphName::Iri(g)) => (u.clone(), g.clone()),
            _ => return fail(HeadLinks, "the nanopublication and its head graph must be IRIs"),
        },
        [] => return fail(HeadLinks, "no nanopublication is declared"),
        _ => return fail(HeadLinks, "more than one nanopublication is declared"),
    };
    let part = |g: &Iri| doc.graph(&GraphName::Iri(g.clone())).with_prefixes(doc.prefixes());
    let head = part(&head_graph);

    let link = |p: Iri| single_link(&head, &uri, &p).or_else(|m| fail(HeadLinks, m));
    let Some(assertion_graph) = link(np::has_assertion())? else {
        return fail(HeadLinks, "the head does not link an assertion graph");
    };
    let Some(pubinfo_graph) = link(np::has_publication_info())? else {
        return fail(HeadLinks, "the head does not link a publication info graph");
    };
    let Some(provenance_graph) = link(np::has_provenance())? else {
        return fail(MissingProvenance, "the head does not link a provenance graph");
    };
    let distinct: BTreeSet<&Iri> = [&head_graph, &assertion_graph, &provenance_graph, &pubinfo_graph].into();
    if distinct.len() != 4 {
        return fail(HeadLinks, "the four graphs must have distinct names");
    }

    let assertion = part(&assertion_graph);
    let provenance = part(&provenance_graph);
    let pubinfo = part(&pubinfo_graph);
    if provenance.is_empty() {
        return fail(MissingProvenance, format!("provenance graph {provenance_graph} is absent"));
    }
    if assertion.is_empty() {
        return fail(EmptyAssertion, format!("assertion graph {assertion_graph} is empty"));
    }
    let present = doc.graph_names();
    let expected: BTreeSet<GraphName> =
        distinct.iter().map(|g| GraphName::Iri((*g).clone())).collect();
    if present != expected {
        return fail(GraphCount, format!("expected exactly 4 named graphs, found {}", present.len()));
    }
    if !mentions(&provenance, &assertion_graph) {
        return fail(MissingProvenance, "the provenance graph does not mention the assertion");
    }
    if !mentions(&pubinfo, &uri) {
        return fail(HeadLinks, "the publication info graph does not mention the nanopublication");
    }
    Ok(Nanopublication {
        uri,
        head_graph,
        assertion_graph,
        provenance_graph,
        pubinfo_graph,
        head,
        assertion,
        provenance,
        pubinfo,
    })
}
