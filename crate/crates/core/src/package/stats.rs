use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SourceDataset;
use crate::metadata::{DatasetMetadata, StreamElementType, ValidationReport, Violation};
use crate::rdf::{BlankNode, GraphName, Iri, RdfDataset, Subject, Term};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StatisticsReport {
    pub element_count: u64,
    pub total_statements: u64,
    pub distinct_subjects: u64,
    pub distinct_predicates: u64,
    pub distinct_objects: u64,
    pub uses_named_graphs: bool,
}

/// Blank nodes are per element, so they are keyed by element index.
#[derive(Default)]
struct Distinct {
    subjects: BTreeSet<Term>,
    predicates: BTreeSet<Iri>,
    objects: BTreeSet<Term>,
    statements: u64,
    named_graphs: bool,
}

impl Distinct {
    fn of(index: usize, element: &RdfDataset) -> Self {
        let scoped = element.relabel_blank_nodes(|b| BlankNode::new(format!("e{index}_{}", b.label())));
        let mut d = Distinct { statements: scoped.len() as u64, ..Default::default() };
        for q in scoped.iter() {
            d.subjects.insert(match &q.subject {
                Subject::Iri(i) => Term::Iri(i.clone()),
                Subject::Blank(b) => Term::Blank(b.clone()),
            });
            d.predicates.insert(q.predicate.clone());
            d.objects.insert(q.object.clone());
            d.named_graphs |= q.graph != GraphName::Default;
        }
        d
    }

    fn union(mut self, other: Distinct) -> Distinct {
        self.subjects.extend(other.subjects);
        self.predicates.extend(other.predicates);
        self.objects.extend(other.objects);
        self.statements += other.statements;
        self.named_graphs |= other.named_graphs;
        self
    }
}

pub fn compute_statistics(src: &SourceDataset) -> StatisticsReport {
    let total = src
        .elements
        .par_iter()
        .enumerate()
        .map(|(i, e)| Distinct::of(i, e))
        .reduce(Distinct::default, Distinct::union);
    StatisticsReport {
        element_count: src.elements.len() as u64,
        total_statements: total.statements,
        distinct_subjects: total.subjects.len() as u64,
        distinct_predicates: total.predicates.len() as u64,
        distinct_objects: total.objects.len() as u64,
        uses_named_graphs: total.named_graphs,
    }
}

/// Checks the stream against what its metadata declares.
pub fn validate_contents(src: &SourceDataset, md: &DatasetMetadata) -> ValidationReport {
    let mut found = Vec::new();
    for (i, element) in src.elements.iter().enumerate() {
        if md.stream_element_type == StreamElementType::Triples && element.has_named_graphs() {
            found.push(Violation::error(
                "named-graphs-in-triples-stream",
                format!("element[{i}]"),
                format!("{} uses named graphs but the stream is declared as triples", src.names[i]),
            ));
        }
        if element.is_empty() {
            found.push(Violation::warning("empty-element", format!("element[{i}]"), format!("{} is empty", src.names[i])));
        }
    }
    if src.elements.len() as u64 != md.declared_element_count {
        found.push(Violation::error(
            "element-count-mismatch",
            "declaredElementCount",
            format!("{} elements declared, {} found", md.declared_element_count, src.elements.len()),
        ));
    }
    ValidationReport::new(found)
}
