//! Statistics and distributions as statements about the dataset node.

use super::{Distribution, DistributionKind, StatisticsReport};
use crate::metadata::{add, as_count, with_registry_prefixes, ExtractError, NodeView};
use crate::rdf::vocab::{rdf as rdf_vocab, xsd};
use crate::rdf::{Iri, Literal, RdfDataset, RdfFormat, Subject, Term};
use crate::vocab::Vocabulary;

/// `<base>/<suffix>`, with a single slash between the two.
pub fn derived_iri(base: &Iri, suffix: &str) -> Iri {
    let trimmed = base.as_str().trim_end_matches('/');
    Iri::new(format!("{trimmed}/{suffix}")).unwrap_or_else(|_| base.clone())
}

pub fn distribution_iri(dataset: &Iri, file_name: &str) -> Iri {
    derived_iri(dataset, &format!("files/{file_name}"))
}

fn integer(n: u64) -> Literal {
    Literal::typed(n.to_string(), xsd::integer())
}

pub fn statistics_to_rdf(stats: &StatisticsReport, dataset: &Iri, vocab: &Vocabulary) -> RdfDataset {
    let mut ds = RdfDataset::new();
    let s = dataset.clone();
    add(&mut ds, s.clone(), vocab.element_count(), integer(stats.element_count));
    add(&mut ds, s.clone(), vocab.statement_count(), integer(stats.total_statements));
    add(&mut ds, s.clone(), vocab.distinct_subjects(), integer(stats.distinct_subjects));
    add(&mut ds, s.clone(), vocab.distinct_predicates(), integer(stats.distinct_predicates));
    add(&mut ds, s.clone(), vocab.distinct_objects(), integer(stats.distinct_objects));
    add(&mut ds, s, vocab.uses_named_graphs(), Literal::boolean(stats.uses_named_graphs));
    with_registry_prefixes(ds, vocab)
}

pub fn distributions_to_rdf(dists: &[Distribution], dataset: &Iri, vocab: &Vocabulary) -> RdfDataset {
    let mut ds = RdfDataset::new();
    for d in dists {
        let node = distribution_iri(dataset, &d.file_name);
        add(&mut ds, dataset.clone(), vocab.distribution(), node.clone());
        add(&mut ds, node.clone(), rdf_vocab::type_(), vocab.distribution_class());
        let kind = match d.kind {
            DistributionKind::Flat => vocab.flat_distribution(),
            DistributionKind::Stream => vocab.stream_distribution(),
        };
        add(&mut ds, node.clone(), vocab.distribution_kind(), kind);
        add(&mut ds, node.clone(), vocab.media_type(), Literal::string(d.format.media_type()));
        if let Some(cap) = d.size_cap {
            add(&mut ds, node.clone(), vocab.size_cap(), integer(cap));
        }
        add(&mut ds, node.clone(), vocab.byte_size(), integer(d.byte_size));
        add(&mut ds, node.clone(), vocab.sha256(), Literal::string(&d.sha256));
        add(&mut ds, node, vocab.file_name(), Literal::string(&d.file_name));
    }
    with_registry_prefixes(ds, vocab)
}

/// `None` when the graph carries no computed statistics.
pub fn read_statistics(graph: &RdfDataset, dataset: &Iri, vocab: &Vocabulary) -> Result<Option<StatisticsReport>, ExtractError> {
    let v = NodeView::new(graph, Subject::Iri(dataset.clone()));
    if v.first(&vocab.statement_count()).is_none() {
        return Ok(None);
    }
    let named = match v.required("usesNamedGraphs", &vocab.uses_named_graphs())? {
        Term::Literal(l) if l.datatype().as_str() == xsd::BOOLEAN => l.lexical() == "true" || l.lexical() == "1",
        _ => return Err(ExtractError::mismatch("usesNamedGraphs", "expected a boolean")),
    };
    Ok(Some(StatisticsReport {
        element_count: v.count("elementCount", &vocab.element_count())?,
        total_statements: v.count("statementCount", &vocab.statement_count())?,
        distinct_subjects: v.count("distinctSubjects", &vocab.distinct_subjects())?,
        distinct_predicates: v.count("distinctPredicates", &vocab.distinct_predicates())?,
        distinct_objects: v.count("distinctObjects", &vocab.distinct_objects())?,
        uses_named_graphs: named,
    }))
}

pub fn read_distributions(graph: &RdfDataset, dataset: &Iri, vocab: &Vocabulary) -> Result<Vec<Distribution>, ExtractError> {
    let v = NodeView::new(graph, Subject::Iri(dataset.clone()));
    let mut out = Vec::new();
    for term in v.values(&vocab.distribution()) {
        let d = v.child(term, "distributions")?;
        let kind_iri = d.iri("distributions", &vocab.distribution_kind())?;
        let kind = if kind_iri == vocab.flat_distribution() {
            DistributionKind::Flat
        } else if kind_iri == vocab.stream_distribution() {
            DistributionKind::Stream
        } else {
            return Err(ExtractError::mismatch("distributions", format!("unknown kind {kind_iri}")));
        };
        let media = d.string("distributions", &vocab.media_type())?;
        let format = RdfFormat::from_media_type(&media)
            .ok_or_else(|| ExtractError::mismatch("distributions", format!("unknown media type {media}")))?;
        let size_cap = d.first(&vocab.size_cap()).map(|t| as_count("distributions", t)).transpose()?;
        out.push(Distribution {
            kind,
            format,
            size_cap,
            byte_size: d.count("distributions", &vocab.byte_size())?,
            sha256: d.string("distributions", &vocab.sha256())?,
            file_name: d.string("distributions", &vocab.file_name())?,
        });
    }
    out.sort_by_key(|d| (d.format, d.kind, d.size_cap.is_none(), d.size_cap));
    Ok(out)
}
