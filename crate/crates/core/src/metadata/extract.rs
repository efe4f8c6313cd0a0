//! Typed projections of metadata graphs, and the inverse writers.

use std::collections::BTreeSet;

use thiserror::Error;

use super::model::*;
use super::orcid::{bare_orcid, orcid_url};
use crate::rdf::vocab::{rdf as rdf_vocab, xsd};
use crate::rdf::{literal_as_integer, write_list, BlankNode, Iri, Literal, Quad, RdfDataset, Subject, Term};
use crate::vocab::Vocabulary;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("missing required field {0}")]
    MissingField(String),
    #[error("wrong value for {field}: {message}")]
    TypeMismatch { field: String, message: String },
}

impl ExtractError {
    /// The failure as a one-violation report (`missing-field` or `type-mismatch`).
    pub fn to_report(&self) -> super::ValidationReport {
        let rule = match self {
            ExtractError::MissingField(_) => "missing-field",
            ExtractError::TypeMismatch { .. } => "type-mismatch",
        };
        super::ValidationReport::new(vec![super::Violation::error(rule, self.field(), self.to_string())])
    }

    pub fn field(&self) -> &str {
        match self {
            ExtractError::MissingField(f) => f,
            ExtractError::TypeMismatch { field, .. } => field,
        }
    }

    pub(crate) fn mismatch(field: &str, message: impl Into<String>) -> Self {
        ExtractError::TypeMismatch { field: field.to_owned(), message: message.into() }
    }
}

/// Read access to the statements about one node. When a functional property
/// carries several values, the first one in canonical term order is used.
pub(crate) struct NodeView<'a> {
    pub graph: &'a RdfDataset,
    pub node: Subject,
}

impl<'a> NodeView<'a> {
    pub fn new(graph: &'a RdfDataset, node: Subject) -> Self {
        NodeView { graph, node }
    }

    pub fn values(&self, predicate: &Iri) -> Vec<&'a Term> {
        let mut v: Vec<&Term> = self
            .graph
            .iter()
            .filter(|q| q.subject == self.node && &q.predicate == predicate)
            .map(|q| &q.object)
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn first(&self, predicate: &Iri) -> Option<&'a Term> {
        self.values(predicate).into_iter().next()
    }

    pub fn required(&self, field: &str, predicate: &Iri) -> Result<&'a Term, ExtractError> {
        self.first(predicate).ok_or_else(|| ExtractError::MissingField(field.to_owned()))
    }

    pub fn string(&self, field: &str, predicate: &Iri) -> Result<String, ExtractError> {
        as_text(field, self.required(field, predicate)?)
    }

    pub fn opt_string(&self, field: &str, predicate: &Iri) -> Result<Option<String>, ExtractError> {
        self.first(predicate).map(|t| as_text(field, t)).transpose()
    }

    pub fn iri(&self, field: &str, predicate: &Iri) -> Result<Iri, ExtractError> {
        as_iri(field, self.required(field, predicate)?)
    }

    pub fn opt_iri(&self, field: &str, predicate: &Iri) -> Result<Option<Iri>, ExtractError> {
        self.first(predicate).map(|t| as_iri(field, t)).transpose()
    }

    pub fn count(&self, field: &str, predicate: &Iri) -> Result<u64, ExtractError> {
        as_count(field, self.required(field, predicate)?)
    }

    pub fn child(&self, term: &Term, field: &str) -> Result<NodeView<'a>, ExtractError> {
        match term.to_subject() {
            Some(node) => Ok(NodeView { graph: self.graph, node }),
            None => Err(ExtractError::mismatch(field, "expected a node, found a literal")),
        }
    }

    pub fn list(&self, field: &str, predicate: &Iri) -> Result<Vec<Term>, ExtractError> {
        let head = self.required(field, predicate)?;
        self.graph.read_list(head).ok_or_else(|| ExtractError::mismatch(field, "malformed RDF list"))
    }
}

pub(crate) fn as_text(field: &str, term: &Term) -> Result<String, ExtractError> {
    match term {
        Term::Literal(l) if l.is_plain_string() || l.language().is_some() => Ok(l.lexical().to_owned()),
        Term::Literal(l) => Err(ExtractError::mismatch(field, format!("expected a string, found datatype {}", l.datatype()))),
        _ => Err(ExtractError::mismatch(field, "expected a string literal")),
    }
}

pub(crate) fn as_iri(field: &str, term: &Term) -> Result<Iri, ExtractError> {
    match term {
        Term::Iri(i) => Ok(i.clone()),
        Term::Blank(_) => Err(ExtractError::mismatch(field, "expected an IRI, found a blank node")),
        Term::Literal(_) => Err(ExtractError::mismatch(field, "expected an IRI, found a literal")),
    }
}

pub(crate) fn as_count(field: &str, term: &Term) -> Result<u64, ExtractError> {
    let lit = term.as_literal().ok_or_else(|| ExtractError::mismatch(field, "expected an integer literal"))?;
    let value = literal_as_integer(lit)
        .ok_or_else(|| ExtractError::mismatch(field, format!("{} is not an integer-typed literal", lit)))?;
    u64::try_from(value).map_err(|_| ExtractError::mismatch(field, format!("{value} is out of range")))
}

fn subject_node(subject: &Iri) -> Subject {
    Subject::Iri(subject.clone())
}

pub fn extract_dataset_metadata(
    graph: &RdfDataset,
    subject: &Iri,
    vocab: &Vocabulary,
) -> Result<DatasetMetadata, ExtractError> {
    let v = NodeView::new(graph, subject_node(subject));
    let id = v.string("id", &vocab.identifier())?;
    let title = v.string("title", &vocab.title())?;
    let description = v.string("description", &vocab.description())?;
    let license = v.iri("license", &vocab.license())?;
    let use_case = v.string("useCase", &vocab.use_case())?;
    let type_iri = v.iri("streamElementType", &vocab.stream_element_type())?;
    let stream_element_type = StreamElementType::from_iri(&type_iri, vocab)
        .ok_or_else(|| ExtractError::mismatch("streamElementType", format!("unknown element type {type_iri}")))?;
    let declared_element_count = v.count("declaredElementCount", &vocab.element_count())?;
    let source_url = v.opt_iri("sourceUrl", &vocab.source_url())?;

    let mut creators = Vec::new();
    for term in v.values(&vocab.creator()) {
        let node = v.child(term, "creators")?;
        let name = node.opt_string("creators", &vocab.name())?.unwrap_or_default();
        let orcid = match node.first(&vocab.orcid()) {
            None => None,
            Some(Term::Iri(i)) => Some(bare_orcid(i.as_str()).to_owned()),
            Some(Term::Literal(l)) => Some(bare_orcid(l.lexical()).to_owned()),
            Some(Term::Blank(_)) => return Err(ExtractError::mismatch("creators", "ORCID given as a blank node")),
        };
        creators.push(Agent { name, orcid });
    }
    creators.sort();

    Ok(DatasetMetadata {
        iri: subject.clone(),
        id,
        title,
        description,
        license,
        creators,
        use_case,
        stream_element_type,
        declared_element_count,
        source_url,
    })
}

pub fn extract_task_metadata(
    graph: &RdfDataset,
    subject: &Iri,
    vocab: &Vocabulary,
) -> Result<TaskMetadata, ExtractError> {
    let v = NodeView::new(graph, subject_node(subject));
    let id = v.string("id", &vocab.identifier())?;
    let name = v.string("name", &vocab.name())?;
    let description = v.string("description", &vocab.description())?;
    let mut required_profiles = v
        .values(&vocab.required_profile())
        .into_iter()
        .map(|t| as_iri("requiredProfiles", t))
        .collect::<Result<Vec<_>, _>>()?;
    required_profiles.sort();

    let mut metrics = Vec::new();
    let mut names = BTreeSet::new();
    for item in v.list("metrics", &vocab.metrics())? {
        let m = v.child(&item, "metrics")?;
        let metric_name = m.string("metrics", &vocab.metric_name())?;
        let unit = m.string("metrics", &vocab.unit())?;
        let dir = m.iri("metrics", &vocab.direction())?;
        let direction = Direction::from_iri(&dir, vocab)
            .ok_or_else(|| ExtractError::mismatch("metrics", format!("unknown direction {dir}")))?;
        if !names.insert(metric_name.clone()) {
            return Err(ExtractError::mismatch("metrics", "duplicate name"));
        }
        metrics.push(Metric { name: metric_name, unit, direction });
    }
    if metrics.is_empty() {
        return Err(ExtractError::mismatch("metrics", "at least one metric is required"));
    }
    Ok(TaskMetadata { iri: subject.clone(), id, name, description, required_profiles, metrics })
}

pub fn extract_profile_metadata(
    graph: &RdfDataset,
    subject: &Iri,
    vocab: &Vocabulary,
) -> Result<ProfileMetadata, ExtractError> {
    let v = NodeView::new(graph, subject_node(subject));
    let id = v.string("id", &vocab.identifier())?;
    let name = v.string("name", &vocab.name())?;
    let mut constraints = Vec::new();
    for term in v.values(&vocab.constraint()) {
        let c = v.child(term, "constraints")?;
        let kind = c.iri("constraints", &vocab.constraint_kind())?;
        let value = c.required("constraints", &vocab.constraint_value())?;
        let constraint = if kind == vocab.element_type_is() {
            let t = as_iri("constraints", value)?;
            Constraint::ElementTypeIs(
                StreamElementType::from_iri(&t, vocab)
                    .ok_or_else(|| ExtractError::mismatch("constraints", format!("unknown element type {t}")))?,
            )
        } else if kind == vocab.min_element_count() {
            Constraint::MinElementCount(as_count("constraints", value)?)
        } else if kind == vocab.max_element_count() {
            Constraint::MaxElementCount(as_count("constraints", value)?)
        } else {
            return Err(ExtractError::mismatch("constraints", format!("unknown constraint kind {kind}")));
        };
        constraints.push(constraint);
    }
    constraints.sort();
    constraints.dedup();
    let min = constraints.iter().filter_map(|c| match c {
        Constraint::MinElementCount(n) => Some(*n),
        _ => None,
    });
    let max = constraints.iter().filter_map(|c| match c {
        Constraint::MaxElementCount(n) => Some(*n),
        _ => None,
    });
    if let (Some(lo), Some(hi)) = (min.max(), max.min()) {
        if lo > hi {
            return Err(ExtractError::mismatch("constraints", format!("minimum {lo} exceeds maximum {hi}")));
        }
    }
    Ok(ProfileMetadata { iri: subject.clone(), id, name, constraints })
}

/// Fresh blank nodes with a fixed prefix, numbered from zero.
pub(crate) struct BlankSupply {
    prefix: &'static str,
    next: usize,
}

impl BlankSupply {
    pub fn new(prefix: &'static str) -> Self {
        BlankSupply { prefix, next: 0 }
    }

    pub fn fresh(&mut self) -> BlankNode {
        self.next += 1;
        BlankNode::new(format!("{}{}", self.prefix, self.next - 1))
    }
}

pub(crate) fn add(ds: &mut RdfDataset, s: impl Into<Subject>, p: Iri, o: impl Into<Term>) {
    ds.insert(Quad::triple(s, p, o));
}

pub(crate) fn with_registry_prefixes(mut ds: RdfDataset, vocab: &Vocabulary) -> RdfDataset {
    ds.set_prefix(Vocabulary::PREFIX, vocab.namespace().clone());
    ds.set_prefix("rdf", Iri::new(rdf_vocab::NS).expect("constant"));
    ds.set_prefix("xsd", Iri::new(xsd::NS).expect("constant"));
    ds
}

fn count_literal(n: u64) -> Literal {
    Literal::typed(n.to_string(), xsd::integer())
}

impl DatasetMetadata {
    pub fn to_rdf(&self, vocab: &Vocabulary) -> RdfDataset {
        let mut ds = RdfDataset::new();
        let s = self.iri.clone();
        let mut blanks = BlankSupply::new("creator");
        add(&mut ds, s.clone(), rdf_vocab::type_(), vocab.dataset_class());
        add(&mut ds, s.clone(), vocab.identifier(), Literal::string(&self.id));
        add(&mut ds, s.clone(), vocab.title(), Literal::string(&self.title));
        add(&mut ds, s.clone(), vocab.description(), Literal::string(&self.description));
        add(&mut ds, s.clone(), vocab.license(), self.license.clone());
        add(&mut ds, s.clone(), vocab.use_case(), Literal::string(&self.use_case));
        add(&mut ds, s.clone(), vocab.stream_element_type(), self.stream_element_type.iri(vocab));
        add(&mut ds, s.clone(), vocab.element_count(), count_literal(self.declared_element_count));
        if let Some(url) = &self.source_url {
            add(&mut ds, s.clone(), vocab.source_url(), url.clone());
        }
        for agent in &self.creators {
            let node = blanks.fresh();
            add(&mut ds, s.clone(), vocab.creator(), node.clone());
            add(&mut ds, node.clone(), rdf_vocab::type_(), vocab.agent_class());
            add(&mut ds, node.clone(), vocab.name(), Literal::string(&agent.name));
            if let Some(orcid) = &agent.orcid {
                match Iri::new(orcid_url(orcid)) {
                    Ok(iri) => add(&mut ds, node.clone(), vocab.orcid(), iri),
                    Err(_) => add(&mut ds, node.clone(), vocab.orcid(), Literal::string(orcid)),
                }
            }
        }
        with_registry_prefixes(ds, vocab)
    }
}

impl TaskMetadata {
    pub fn to_rdf(&self, vocab: &Vocabulary) -> RdfDataset {
        let mut ds = RdfDataset::new();
        let s = self.iri.clone();
        let mut blanks = BlankSupply::new("m");
        add(&mut ds, s.clone(), rdf_vocab::type_(), vocab.task_class());
        add(&mut ds, s.clone(), vocab.identifier(), Literal::string(&self.id));
        add(&mut ds, s.clone(), vocab.name(), Literal::string(&self.name));
        add(&mut ds, s.clone(), vocab.description(), Literal::string(&self.description));
        for p in &self.required_profiles {
            add(&mut ds, s.clone(), vocab.required_profile(), p.clone());
        }
        let mut items = Vec::new();
        for m in &self.metrics {
            let node = blanks.fresh();
            add(&mut ds, node.clone(), rdf_vocab::type_(), vocab.metric_class());
            add(&mut ds, node.clone(), vocab.metric_name(), Literal::string(&m.name));
            add(&mut ds, node.clone(), vocab.unit(), Literal::string(&m.unit));
            add(&mut ds, node.clone(), vocab.direction(), m.direction.iri(vocab));
            items.push(Term::Blank(node));
        }
        let mut list_blanks = BlankSupply::new("l");
        let head = write_list(&mut ds, items, || list_blanks.fresh());
        add(&mut ds, s, vocab.metrics(), head);
        with_registry_prefixes(ds, vocab)
    }
}

impl ProfileMetadata {
    pub fn to_rdf(&self, vocab: &Vocabulary) -> RdfDataset {
        let mut ds = RdfDataset::new();
        let s = self.iri.clone();
        let mut blanks = BlankSupply::new("c");
        add(&mut ds, s.clone(), rdf_vocab::type_(), vocab.profile_class());
        add(&mut ds, s.clone(), vocab.identifier(), Literal::string(&self.id));
        add(&mut ds, s.clone(), vocab.name(), Literal::string(&self.name));
        for c in &self.constraints {
            let node = blanks.fresh();
            add(&mut ds, s.clone(), vocab.constraint(), node.clone());
            add(&mut ds, node.clone(), vocab.constraint_kind(), c.kind_iri(vocab));
            let value: Term = match *c {
                Constraint::ElementTypeIs(t) => t.iri(vocab).into(),
                Constraint::MinElementCount(n) | Constraint::MaxElementCount(n) => count_literal(n).into(),
            };
            add(&mut ds, node, vocab.constraint_value(), value);
        }
        with_registry_prefixes(ds, vocab)
    }
}
