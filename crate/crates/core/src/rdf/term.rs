use std::cmp::Ordering;
use std::fmt;

use super::iri::{has_scheme, IriError};
use super::vocab::{rdf, xsd};

/// An absolute IRI.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Iri(String);

impl Iri {
    /// Validates that `value` is absolute and contains no characters that are
    /// forbidden inside an `IRIREF`.
    pub fn new(value: impl Into<String>) -> Result<Self, IriError> {
        let value = value.into();
        if let Some(c) = value.chars().find(|c| is_forbidden_iri_char(*c)) {
            return Err(IriError::ForbiddenCharacter { iri: value, found: c });
        }
        if !has_scheme(&value) {
            return Err(IriError::Relative(value));
        }
        Ok(Iri(value))
    }

    /// Builds an IRI from a compile-time constant that is known to be valid.
    pub(crate) fn from_static(value: &'static str) -> Self {
        debug_assert!(has_scheme(value), "{value}");
        Iri(value.to_owned())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Appends `suffix` verbatim. The result is validated again.
    pub fn join_raw(&self, suffix: &str) -> Result<Iri, IriError> {
        Iri::new(format!("{}{}", self.0, suffix))
    }
}

impl std::str::FromStr for Iri {
    type Err = IriError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Iri::new(s)
    }
}

impl serde::Serialize for Iri {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> serde::Deserialize<'de> for Iri {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Iri::new(s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl PartialOrd for Iri {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Iri {
    // Matches the code-point order of the `<...>` lexical form.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .chars()
            .chain(std::iter::once('>'))
            .cmp(other.0.chars().chain(std::iter::once('>')))
    }
}

pub(crate) fn is_forbidden_iri_char(c: char) -> bool {
    matches!(c, '\u{0}'..='\u{20}' | '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
}

/// A blank node; the label is only meaningful inside one dataset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlankNode(String);

impl BlankNode {
    pub fn new(label: impl Into<String>) -> Self {
        BlankNode(label.into())
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

/// An RDF literal. The datatype is always present; language-tagged strings
/// carry `rdf:langString`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    lexical: String,
    datatype: Iri,
    language: Option<String>,
}

impl Literal {
    pub fn string(lexical: impl Into<String>) -> Self {
        Literal { lexical: lexical.into(), datatype: xsd::string(), language: None }
    }

    /// Language tags are stored lowercased.
    pub fn lang_string(lexical: impl Into<String>, language: &str) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: rdf::lang_string(),
            language: Some(language.to_ascii_lowercase()),
        }
    }

    /// A typed literal. Passing `rdf:langString` without a tag is rejected by
    /// the parsers; here it is simply stored.
    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal { lexical: lexical.into(), datatype, language: None }
    }

    pub fn integer(value: i64) -> Self {
        Literal::typed(value.to_string(), xsd::integer())
    }

    pub fn boolean(value: bool) -> Self {
        Literal::typed(value.to_string(), xsd::boolean())
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    pub fn is_plain_string(&self) -> bool {
        self.language.is_none() && self.datatype.as_str() == xsd::STRING
    }

    /// The canonical N-Quads form of this literal.
    pub fn to_nquads(&self) -> String {
        let mut out = String::with_capacity(self.lexical.len() + 2);
        write_quoted(&mut out, &self.lexical);
        if let Some(lang) = &self.language {
            out.push('@');
            out.push_str(lang);
        } else if self.datatype.as_str() != xsd::STRING {
            out.push_str("^^");
            out.push_str(&self.datatype.to_string());
        }
        out
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_nquads())
    }
}

pub(crate) fn write_quoted(out: &mut String, value: &str) {
    out.push('"');
    for c in value.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Subject position: IRI or blank node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Subject {
    Iri(Iri),
    Blank(BlankNode),
}

/// Object position: any term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Iri(Iri),
    Blank(BlankNode),
    Literal(Literal),
}

/// Graph position of a quad.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GraphName {
    Default,
    Iri(Iri),
    Blank(BlankNode),
}

impl Term {
    fn kind_rank(&self) -> u8 {
        match self {
            Term::Iri(_) => 0,
            Term::Blank(_) => 1,
            Term::Literal(_) => 2,
        }
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    pub fn as_blank(&self) -> Option<&BlankNode> {
        match self {
            Term::Blank(b) => Some(b),
            _ => None,
        }
    }

    /// Converts to a subject when the term may appear there.
    pub fn to_subject(&self) -> Option<Subject> {
        match self {
            Term::Iri(i) => Some(Subject::Iri(i.clone())),
            Term::Blank(b) => Some(Subject::Blank(b.clone())),
            Term::Literal(_) => None,
        }
    }
}

impl Subject {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Subject::Iri(i) => Some(i),
            Subject::Blank(_) => None,
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            Subject::Iri(i) => Term::Iri(i.clone()),
            Subject::Blank(b) => Term::Blank(b.clone()),
        }
    }
}

impl From<Iri> for Subject {
    fn from(iri: Iri) -> Self {
        Subject::Iri(iri)
    }
}

impl From<BlankNode> for Subject {
    fn from(b: BlankNode) -> Self {
        Subject::Blank(b)
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::Blank(b)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

impl From<Subject> for Term {
    fn from(s: Subject) -> Self {
        s.to_term()
    }
}

impl From<Iri> for GraphName {
    fn from(iri: Iri) -> Self {
        GraphName::Iri(iri)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(i) => i.fmt(f),
            Term::Blank(b) => b.fmt(f),
            Term::Literal(l) => l.fmt(f),
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Iri(i) => i.fmt(f),
            Subject::Blank(b) => b.fmt(f),
        }
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind_rank().cmp(&other.kind_rank()).then_with(|| match (self, other) {
            (Term::Iri(a), Term::Iri(b)) => a.cmp(b),
            (Term::Blank(a), Term::Blank(b)) => a.cmp(b),
            (Term::Literal(a), Term::Literal(b)) => {
                if a == b {
                    Ordering::Equal
                } else {
                    a.to_nquads().cmp(&b.to_nquads())
                }
            }
            _ => unreachable!("kind ranks differ"),
        })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subject {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Subject::Iri(a), Subject::Iri(b)) => a.cmp(b),
            (Subject::Blank(a), Subject::Blank(b)) => a.cmp(b),
            (Subject::Iri(_), Subject::Blank(_)) => Ordering::Less,
            (Subject::Blank(_), Subject::Iri(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Subject {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GraphName {
    // The default graph has no lexical form in N-Quads and sorts first.
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(g: &GraphName) -> u8 {
            match g {
                GraphName::Default => 0,
                GraphName::Iri(_) => 1,
                GraphName::Blank(_) => 2,
            }
        }
        rank(self).cmp(&rank(other)).then_with(|| match (self, other) {
            (GraphName::Iri(a), GraphName::Iri(b)) => a.cmp(b),
            (GraphName::Blank(a), GraphName::Blank(b)) => a.cmp(b),
            _ => Ordering::Equal,
        })
    }
}

impl PartialOrd for GraphName {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A statement in a (possibly named) graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    pub subject: Subject,
    pub predicate: Iri,
    pub object: Term,
    pub graph: GraphName,
}

impl Quad {
    pub fn new(
        subject: impl Into<Subject>,
        predicate: Iri,
        object: impl Into<Term>,
        graph: GraphName,
    ) -> Self {
        Quad { subject: subject.into(), predicate, object: object.into(), graph }
    }

    /// A quad in the default graph.
    pub fn triple(subject: impl Into<Subject>, predicate: Iri, object: impl Into<Term>) -> Self {
        Quad::new(subject, predicate, object, GraphName::Default)
    }

    pub fn in_graph(mut self, graph: GraphName) -> Self {
        self.graph = graph;
        self
    }

    pub fn has_blank_nodes(&self) -> bool {
        matches!(self.subject, Subject::Blank(_))
            || matches!(self.object, Term::Blank(_))
            || matches!(self.graph, GraphName::Blank(_))
    }

    /// One N-Quads statement, without the trailing newline.
    pub fn to_nquads(&self) -> String {
        let mut line = format!("{} {} {}", self.subject, self.predicate, self.object);
        match &self.graph {
            GraphName::Default => {}
            GraphName::Iri(i) => {
                line.push(' ');
                line.push_str(&i.to_string());
            }
            GraphName::Blank(b) => {
                line.push(' ');
                line.push_str(&b.to_string());
            }
        }
        line.push_str(" .");
        line
    }
}

impl Ord for Quad {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_quad_order(self, other)
    }
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order over quads: graph, subject, predicate, object; each compared
/// by term kind (IRI < blank node < literal) and then code point by code
/// point on the N-Quads lexical form.
pub fn canonical_quad_order(a: &Quad, b: &Quad) -> Ordering {
    a.graph
        .cmp(&b.graph)
        .then_with(|| a.subject.cmp(&b.subject))
        .then_with(|| a.predicate.cmp(&b.predicate))
        .then_with(|| a.object.cmp(&b.object))
}
