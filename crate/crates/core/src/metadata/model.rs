use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rdf::Iri;
use crate::vocab::Vocabulary;

/// Shape of one stream element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StreamElementType {
    Triples,
    Quads,
    Graphs,
}

impl StreamElementType {
    pub const ALL: [StreamElementType; 3] =
        [StreamElementType::Triples, StreamElementType::Quads, StreamElementType::Graphs];

    pub fn iri(self, vocab: &Vocabulary) -> Iri {
        match self {
            StreamElementType::Triples => vocab.triples(),
            StreamElementType::Quads => vocab.quads(),
            StreamElementType::Graphs => vocab.graphs(),
        }
    }

    pub fn from_iri(iri: &Iri, vocab: &Vocabulary) -> Option<Self> {
        Self::ALL.into_iter().find(|t| &t.iri(vocab) == iri)
    }
}

impl fmt::Display for StreamElementType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StreamElementType::Triples => "triples",
            StreamElementType::Quads => "quads",
            StreamElementType::Graphs => "graphs",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Agent {
    pub name: String,
    /// Bare identifier such as `0000-0002-1825-0097`.
    pub orcid: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DatasetMetadata {
    pub iri: Iri,
    pub id: String,
    pub title: String,
    pub description: String,
    pub license: Iri,
    pub creators: Vec<Agent>,
    pub use_case: String,
    pub stream_element_type: StreamElementType,
    pub declared_element_count: u64,
    pub source_url: Option<Iri>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    HigherIsBetter,
    LowerIsBetter,
}

impl Direction {
    pub fn iri(self, vocab: &Vocabulary) -> Iri {
        match self {
            Direction::HigherIsBetter => vocab.higher_is_better(),
            Direction::LowerIsBetter => vocab.lower_is_better(),
        }
    }

    pub fn from_iri(iri: &Iri, vocab: &Vocabulary) -> Option<Self> {
        [Direction::HigherIsBetter, Direction::LowerIsBetter].into_iter().find(|d| &d.iri(vocab) == iri)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::HigherIsBetter => "higher is better",
            Direction::LowerIsBetter => "lower is better",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metric {
    pub name: String,
    pub unit: String,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TaskMetadata {
    pub iri: Iri,
    pub id: String,
    pub name: String,
    pub description: String,
    /// Sorted.
    pub required_profiles: Vec<Iri>,
    /// In declaration order.
    pub metrics: Vec<Metric>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum Constraint {
    ElementTypeIs(StreamElementType),
    MinElementCount(u64),
    MaxElementCount(u64),
}

impl Constraint {
    pub fn kind_iri(&self, vocab: &Vocabulary) -> Iri {
        match self {
            Constraint::ElementTypeIs(_) => vocab.element_type_is(),
            Constraint::MinElementCount(_) => vocab.min_element_count(),
            Constraint::MaxElementCount(_) => vocab.max_element_count(),
        }
    }

    pub fn holds_for(&self, md: &DatasetMetadata) -> bool {
        match *self {
            Constraint::ElementTypeIs(t) => md.stream_element_type == t,
            Constraint::MinElementCount(n) => md.declared_element_count >= n,
            Constraint::MaxElementCount(n) => md.declared_element_count <= n,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::ElementTypeIs(t) => write!(f, "stream elements are {t}"),
            Constraint::MinElementCount(n) => write!(f, "at least {n} elements"),
            Constraint::MaxElementCount(n) => write!(f, "at most {n} elements"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileMetadata {
    pub iri: Iri,
    pub id: String,
    pub name: String,
    /// Sorted, duplicates removed.
    pub constraints: Vec<Constraint>,
}

/// Conjunction of all constraints; an empty profile accepts everything.
pub fn profile_accepts(profile: &ProfileMetadata, md: &DatasetMetadata) -> bool {
    profile.constraints.iter().all(|c| c.holds_for(md))
}

pub fn is_valid_identifier(id: &str) -> bool {
    let mut chars = id.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-')
}
