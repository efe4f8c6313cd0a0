//! RDF data model, the four concrete syntaxes, and dataset isomorphism.

mod dataset;
mod format;
mod iri;
mod iso;
mod parser;
mod serializer;
mod term;
pub mod vocab;

pub use dataset::{literal_as_integer, write_list, RdfDataset};
pub use format::RdfFormat;
pub use iri::{resolve, IriError};
pub use iso::{
    canonical_relabel, dataset_isomorphic, dataset_isomorphic_with_limit, ComplexityLimitError,
    DEFAULT_BLANK_NODE_LIMIT,
};
pub use parser::{parse_document, parse_str, ParseError};
pub use serializer::{serialize_document, serialize_with, FormatCapabilityError, SerializeOptions};
pub use term::{canonical_quad_order, BlankNode, GraphName, Iri, Literal, Quad, Subject, Term};
