//! Typed views over registry metadata graphs, curator-criteria validation,
//! profile membership and enrichment with computed facts.

mod enrich;
mod extract;
mod model;
pub mod orcid;
mod validate;

pub use enrich::{enrich_metadata, functional_predicates, ConflictError};
pub use extract::{extract_dataset_metadata, extract_profile_metadata, extract_task_metadata, ExtractError};
pub(crate) use extract::{add, as_count, with_registry_prefixes, BlankSupply, NodeView};
pub use model::{
    is_valid_identifier, profile_accepts, Agent, Constraint, DatasetMetadata, Direction, Metric, ProfileMetadata,
    StreamElementType, TaskMetadata,
};
pub use validate::{
    default_license_allow_list, validate_dataset_metadata, Severity, ValidationPolicy, ValidationReport, Violation,
    DEFAULT_MIN_ELEMENT_COUNT,
};
