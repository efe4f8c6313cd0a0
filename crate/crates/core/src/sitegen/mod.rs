//! Documentation pages and metadata dumps generated from the catalog.

mod catalog;
mod dump;
mod edit;
pub mod markdown;
mod pages;
mod publish;

use std::fmt;

use crate::rdf::Iri;

pub use catalog::{
    load_catalog, report_entries, report_graph, report_slugs, Catalog, CatalogError, DatasetEntry, ProfileEntry,
    ReportEntry, SiteOptions, TaskEntry,
};
pub use dump::{emit_metadata_dump, merged_graph, resource_graphs, MetadataDump, ResourceGraph};
pub use edit::{render_edit_url, render_edit_url_on, InvalidPath};
pub use pages::{
    index_page_path, render_dataset_page, render_home, render_kind_index, render_profile_page, render_report_page,
    render_results_index, render_task_page, resource_page_path, Page, HOME_PAGE,
};
pub use publish::{
    render_site, write_dumps, write_snapshot, Manifest, ManifestEntry, DUMP_NQ, DUMP_TTL, MANIFEST_FILE,
    REDIRECTS_FILE,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResourceKind {
    Dataset,
    Task,
    Profile,
    Report,
}

impl ResourceKind {
    /// First path segment of the kind's pages and keys.
    pub fn segment(self) -> &'static str {
        match self {
            ResourceKind::Dataset => "datasets",
            ResourceKind::Task => "tasks",
            ResourceKind::Profile => "profiles",
            ResourceKind::Report => "results",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ResourceKind::Dataset => "dataset",
            ResourceKind::Task => "task",
            ResourceKind::Profile => "profile",
            ResourceKind::Report => "report",
        }
    }

    pub fn index_title(self) -> &'static str {
        match self {
            ResourceKind::Dataset => "Datasets",
            ResourceKind::Task => "Tasks",
            ResourceKind::Profile => "Profiles",
            ResourceKind::Report => "Benchmark results",
        }
    }

    pub fn key(self, id: &str) -> String {
        format!("{}/{id}", self.segment())
    }
}

/// Something worth telling the curator that does not stop generation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SiteWarning {
    DanglingReference { subject: Iri, field: String, target: Iri },
    Skipped { path: String, message: String },
}

impl SiteWarning {
    pub fn dangling(subject: &Iri, field: &str, target: &Iri) -> Self {
        SiteWarning::DanglingReference { subject: subject.clone(), field: field.to_owned(), target: target.clone() }
    }
}

impl fmt::Display for SiteWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SiteWarning::DanglingReference { subject, field, target } => {
                write!(f, "{subject}: {field} {target} is not in the catalog")
            }
            SiteWarning::Skipped { path, message } => write!(f, "{path}: skipped ({message})"),
        }
    }
}
