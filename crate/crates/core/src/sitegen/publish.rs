use std::fs;
use std::io;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::catalog::{Catalog, SiteOptions};
use super::dump::{emit_metadata_dump, resource_graphs};
use super::pages::*;
use super::{ResourceKind, SiteWarning};
use crate::rdf::{serialize_document, Iri, RdfFormat};
use crate::server::default_redirects;

pub const MANIFEST_FILE: &str = "manifest.json";
pub const REDIRECTS_FILE: &str = "redirects.conf";
pub const DUMP_NQ: &str = "dumps/catalog.nq";
pub const DUMP_TTL: &str = "dumps/catalog.ttl";

/// One addressable resource of a snapshot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ManifestEntry {
    pub key: String,
    /// `dataset`, `task`, `profile`, `report` or `index`.
    pub kind: String,
    pub iri: Option<Iri>,
    pub title: String,
    /// Site-relative page path.
    pub page: String,
    /// Snapshot-relative N-Quads file with the resource's metadata.
    pub metadata: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub resources: Vec<ManifestEntry>,
    pub warnings: Vec<String>,
}

/// All pages of the site, in a fixed order.
pub fn render_site(catalog: &Catalog, options: &SiteOptions) -> (Vec<Page>, Vec<SiteWarning>) {
    let mut pages = vec![render_home(catalog)];
    for kind in [ResourceKind::Dataset, ResourceKind::Task, ResourceKind::Profile] {
        pages.push(render_kind_index(catalog, kind));
    }
    let (results, warnings) = render_results_index(catalog);
    pages.push(results);
    pages.extend(catalog.datasets.par_iter().map(|d| render_dataset_page(catalog, d, options)).collect::<Vec<_>>());
    pages.extend(catalog.tasks.par_iter().map(|t| render_task_page(catalog, t, options)).collect::<Vec<_>>());
    pages.extend(catalog.profiles.par_iter().map(|p| render_profile_page(catalog, p, options)).collect::<Vec<_>>());
    pages.extend(catalog.reports.par_iter().map(|r| render_report_page(catalog, r)).collect::<Vec<_>>());
    (pages, warnings)
}

fn write(path: &Path, bytes: &[u8]) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, bytes)
}

/// Writes a complete snapshot into `out`:
///
/// ```text
/// site/...              Markdown pages
/// resources/<key>.nq    per-resource metadata
/// dumps/catalog.{nq,ttl}
/// redirects.conf
/// manifest.json
/// ```
pub fn write_snapshot(
    catalog: &Catalog,
    options: &SiteOptions,
    extra_warnings: &[SiteWarning],
    out: &Path,
) -> io::Result<Manifest> {
    let (pages, mut warnings) = render_site(catalog, options);
    warnings.extend_from_slice(extra_warnings);
    warnings.sort();
    warnings.dedup();
    for page in &pages {
        write(&out.join("site").join(&page.path), page.body.as_bytes())?;
    }

    let mut resources = vec![ManifestEntry {
        key: String::new(),
        kind: "index".into(),
        iri: None,
        title: pages[0].title.clone(),
        page: HOME_PAGE.into(),
        metadata: None,
    }];
    for kind in [ResourceKind::Dataset, ResourceKind::Task, ResourceKind::Profile, ResourceKind::Report] {
        resources.push(ManifestEntry {
            key: kind.segment().into(),
            kind: "index".into(),
            iri: None,
            title: kind.index_title().into(),
            page: index_page_path(kind),
            metadata: None,
        });
    }
    for r in resource_graphs(catalog, &options.vocab) {
        let metadata = format!("resources/{}.nq", r.key);
        let bytes = serialize_document(&r.graph, RdfFormat::NQuads).expect("N-Quads accepts any dataset");
        write(&out.join(&metadata), &bytes)?;
        let id = r.key.split_once('/').map_or(r.key.as_str(), |(_, id)| id);
        resources.push(ManifestEntry {
            key: r.key.clone(),
            kind: r.kind.name().into(),
            iri: Some(r.iri.clone()),
            title: r.title.clone(),
            page: resource_page_path(r.kind, id),
            metadata: Some(metadata),
        });
    }

    let dump = emit_metadata_dump(catalog, &options.vocab);
    write(&out.join(DUMP_NQ), &dump.nquads)?;
    write(&out.join(DUMP_TTL), &dump.turtle)?;
    write(&out.join(REDIRECTS_FILE), default_redirects().as_bytes())?;

    let manifest = Manifest {
        version: catalog.version.clone(),
        resources,
        warnings: warnings.iter().map(ToString::to_string).collect(),
    };
    let mut json = serde_json::to_vec_pretty(&manifest).map_err(io::Error::other)?;
    json.push(b'\n');
    write(&out.join(MANIFEST_FILE), &json)?;
    Ok(manifest)
}

/// Writes only the metadata dumps.
pub fn write_dumps(catalog: &Catalog, options: &SiteOptions, out: &Path) -> io::Result<()> {
    let dump = emit_metadata_dump(catalog, &options.vocab);
    write(&out.join(DUMP_NQ), &dump.nquads)?;
    write(&out.join(DUMP_TTL), &dump.turtle)
}
