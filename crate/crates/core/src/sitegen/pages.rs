use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::catalog::{Catalog, DatasetEntry, ProfileEntry, ReportEntry, SiteOptions, TaskEntry};
use super::edit::render_edit_url_on;
use super::markdown::{code, escape, link, paragraph, relative, table};
use super::{ResourceKind, SiteWarning};
use crate::metadata::orcid::orcid_url;
use crate::package::DistributionKind;
use crate::rdf::Iri;

/// One generated document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Page {
    /// Relative to the site root, e.g. `datasets/foo/index.md`.
    pub path: String,
    pub title: String,
    pub body: String,
    pub edit_url: Option<Iri>,
}

pub fn resource_page_path(kind: ResourceKind, id: &str) -> String {
    match kind {
        ResourceKind::Report => format!("results/{id}.md"),
        _ => format!("{}/{id}/index.md", kind.segment()),
    }
}

pub fn index_page_path(kind: ResourceKind) -> String {
    format!("{}/index.md", kind.segment())
}

pub const HOME_PAGE: &str = "index.md";

fn finish(path: String, title: String, mut body: String, edit_url: Option<Iri>) -> Page {
    if let Some(url) = &edit_url {
        let _ = write!(body, "\n{}\n", link("Edit this page", url.as_str()));
    }
    Page { path, title, body, edit_url }
}

fn edit_url(options: &SiteOptions, source_path: &str) -> Option<Iri> {
    let base = options.source_repo_base.as_ref()?;
    render_edit_url_on(base, &options.source_branch, source_path).ok()
}

fn heading(title: &str) -> String {
    format!("# {}\n", escape(title))
}

fn iri_link(iri: &Iri) -> String {
    link(iri.as_str(), iri.as_str())
}

fn purl_note(out: &mut String, iri: &Iri) {
    let _ = write!(
        out,
        "\n## Metadata\n\nPermanent URL: {}. Request it with an RDF media type (Turtle, TriG, N-Triples or N-Quads) to get this resource's metadata.\n",
        iri_link(iri)
    );
}

pub fn render_dataset_page(catalog: &Catalog, entry: &DatasetEntry, options: &SiteOptions) -> Page {
    let md = &entry.metadata;
    let path = resource_page_path(ResourceKind::Dataset, &md.id);
    let mut out = heading(&md.title);
    let _ = write!(out, "\n{}\n\n", paragraph(&md.description));

    let mut rows = vec![
        vec!["Identifier".to_owned(), code(&md.id)],
        vec!["License".to_owned(), iri_link(&md.license)],
        vec!["Stream element type".to_owned(), md.stream_element_type.to_string()],
        vec!["Declared elements".to_owned(), md.declared_element_count.to_string()],
    ];
    if let Some(url) = &md.source_url {
        rows.push(vec!["Source".to_owned(), iri_link(url)]);
    }
    table(&mut out, &["Property", "Value"], &rows);

    let _ = write!(out, "\n## Use case\n\n{}\n", paragraph(&md.use_case));

    if !md.creators.is_empty() {
        out.push_str("\n## Creators\n\n");
        for c in &md.creators {
            let name = if c.name.trim().is_empty() { "(unnamed)".to_owned() } else { escape(&c.name) };
            match &c.orcid {
                Some(o) => {
                    let _ = writeln!(out, "- {name} ({})", link(o, &orcid_url(o)));
                }
                None => {
                    let _ = writeln!(out, "- {name}");
                }
            }
        }
    }

    let profiles = catalog.profiles_of(md);
    if !profiles.is_empty() {
        out.push_str("\n## Profiles\n\n");
        for p in profiles {
            let target = resource_page_path(ResourceKind::Profile, &p.metadata.id);
            let _ = writeln!(out, "- {}", link(&p.metadata.name, &relative(&path, &target)));
        }
    }

    if let Some(s) = &entry.statistics {
        out.push_str("\n## Statistics\n\n");
        let rows = vec![
            vec!["Stream elements".to_owned(), s.element_count.to_string()],
            vec!["Statements".to_owned(), s.total_statements.to_string()],
            vec!["Distinct subjects".to_owned(), s.distinct_subjects.to_string()],
            vec!["Distinct predicates".to_owned(), s.distinct_predicates.to_string()],
            vec!["Distinct objects".to_owned(), s.distinct_objects.to_string()],
            vec!["Uses named graphs".to_owned(), if s.uses_named_graphs { "yes" } else { "no" }.to_owned()],
        ];
        table(&mut out, &["Statistic", "Value"], &rows);
    }

    if !entry.distributions.is_empty() {
        out.push_str("\n## Downloads\n\n");
        let rows: Vec<Vec<String>> = entry
            .distributions
            .iter()
            .map(|d| {
                vec![
                    code(&d.file_name),
                    match d.kind {
                        DistributionKind::Flat => "flat".to_owned(),
                        DistributionKind::Stream => "stream".to_owned(),
                    },
                    d.format.media_type().to_owned(),
                    d.size_cap.map_or_else(|| "all".to_owned(), |c| c.to_string()),
                    d.byte_size.to_string(),
                    code(&d.sha256),
                ]
            })
            .collect();
        table(&mut out, &["File", "Kind", "Format", "Elements", "Bytes", "SHA-256"], &rows);
    }

    purl_note(&mut out, &md.iri);
    finish(path, md.title.clone(), out, edit_url(options, &entry.source_path))
}

pub fn render_task_page(catalog: &Catalog, entry: &TaskEntry, options: &SiteOptions) -> Page {
    let t = &entry.metadata;
    let path = resource_page_path(ResourceKind::Task, &t.id);
    let mut out = heading(&t.name);
    let _ = write!(out, "\n{}\n\n## Metrics\n\n", paragraph(&t.description));
    let rows: Vec<Vec<String>> = t
        .metrics
        .iter()
        .map(|m| vec![escape(&m.name), escape(&m.unit), m.direction.to_string()])
        .collect();
    table(&mut out, &["Metric", "Unit", "Direction"], &rows);

    if !t.required_profiles.is_empty() {
        out.push_str("\n## Profiles\n\n");
        for p in &t.required_profiles {
            match catalog.profile(p) {
                Some(p) => {
                    let target = resource_page_path(ResourceKind::Profile, &p.metadata.id);
                    let _ = writeln!(out, "- {}", link(&p.metadata.name, &relative(&path, &target)));
                }
                None => {
                    let _ = writeln!(out, "- {} (not in this catalog)", iri_link(p));
                }
            }
        }
    }

    let reports = catalog.reports_for_task(&t.iri);
    if !reports.is_empty() {
        out.push_str("\n## Results\n\n");
        for r in reports {
            let target = resource_page_path(ResourceKind::Report, &r.slug);
            let _ = writeln!(out, "- {} {}", r.report.date, link(&r.slug, &relative(&path, &target)));
        }
    }

    purl_note(&mut out, &t.iri);
    finish(path, t.name.clone(), out, edit_url(options, &entry.source_path))
}

pub fn render_profile_page(catalog: &Catalog, entry: &ProfileEntry, options: &SiteOptions) -> Page {
    let p = &entry.metadata;
    let path = resource_page_path(ResourceKind::Profile, &p.id);
    let mut out = heading(&p.name);
    out.push_str("\n## Constraints\n\n");
    if p.constraints.is_empty() {
        out.push_str("None; every dataset belongs to this profile.\n");
    } else {
        for c in &p.constraints {
            let _ = writeln!(out, "- {c}");
        }
    }

    out.push_str("\n## Datasets\n\n");
    let members = catalog.members(p);
    if members.is_empty() {
        out.push_str("No dataset in the catalog matches this profile.\n");
    }
    for d in members {
        let target = resource_page_path(ResourceKind::Dataset, &d.metadata.id);
        let _ = writeln!(out, "- {}", link(&d.metadata.title, &relative(&path, &target)));
    }

    let tasks: Vec<&TaskEntry> = catalog.tasks.iter().filter(|t| t.metadata.required_profiles.contains(&p.iri)).collect();
    if !tasks.is_empty() {
        out.push_str("\n## Tasks\n\n");
        for t in tasks {
            let target = resource_page_path(ResourceKind::Task, &t.metadata.id);
            let _ = writeln!(out, "- {}", link(&t.metadata.name, &relative(&path, &target)));
        }
    }

    purl_note(&mut out, &p.iri);
    finish(path, p.name.clone(), out, edit_url(options, &entry.source_path))
}

fn task_ref(catalog: &Catalog, from: &str, task: &Iri) -> String {
    match catalog.task(task) {
        Some(t) => link(&t.metadata.name, &relative(from, &resource_page_path(ResourceKind::Task, &t.metadata.id))),
        None => format!("{} (unknown task)", iri_link(task)),
    }
}

fn profile_ref(catalog: &Catalog, from: &str, profile: &Iri) -> String {
    match catalog.profile(profile) {
        Some(p) => link(&p.metadata.name, &relative(from, &resource_page_path(ResourceKind::Profile, &p.metadata.id))),
        None => format!("{} (unknown profile)", iri_link(profile)),
    }
}

pub fn render_report_page(catalog: &Catalog, entry: &ReportEntry) -> Page {
    let r = &entry.report;
    let path = resource_page_path(ResourceKind::Report, &entry.slug);
    let title = format!("Benchmark run {}", entry.slug);
    let mut out = heading(&title);
    out.push('\n');
    let mut rows = vec![
        vec!["Task".to_owned(), task_ref(catalog, &path, &r.task)],
        vec![
            "Profile".to_owned(),
            format!("{} version {}", profile_ref(catalog, &path, &r.profile), escape(&r.profile_version)),
        ],
        vec!["Benchmark code".to_owned(), iri_link(&r.benchmark_code)],
        vec!["Author".to_owned(), link(&r.author_orcid, &orcid_url(&r.author_orcid))],
        vec!["Date".to_owned(), r.date.to_string()],
    ];
    if let Some(l) = &r.results_link {
        rows.push(vec!["Results".to_owned(), iri_link(l)]);
    }
    rows.push(vec!["Report".to_owned(), iri_link(&r.report_iri)]);
    table(&mut out, &["Field", "Value"], &rows);

    out.push_str("\n## Evaluated systems\n\n");
    let systems: Vec<Vec<String>> = r
        .systems
        .iter()
        .enumerate()
        .map(|(i, s)| vec![(i + 1).to_string(), escape(&s.name), escape(&s.version)])
        .collect();
    table(&mut out, &["#", "System", "Version"], &systems);
    let back = relative(&path, &index_page_path(ResourceKind::Report));
    let _ = write!(out, "\n{}\n", link("All results", &back));
    finish(path, title, out, None)
}

/// Reports grouped by task (catalog task order), newest first inside each
/// group. Reports naming a task outside the catalog go to a final group.
pub fn render_results_index(catalog: &Catalog) -> (Page, Vec<SiteWarning>) {
    let path = index_page_path(ResourceKind::Report);
    let title = "Benchmark results".to_owned();
    let mut out = heading(&title);
    let mut warnings = Vec::new();

    let rows_for = |reports: &[&ReportEntry], with_task: bool| -> Vec<Vec<String>> {
        reports
            .iter()
            .map(|r| {
                let mut row = vec![
                    r.report.date.to_string(),
                    link(&r.slug, &relative(&path, &resource_page_path(ResourceKind::Report, &r.slug))),
                ];
                if with_task {
                    row.push(iri_link(&r.report.task));
                }
                row.push(format!("{} {}", profile_ref(catalog, &path, &r.report.profile), escape(&r.report.profile_version)));
                row.push(
                    r.report.systems.iter().map(|s| format!("{} {}", escape(&s.name), escape(&s.version))).collect::<Vec<_>>().join(", "),
                );
                row
            })
            .collect()
    };

    if catalog.tasks.is_empty() {
        out.push_str("\nThe catalog has no tasks.\n");
    }
    for t in &catalog.tasks {
        let target = resource_page_path(ResourceKind::Task, &t.metadata.id);
        let _ = write!(out, "\n## {}\n\n", link(&t.metadata.name, &relative(&path, &target)));
        let reports = catalog.reports_for_task(&t.metadata.iri);
        if reports.is_empty() {
            out.push_str("_No reports yet._\n");
        } else {
            table(&mut out, &["Date", "Report", "Profile", "Systems"], &rows_for(&reports, false));
        }
    }

    let unknown: Vec<&ReportEntry> = catalog.reports.iter().filter(|r| catalog.task(&r.report.task).is_none()).collect();
    if !unknown.is_empty() {
        out.push_str("\n## Unknown task\n\n");
        table(&mut out, &["Date", "Report", "Task", "Profile", "Systems"], &rows_for(&unknown, true));
        for r in unknown {
            warnings.push(SiteWarning::dangling(&r.report.report_iri, "task", &r.report.task));
        }
    }
    (finish(path, title, out, None), warnings)
}

pub fn render_kind_index(catalog: &Catalog, kind: ResourceKind) -> Page {
    let path = index_page_path(kind);
    let (title, items): (&str, Vec<(String, String)>) = match kind {
        ResourceKind::Dataset => ("Datasets", catalog.datasets.iter().map(|d| (d.metadata.id.clone(), d.metadata.title.clone())).collect()),
        ResourceKind::Task => ("Tasks", catalog.tasks.iter().map(|t| (t.metadata.id.clone(), t.metadata.name.clone())).collect()),
        ResourceKind::Profile => ("Profiles", catalog.profiles.iter().map(|p| (p.metadata.id.clone(), p.metadata.name.clone())).collect()),
        ResourceKind::Report => return render_results_index(catalog).0,
    };
    let mut out = heading(title);
    out.push('\n');
    if items.is_empty() {
        let _ = writeln!(out, "No {} yet.", title.to_lowercase());
    }
    for (id, name) in items {
        let _ = writeln!(out, "- {}", link(&name, &relative(&path, &resource_page_path(kind, &id))));
    }
    finish(path, title.to_owned(), out, None)
}

pub fn render_home(catalog: &Catalog) -> Page {
    let title = "Benchmark registry".to_owned();
    let mut out = heading(&title);
    let _ = write!(out, "\nVersion: {}\n\n", code(&catalog.version));
    let counts: BTreeMap<ResourceKind, usize> = [
        (ResourceKind::Dataset, catalog.datasets.len()),
        (ResourceKind::Task, catalog.tasks.len()),
        (ResourceKind::Profile, catalog.profiles.len()),
        (ResourceKind::Report, catalog.reports.len()),
    ]
    .into();
    for (kind, n) in counts {
        let _ = writeln!(out, "- {} ({n})", link(kind.index_title(), &index_page_path(kind)));
    }
    out.push_str("\nMetadata dumps: `dumps/catalog.nq`, `dumps/catalog.ttl`.\n");
    finish(HOME_PAGE.to_owned(), title, out, None)
}
