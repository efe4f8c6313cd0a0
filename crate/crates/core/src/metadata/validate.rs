use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::extract::{add, with_registry_prefixes, BlankSupply};
use super::model::{is_valid_identifier, DatasetMetadata};
use super::orcid::is_valid_orcid;
use crate::rdf::vocab::rdf as rdf_vocab;
use crate::rdf::{Iri, Literal, RdfDataset};
use crate::vocab::Vocabulary;

pub const DEFAULT_MIN_ELEMENT_COUNT: u64 = 1000;

pub fn default_license_allow_list() -> Vec<Iri> {
    [
        "http://creativecommons.org/publicdomain/zero/1.0/",
        "https://creativecommons.org/licenses/by/4.0/",
        "https://creativecommons.org/licenses/by-sa/4.0/",
        "https://opendatacommons.org/licenses/odbl/1-0/",
    ]
    .into_iter()
    .map(|s| Iri::new(s).expect("constant IRI"))
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub rule_id: String,
    pub path: String,
    pub severity: Severity,
    pub message: String,
}

impl Violation {
    pub fn error(rule_id: &str, path: impl Into<String>, message: impl Into<String>) -> Self {
        Violation { rule_id: rule_id.to_owned(), path: path.into(), severity: Severity::Error, message: message.into() }
    }

    pub fn warning(rule_id: &str, path: impl Into<String>, message: impl Into<String>) -> Self {
        Violation { rule_id: rule_id.to_owned(), path: path.into(), severity: Severity::Warning, message: message.into() }
    }
}

/// Findings for one subject, kept sorted by rule id then path.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(mut violations: Vec<Violation>) -> Self {
        violations.sort();
        violations.dedup();
        ValidationReport { violations }
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.severity == Severity::Error)
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }

    pub fn merge(&self, other: &ValidationReport) -> ValidationReport {
        ValidationReport::new(self.violations.iter().chain(&other.violations).cloned().collect())
    }

    pub fn render_text(&self) -> String {
        if self.violations.is_empty() {
            return "no violations\n".to_owned();
        }
        let mut out = String::new();
        for v in &self.violations {
            let _ = writeln!(out, "{:<7} [{}] {}: {}", v.severity.as_str(), v.rule_id, v.path, v.message);
        }
        out
    }

    /// Machine-readable form. The report node is `report`; `focus` is the
    /// validated resource.
    pub fn to_rdf(&self, report: &Iri, focus: &Iri, vocab: &Vocabulary) -> RdfDataset {
        let mut ds = RdfDataset::new();
        let mut blanks = BlankSupply::new("v");
        add(&mut ds, report.clone(), rdf_vocab::type_(), vocab.validation_report_class());
        add(&mut ds, report.clone(), crate::vocab::prov::was_derived_from(), focus.clone());
        add(&mut ds, report.clone(), vocab.conforms(), Literal::boolean(!self.has_errors()));
        for v in &self.violations {
            let node = blanks.fresh();
            add(&mut ds, report.clone(), vocab.violation(), node.clone());
            add(&mut ds, node.clone(), rdf_vocab::type_(), vocab.violation_class());
            add(&mut ds, node.clone(), vocab.rule_id(), Literal::string(&v.rule_id));
            add(&mut ds, node.clone(), vocab.path(), Literal::string(&v.path));
            let severity = match v.severity {
                Severity::Error => vocab.error(),
                Severity::Warning => vocab.warning(),
            };
            add(&mut ds, node.clone(), vocab.severity(), severity);
            add(&mut ds, node, vocab.message(), Literal::string(&v.message));
        }
        with_registry_prefixes(ds, vocab)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationPolicy {
    pub license_allow_list: Vec<Iri>,
    pub min_element_count: u64,
}

impl Default for ValidationPolicy {
    fn default() -> Self {
        ValidationPolicy {
            license_allow_list: default_license_allow_list(),
            min_element_count: DEFAULT_MIN_ELEMENT_COUNT,
        }
    }
}

/// `http`/`https` and a trailing slash are not significant when comparing
/// license IRIs.
fn license_key(iri: &Iri) -> &str {
    let s = iri.as_str();
    let s = s.strip_prefix("https://").or_else(|| s.strip_prefix("http://")).unwrap_or(s);
    s.trim_end_matches('/')
}

impl ValidationPolicy {
    pub fn is_open_license(&self, license: &Iri) -> bool {
        let key = license_key(license);
        self.license_allow_list.iter().any(|l| license_key(l) == key)
    }
}

pub fn validate_dataset_metadata(md: &DatasetMetadata, policy: &ValidationPolicy) -> ValidationReport {
    let mut found = Vec::new();

    if !is_valid_identifier(&md.id) {
        found.push(Violation::error(
            "id-format",
            "id",
            format!("{:?} must be lowercase letters, digits and hyphens, starting with a letter or digit", md.id),
        ));
    }

    if !policy.is_open_license(&md.license) {
        found.push(Violation::error("open-license", "license", format!("{} is not an accepted open license", md.license)));
    }

    // Indices refer to the sorted creator list so the report does not depend
    // on input order.
    let mut creators = md.creators.clone();
    creators.sort();
    if creators.iter().all(|c| c.name.trim().is_empty()) {
        let message = if creators.is_empty() { "no creators are listed" } else { "no creator has a name" };
        found.push(Violation::error("authorship", "creators", message));
    } else {
        for (i, c) in creators.iter().enumerate() {
            if c.name.trim().is_empty() {
                found.push(Violation::warning("authorship", format!("creators[{i}].name"), "creator has no name"));
            }
        }
    }
    for (i, c) in creators.iter().enumerate() {
        if let Some(orcid) = &c.orcid {
            if !is_valid_orcid(orcid) {
                found.push(Violation::error(
                    "orcid-checksum",
                    format!("creators[{i}].orcid"),
                    format!("{orcid:?} is not a valid ORCID identifier"),
                ));
            }
        }
    }

    if md.declared_element_count < policy.min_element_count {
        found.push(Violation::error(
            "sufficient-size",
            "declaredElementCount",
            format!("{} elements declared, at least {} required", md.declared_element_count, policy.min_element_count),
        ));
    }

    if md.use_case.trim().is_empty() {
        found.push(Violation::error("use-case", "useCase", "use case is empty"));
    }

    ValidationReport::new(found)
}
