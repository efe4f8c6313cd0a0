//! Registry vocabulary: every class, property and individual the registry
//! reads or writes, defined once under a single versioned namespace.
//!
//! The namespace can be swapped through configuration; the local names are
//! fixed by the table below.

use crate::rdf::Iri;

/// Default namespace. The trailing `1#` is the vocabulary version.
pub const DEFAULT_NAMESPACE: &str = "https://w3id.org/benchreg/ns/1#";

pub const NANOPUB_NS: &str = "http://www.nanopub.org/nschema#";
pub const DCTERMS_NS: &str = "http://purl.org/dc/terms/";
pub const PROV_NS: &str = "http://www.w3.org/ns/prov#";
pub const ORCID_BASE: &str = "https://orcid.org/";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vocabulary {
    namespace: Iri,
}

impl Default for Vocabulary {
    fn default() -> Self {
        Vocabulary { namespace: Iri::from_static(DEFAULT_NAMESPACE) }
    }
}

macro_rules! terms {
    ($($method:ident => $local:literal),* $(,)?) => {
        impl Vocabulary {
            $(
                pub fn $method(&self) -> Iri {
                    self.term($local)
                }
            )*

            /// Every local name in the vocabulary.
            pub const LOCAL_NAMES: &'static [&'static str] = &[$($local),*];
        }
    };
}

terms! {
    // classes
    dataset_class => "Dataset",
    task_class => "Task",
    profile_class => "Profile",
    report_class => "BenchmarkRunReport",
    distribution_class => "Distribution",
    validation_report_class => "ValidationReport",
    violation_class => "Violation",
    agent_class => "Agent",
    metric_class => "Metric",
    system_class => "EvaluatedSystem",
    // descriptive properties
    identifier => "identifier",
    title => "title",
    description => "description",
    license => "license",
    creator => "creator",
    name => "name",
    orcid => "orcid",
    use_case => "useCase",
    stream_element_type => "streamElementType",
    element_count => "elementCount",
    source_url => "sourceUrl",
    // statistics
    statement_count => "statementCount",
    distinct_subjects => "distinctSubjects",
    distinct_predicates => "distinctPredicates",
    distinct_objects => "distinctObjects",
    uses_named_graphs => "usesNamedGraphs",
    // distributions
    distribution => "distribution",
    distribution_kind => "distributionKind",
    media_type => "mediaType",
    size_cap => "sizeCap",
    byte_size => "byteSize",
    sha256 => "sha256",
    file_name => "fileName",
    flat_distribution => "FlatDistribution",
    stream_distribution => "StreamDistribution",
    // element types
    triples => "Triples",
    quads => "Quads",
    graphs => "Graphs",
    // tasks and profiles
    required_profile => "requiredProfile",
    metrics => "metrics",
    metric_name => "metricName",
    unit => "unit",
    direction => "direction",
    higher_is_better => "HigherIsBetter",
    lower_is_better => "LowerIsBetter",
    constraint => "constraint",
    constraint_kind => "constraintKind",
    constraint_value => "constraintValue",
    element_type_is => "ElementTypeIs",
    min_element_count => "MinElementCount",
    max_element_count => "MaxElementCount",
    includes_dataset => "includesDataset",
    // benchmark run reports
    task => "task",
    profile => "profile",
    profile_version => "profileVersion",
    benchmark_code => "benchmarkCode",
    evaluated_systems => "evaluatedSystems",
    system_name => "systemName",
    system_version => "systemVersion",
    results_link => "resultsLink",
    // validation reports
    conforms => "conforms",
    violation => "violation",
    rule_id => "ruleId",
    path => "path",
    severity => "severity",
    message => "message",
    error => "Error",
    warning => "Warning",
}

impl Vocabulary {
    pub fn new(namespace: Iri) -> Self {
        Vocabulary { namespace }
    }

    pub fn namespace(&self) -> &Iri {
        &self.namespace
    }

    pub fn term(&self, local: &str) -> Iri {
        Iri::new(format!("{}{}", self.namespace.as_str(), local))
            .expect("vocabulary local names are IRI-safe")
    }

    /// Prefix name used when writing Turtle.
    pub const PREFIX: &'static str = "br";
}

pub mod np {
    use super::NANOPUB_NS;
    use crate::rdf::Iri;

    fn t(local: &str) -> Iri {
        Iri::new(format!("{NANOPUB_NS}{local}")).expect("constant IRI")
    }
    pub fn nanopublication() -> Iri {
        t("Nanopublication")
    }
    pub fn has_assertion() -> Iri {
        t("hasAssertion")
    }
    pub fn has_provenance() -> Iri {
        t("hasProvenance")
    }
    pub fn has_publication_info() -> Iri {
        t("hasPublicationInfo")
    }
}

pub mod dct {
    use super::DCTERMS_NS;
    use crate::rdf::Iri;

    pub fn created() -> Iri {
        Iri::new(format!("{DCTERMS_NS}created")).expect("constant IRI")
    }
    pub fn creator() -> Iri {
        Iri::new(format!("{DCTERMS_NS}creator")).expect("constant IRI")
    }
}

pub mod prov {
    use super::PROV_NS;
    use crate::rdf::Iri;

    pub fn was_attributed_to() -> Iri {
        Iri::new(format!("{PROV_NS}wasAttributedTo")).expect("constant IRI")
    }
    pub fn was_derived_from() -> Iri {
        Iri::new(format!("{PROV_NS}wasDerivedFrom")).expect("constant IRI")
    }
}
