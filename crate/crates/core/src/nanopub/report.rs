use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::structure::Nanopublication;
use crate::metadata::orcid::{bare_orcid, is_valid_orcid, orcid_url};
use crate::metadata::{add, BlankSupply, ExtractError, NodeView};
use crate::rdf::vocab::{rdf as rdf_vocab, xsd};
use crate::rdf::{write_list, Iri, Literal, RdfDataset, Subject, Term};
use crate::vocab::{dct, np, prov, Vocabulary, DCTERMS_NS, NANOPUB_NS, PROV_NS};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EvaluatedSystem {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchmarkRunReport {
    pub report_iri: Iri,
    pub task: Iri,
    pub profile: Iri,
    pub profile_version: String,
    pub benchmark_code: Iri,
    /// In the order given by the author.
    pub systems: Vec<EvaluatedSystem>,
    pub author_orcid: String,
    pub date: NaiveDate,
    pub results_link: Option<Iri>,
}

fn parse_date(term: &Term) -> Result<NaiveDate, ExtractError> {
    let lit = term.as_literal().ok_or_else(|| ExtractError::mismatch("date", "expected a date literal"))?;
    let dt = lit.datatype().as_str();
    if dt != xsd::DATE && dt != xsd::DATE_TIME && !lit.is_plain_string() {
        return Err(ExtractError::mismatch("date", format!("unexpected datatype {dt}")));
    }
    let lexical = lit.lexical().trim();
    let day = lexical.get(..10).unwrap_or(lexical);
    NaiveDate::parse_from_str(day, "%Y-%m-%d").map_err(|_| ExtractError::mismatch("date", format!("{lexical:?} is not a date")))
}

fn orcid_from(term: &Term) -> Result<String, ExtractError> {
    let raw = match term {
        Term::Iri(i) => i.as_str(),
        Term::Literal(l) => l.lexical(),
        Term::Blank(_) => return Err(ExtractError::mismatch("authorOrcid", "expected an ORCID IRI")),
    };
    let id = bare_orcid(raw);
    if !is_valid_orcid(id) {
        return Err(ExtractError::mismatch("authorOrcid", format!("{raw:?} is not a valid ORCID identifier")));
    }
    Ok(id.to_owned())
}

/// Reads the report from the assertion graph, the author and date from the
/// publication info.
pub fn extract_report(np: &Nanopublication, vocab: &Vocabulary) -> Result<BenchmarkRunReport, ExtractError> {
    let class = vocab.report_class();
    let node = match np.assertion.instances_of(&class).into_iter().next() {
        Some(s) => s,
        None => np
            .assertion
            .iter()
            .find(|q| q.predicate == vocab.task())
            .map(|q| q.subject.clone())
            .ok_or_else(|| ExtractError::MissingField("task".into()))?,
    };
    let Subject::Iri(report_iri) = node.clone() else {
        return Err(ExtractError::mismatch("reportIri", "the report must be identified by an IRI"));
    };
    let v = NodeView::new(&np.assertion, node);
    let task = v.iri("task", &vocab.task())?;
    let profile = v.iri("profile", &vocab.profile())?;
    let profile_version = v.string("profileVersion", &vocab.profile_version())?;
    let benchmark_code = v.iri("benchmarkCode", &vocab.benchmark_code())?;
    let results_link = v.opt_iri("resultsLink", &vocab.results_link())?;

    let mut systems = Vec::new();
    let items = match v.first(&vocab.evaluated_systems()) {
        None => Vec::new(),
        Some(head) => np
            .assertion
            .read_list(head)
            .ok_or_else(|| ExtractError::mismatch("systems", "malformed RDF list"))?,
    };
    for item in items {
        let s = v.child(&item, "systems")?;
        systems.push(EvaluatedSystem {
            name: s.string("systems", &vocab.system_name())?,
            version: s.string("systems", &vocab.system_version())?,
        });
    }
    if systems.is_empty() {
        return Err(ExtractError::MissingField("systems".into()));
    }

    let info = NodeView::new(&np.pubinfo, Subject::Iri(np.uri.clone()));
    let author = info
        .first(&dct::creator())
        .or_else(|| info.first(&prov::was_attributed_to()))
        .ok_or_else(|| ExtractError::MissingField("authorOrcid".into()))?;
    let author_orcid = orcid_from(author)?;
    let date = parse_date(info.required("date", &dct::created())?)?;

    Ok(BenchmarkRunReport {
        report_iri,
        task,
        profile,
        profile_version,
        benchmark_code,
        systems,
        author_orcid,
        date,
        results_link,
    })
}

/// `base#local`, or `base` + `local` when `base` already ends in `#` or `/`.
pub fn local_iri(base: &Iri, local: &str) -> Iri {
    let b = base.as_str();
    let joined = if b.ends_with('#') || b.ends_with('/') { format!("{b}{local}") } else { format!("{b}#{local}") };
    Iri::new(joined).unwrap_or_else(|_| base.clone())
}

/// Builds a structurally valid nanopublication with URI `base`.
pub fn build_report_nanopub(
    report: &BenchmarkRunReport,
    base: &Iri,
    vocab: &Vocabulary,
) -> Result<Nanopublication, ExtractError> {
    if report.systems.is_empty() {
        return Err(ExtractError::MissingField("systems".into()));
    }
    if !is_valid_orcid(&report.author_orcid) {
        return Err(ExtractError::mismatch("authorOrcid", format!("{:?} is not a valid ORCID identifier", report.author_orcid)));
    }
    let author = Iri::new(orcid_url(&report.author_orcid))
        .map_err(|e| ExtractError::mismatch("authorOrcid", e.to_string()))?;
    let uri = base.clone();
    let head_graph = local_iri(base, "Head");
    let assertion_graph = local_iri(base, "assertion");
    let provenance_graph = local_iri(base, "provenance");
    let pubinfo_graph = local_iri(base, "pubinfo");

    let mut head = RdfDataset::new();
    add(&mut head, uri.clone(), rdf_vocab::type_(), np::nanopublication());
    add(&mut head, uri.clone(), np::has_assertion(), assertion_graph.clone());
    add(&mut head, uri.clone(), np::has_provenance(), provenance_graph.clone());
    add(&mut head, uri.clone(), np::has_publication_info(), pubinfo_graph.clone());

    let mut assertion = RdfDataset::new();
    let r = report.report_iri.clone();
    add(&mut assertion, r.clone(), rdf_vocab::type_(), vocab.report_class());
    add(&mut assertion, r.clone(), vocab.task(), report.task.clone());
    add(&mut assertion, r.clone(), vocab.profile(), report.profile.clone());
    add(&mut assertion, r.clone(), vocab.profile_version(), Literal::string(&report.profile_version));
    add(&mut assertion, r.clone(), vocab.benchmark_code(), report.benchmark_code.clone());
    if let Some(link) = &report.results_link {
        add(&mut assertion, r.clone(), vocab.results_link(), link.clone());
    }
    let mut blanks = BlankSupply::new("sys");
    let mut items = Vec::new();
    for s in &report.systems {
        let node = blanks.fresh();
        add(&mut assertion, node.clone(), rdf_vocab::type_(), vocab.system_class());
        add(&mut assertion, node.clone(), vocab.system_name(), Literal::string(&s.name));
        add(&mut assertion, node.clone(), vocab.system_version(), Literal::string(&s.version));
        items.push(Term::Blank(node));
    }
    let mut list_blanks = BlankSupply::new("list");
    let systems = write_list(&mut assertion, items, || list_blanks.fresh());
    add(&mut assertion, r, vocab.evaluated_systems(), systems);

    let mut provenance = RdfDataset::new();
    add(&mut provenance, assertion_graph.clone(), prov::was_attributed_to(), author.clone());

    let mut pubinfo = RdfDataset::new();
    add(&mut pubinfo, uri.clone(), dct::creator(), author);
    add(
        &mut pubinfo,
        uri.clone(),
        dct::created(),
        Literal::typed(report.date.format("%Y-%m-%d").to_string(), xsd::date()),
    );

    let prefixes = [
        ("this", uri.as_str().to_owned()),
        ("sub", local_iri(base, "").as_str().to_owned()),
        ("np", NANOPUB_NS.to_owned()),
        ("prov", PROV_NS.to_owned()),
        ("dct", DCTERMS_NS.to_owned()),
        ("xsd", xsd::NS.to_owned()),
        (Vocabulary::PREFIX, vocab.namespace().as_str().to_owned()),
    ];
    let mut np_out = Nanopublication {
        uri,
        head_graph,
        assertion_graph,
        provenance_graph,
        pubinfo_graph,
        head,
        assertion,
        provenance,
        pubinfo,
    };
    for (p, ns) in prefixes {
        if let Ok(ns) = Iri::new(ns) {
            np_out.head.set_prefix(p, ns);
        }
    }
    Ok(np_out)
}
