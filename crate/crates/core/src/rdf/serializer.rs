//! Deterministic writers for the four syntaxes.
//!
//! Blank nodes are relabeled canonically before writing, so equal datasets
//! produce equal bytes. Line-based output is one statement per line in
//! canonical quad order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::dataset::RdfDataset;
use super::format::RdfFormat;
use super::iso::canonical_relabel;
use super::term::{write_quoted, BlankNode, GraphName, Iri, Literal, Quad, Subject, Term};
use super::vocab::{rdf, xsd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{format} cannot express named graphs")]
pub struct FormatCapabilityError {
    pub format: RdfFormat,
}

/// Extra knobs for the writers.
#[derive(Clone, Debug, Default)]
pub struct SerializeOptions {
    /// Prepended to every canonical blank node label (`e3_` gives `_:e3_b0`).
    pub blank_prefix: String,
}

pub fn serialize_document(ds: &RdfDataset, format: RdfFormat) -> Result<Vec<u8>, FormatCapabilityError> {
    serialize_with(ds, format, &SerializeOptions::default())
}

pub fn serialize_with(
    ds: &RdfDataset,
    format: RdfFormat,
    options: &SerializeOptions,
) -> Result<Vec<u8>, FormatCapabilityError> {
    if !format.supports_named_graphs() && ds.has_named_graphs() {
        return Err(FormatCapabilityError { format });
    }
    let canonical = canonical_relabel(ds);
    let canonical = if options.blank_prefix.is_empty() {
        canonical
    } else {
        canonical.relabel_blank_nodes(|b| BlankNode::new(format!("{}{}", options.blank_prefix, b.label())))
    };
    let text = match format {
        RdfFormat::NTriples | RdfFormat::NQuads => {
            let mut out = String::new();
            for q in canonical.iter() {
                out.push_str(&q.to_nquads());
                out.push('\n');
            }
            out
        }
        RdfFormat::Turtle | RdfFormat::TriG => TurtleWriter::new(ds.prefixes()).write(&canonical),
    };
    Ok(text.into_bytes())
}

struct TurtleWriter {
    /// (namespace, prefix) pairs, longest namespace first
    namespaces: Vec<(String, String)>,
    header: String,
}

fn is_valid_prefix(prefix: &str) -> bool {
    let mut chars = prefix.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphabetic() => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') && !prefix.ends_with('.')
        }
        _ => false,
    }
}

/// Conservative subset of `PN_LOCAL` that needs no escaping.
fn is_simple_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        }
        _ => false,
    }
}

impl TurtleWriter {
    fn new(prefixes: &BTreeMap<String, Iri>) -> Self {
        let mut header = String::new();
        let mut namespaces = Vec::new();
        for (prefix, ns) in prefixes {
            if is_valid_prefix(prefix) {
                let _ = writeln!(header, "@prefix {prefix}: {ns} .");
                namespaces.push((ns.as_str().to_owned(), prefix.clone()));
            }
        }
        namespaces.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.cmp(b)));
        TurtleWriter { namespaces, header }
    }

    fn iri(&self, iri: &Iri) -> String {
        for (ns, prefix) in &self.namespaces {
            if let Some(local) = iri.as_str().strip_prefix(ns.as_str()) {
                if is_simple_local(local) {
                    return format!("{prefix}:{local}");
                }
            }
        }
        iri.to_string()
    }

    fn literal(&self, lit: &Literal) -> String {
        let mut out = String::new();
        write_quoted(&mut out, lit.lexical());
        if let Some(lang) = lit.language() {
            out.push('@');
            out.push_str(lang);
        } else if lit.datatype().as_str() != xsd::STRING {
            out.push_str("^^");
            out.push_str(&self.iri(lit.datatype()));
        }
        out
    }

    fn term(&self, term: &Term) -> String {
        match term {
            Term::Iri(i) => self.iri(i),
            Term::Blank(b) => b.to_string(),
            Term::Literal(l) => self.literal(l),
        }
    }

    fn subject(&self, s: &Subject) -> String {
        match s {
            Subject::Iri(i) => self.iri(i),
            Subject::Blank(b) => b.to_string(),
        }
    }

    fn predicate(&self, p: &Iri) -> String {
        if p.as_str() == rdf::TYPE {
            "a".to_owned()
        } else {
            self.iri(p)
        }
    }

    fn write(&self, ds: &RdfDataset) -> String {
        let mut out = self.header.clone();
        let quads: Vec<&Quad> = ds.iter().collect();
        let mut i = 0;
        while i < quads.len() {
            let graph = &quads[i].graph;
            let mut end = i;
            while end < quads.len() && &quads[end].graph == graph {
                end += 1;
            }
            if !out.is_empty() {
                out.push('\n');
            }
            let indent = match graph {
                GraphName::Default => "",
                GraphName::Iri(g) => {
                    let _ = writeln!(out, "{} {{", self.iri(g));
                    "  "
                }
                GraphName::Blank(b) => {
                    let _ = writeln!(out, "{b} {{");
                    "  "
                }
            };
            self.write_triples(&mut out, &quads[i..end], indent);
            if *graph != GraphName::Default {
                out.push_str("}\n");
            }
            i = end;
        }
        out
    }

    fn write_triples(&self, out: &mut String, quads: &[&Quad], indent: &str) {
        let mut i = 0;
        while i < quads.len() {
            let subject = &quads[i].subject;
            let _ = write!(out, "{indent}{}", self.subject(subject));
            let mut first_predicate = true;
            while i < quads.len() && &quads[i].subject == subject {
                let predicate = &quads[i].predicate;
                if !first_predicate {
                    let _ = write!(out, " ;\n{indent}    ");
                } else {
                    out.push(' ');
                }
                first_predicate = false;
                let _ = write!(out, "{} ", self.predicate(predicate));
                let mut first_object = true;
                while i < quads.len() && &quads[i].subject == subject && &quads[i].predicate == predicate {
                    if !first_object {
                        out.push_str(", ");
                    }
                    first_object = false;
                    out.push_str(&self.term(&quads[i].object));
                    i += 1;
                }
            }
            out.push_str(" .\n");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{dataset_isomorphic, parse_str};

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn empty_nquads_is_empty() {
        assert!(serialize_document(&RdfDataset::new(), RdfFormat::NQuads).unwrap().is_empty());
        assert!(serialize_document(&RdfDataset::new(), RdfFormat::Turtle).unwrap().is_empty());
    }

    #[test]
    fn single_ntriples_line() {
        let ds = RdfDataset::from_iter([Quad::triple(iri("http://a"), iri("http://b"), iri("http://c"))]);
        let out = String::from_utf8(serialize_document(&ds, RdfFormat::NTriples).unwrap()).unwrap();
        assert_eq!(out, "<http://a> <http://b> <http://c> .\n");
        assert_eq!(out.lines().count(), 1);
        assert!(out.trim_end().ends_with('.'));
    }

    #[test]
    fn named_graphs_need_capable_format() {
        let ds = RdfDataset::from_iter([Quad::new(iri("http://a"), iri("http://b"), iri("http://c"), iri("http://g").into())]);
        assert_eq!(
            serialize_document(&ds, RdfFormat::Turtle),
            Err(FormatCapabilityError { format: RdfFormat::Turtle })
        );
        assert!(serialize_document(&ds, RdfFormat::NTriples).is_err());
    }

    #[test]
    fn trig_named_graph_round_trips() {
        let src = "@prefix ex: <http://ex/> .\nex:s ex:p ex:o .\nex:g { ex:s ex:p [ ex:q \"v\"@en ] . _:x ex:p 3 }\n";
        let ds = parse_str(src, RdfFormat::TriG, None).unwrap();
        let out = serialize_document(&ds, RdfFormat::TriG).unwrap();
        let text = String::from_utf8(out.clone()).unwrap();
        assert!(text.starts_with("@prefix ex: <http://ex/> ."), "{text}");
        let back = parse_str(&text, RdfFormat::TriG, None).unwrap();
        assert!(dataset_isomorphic(&ds, &back).unwrap());
    }

    #[test]
    fn blank_prefix_is_applied() {
        let ds = parse_str("_:x <http://p> _:y .", RdfFormat::NTriples, None).unwrap();
        let opts = SerializeOptions { blank_prefix: "e7_".into() };
        let out = String::from_utf8(serialize_with(&ds, RdfFormat::NTriples, &opts).unwrap()).unwrap();
        assert_eq!(out, "_:e7_b0 <http://p> _:e7_b1 .\n");
    }

    #[test]
    fn unsafe_local_names_fall_back_to_full_iris() {
        let mut ds = RdfDataset::from_iter([Quad::triple(iri("http://ex/a.b"), iri("http://ex/p"), iri("http://ex/"))]);
        ds.set_prefix("ex", iri("http://ex/"));
        let text = String::from_utf8(serialize_document(&ds, RdfFormat::Turtle).unwrap()).unwrap();
        assert!(text.contains("<http://ex/a.b> ex:p ex: ."), "{text}");
    }
}
