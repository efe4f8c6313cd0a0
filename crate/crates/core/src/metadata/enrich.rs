use std::collections::BTreeSet;

use thiserror::Error;

use crate::rdf::{literal_as_integer, Iri, RdfDataset, Subject};
use crate::vocab::Vocabulary;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{subject} declares {declared} elements but {computed} were counted")]
pub struct ConflictError {
    pub subject: Subject,
    pub declared: String,
    pub computed: String,
}

/// Predicates with at most one value per subject; computed values replace
/// declared ones.
pub fn functional_predicates(vocab: &Vocabulary) -> Vec<Iri> {
    vec![
        vocab.element_count(),
        vocab.byte_size(),
        vocab.sha256(),
        vocab.statement_count(),
        vocab.distinct_subjects(),
        vocab.distinct_predicates(),
        vocab.distinct_objects(),
        vocab.uses_named_graphs(),
    ]
}

pub fn enrich_metadata(
    original: &RdfDataset,
    computed: &RdfDataset,
    vocab: &Vocabulary,
) -> Result<RdfDataset, ConflictError> {
    let count = vocab.element_count();
    for q in computed.iter().filter(|q| q.predicate == count) {
        for declared in original.objects(&q.subject, &count) {
            let same = match (declared.as_literal(), q.object.as_literal()) {
                (Some(a), Some(b)) => match (literal_as_integer(a), literal_as_integer(b)) {
                    (Some(x), Some(y)) => x == y,
                    _ => a == b,
                },
                _ => declared == &q.object,
            };
            if !same {
                return Err(ConflictError {
                    subject: q.subject.clone(),
                    declared: declared.to_string(),
                    computed: q.object.to_string(),
                });
            }
        }
    }

    let functional = functional_predicates(vocab);
    let overridden: BTreeSet<_> = computed
        .iter()
        .filter(|q| functional.contains(&q.predicate))
        .map(|q| (q.graph.clone(), q.subject.clone(), q.predicate.clone()))
        .collect();
    let mut out = original.clone();
    out.retain(|q| !overridden.contains(&(q.graph.clone(), q.subject.clone(), q.predicate.clone())));
    out.extend(computed.iter().cloned());
    Ok(out.with_prefixes(computed.prefixes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{parse_str, RdfFormat};

    fn ttl(s: &str) -> RdfDataset {
        parse_str(&format!("@prefix br: <https://w3id.org/benchreg/ns/1#> .\n{s}"), RdfFormat::Turtle, None).unwrap()
    }

    #[test]
    fn identity_union_and_override() {
        let v = Vocabulary::default();
        let g = ttl("<http://d> br:title \"t\" ; br:byteSize 10 .");
        assert_eq!(enrich_metadata(&g, &RdfDataset::new(), &v).unwrap(), g);

        let a = ttl("<http://a> br:title \"1\", \"2\", \"3\" .");
        let b = ttl("<http://b> br:title \"1\", \"2\", \"3\", \"4\" .");
        assert_eq!(enrich_metadata(&a, &b, &v).unwrap().len(), 7);

        let c = ttl("<http://d> br:byteSize 12 .");
        let e = enrich_metadata(&g, &c, &v).unwrap();
        assert_eq!(e, ttl("<http://d> br:title \"t\" ; br:byteSize 12 ."));
        assert_eq!(enrich_metadata(&e, &c, &v).unwrap(), e);
    }

    #[test]
    fn element_count_disagreement_is_a_conflict() {
        let v = Vocabulary::default();
        let g = ttl("<http://d> br:elementCount 100 .");
        let c = ttl("<http://d> br:elementCount 99 .");
        assert!(enrich_metadata(&g, &c, &v).is_err());
        let same = ttl("<http://d> br:elementCount \"100\"^^<http://www.w3.org/2001/XMLSchema#long> .");
        assert!(enrich_metadata(&g, &same, &v).is_ok());
    }
}
