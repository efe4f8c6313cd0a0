mod common;

use benchreg::rdf::{
    canonical_relabel, dataset_isomorphic, dataset_isomorphic_with_limit, parse_document, parse_str, serialize_document,
    ComplexityLimitError, RdfDataset, RdfFormat,
};
use common::{brute_force_isomorphic, cycles, dataset, perturb, relabel_randomly};
use proptest::prelude::*;

fn legal_formats(d: &RdfDataset) -> Vec<RdfFormat> {
    RdfFormat::ALL.into_iter().filter(|f| f.supports_named_graphs() || !d.has_named_graphs()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn round_trip_every_legal_format(d in dataset(10, 4)) {
        for f in legal_formats(&d) {
            let bytes = serialize_document(&d, f).unwrap();
            let back = parse_document(&bytes, f, None)
                .unwrap_or_else(|e| panic!("{f}: {e}\n{}", String::from_utf8_lossy(&bytes)));
            prop_assert!(dataset_isomorphic(&d, &back).unwrap(), "{f}\n{}", String::from_utf8_lossy(&bytes));
        }
    }

    #[test]
    fn triples_formats_refuse_named_graphs(d in dataset(10, 4)) {
        for f in [RdfFormat::Turtle, RdfFormat::NTriples] {
            prop_assert_eq!(serialize_document(&d, f).is_err(), d.has_named_graphs());
        }
    }

    #[test]
    fn line_formats_are_sorted_one_statement_per_line(d in dataset(10, 4)) {
        let text = String::from_utf8(serialize_document(&d, RdfFormat::NQuads).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        prop_assert_eq!(lines.len(), d.len());
        let canonical: Vec<String> = canonical_relabel(&d).iter().map(|q| q.to_nquads()).collect();
        prop_assert_eq!(lines, canonical.iter().map(String::as_str).collect::<Vec<_>>());
    }

    #[test]
    fn serialization_is_a_fixpoint(d in dataset(10, 4)) {
        for f in legal_formats(&d) {
            let once = serialize_document(&d, f).unwrap();
            let twice = serialize_document(&parse_document(&once, f, None).unwrap(), f).unwrap();
            prop_assert_eq!(&once, &twice, "{}", f);
        }
    }

    #[test]
    fn isomorphism_agrees_with_brute_force(d in dataset(10, 6), seed in any::<u64>(), pick in any::<usize>()) {
        let renamed = relabel_randomly(&d, seed);
        prop_assert!(dataset_isomorphic(&d, &renamed).unwrap());
        prop_assert!(brute_force_isomorphic(&d, &renamed));
        let other = relabel_randomly(&perturb(&d, pick), seed);
        prop_assert_eq!(dataset_isomorphic(&d, &other).unwrap(), brute_force_isomorphic(&d, &other));
    }

    #[test]
    fn isomorphism_is_an_equivalence(a in dataset(6, 4), b in dataset(6, 4), seed in any::<u64>()) {
        prop_assert!(dataset_isomorphic(&a, &a).unwrap());
        prop_assert_eq!(dataset_isomorphic(&a, &b).unwrap(), dataset_isomorphic(&b, &a).unwrap());
        let a2 = relabel_randomly(&a, seed);
        prop_assert_eq!(dataset_isomorphic(&a, &b).unwrap(), dataset_isomorphic(&a2, &b).unwrap());
    }

    #[test]
    fn prefixes_do_not_change_equality(d in dataset(6, 2)) {
        let mut with = d.clone();
        with.set_prefix("ex", common::iri("http://example.org/"));
        prop_assert_eq!(&with, &d);
        prop_assert!(dataset_isomorphic(&with, &d).unwrap());
    }

    #[test]
    fn parser_never_panics_on_noise(text in "\\PC{0,80}", f in prop::sample::select(RdfFormat::ALL.to_vec())) {
        let _ = parse_str(&text, f, None);
    }

    #[test]
    fn parser_never_panics_on_damaged_documents(d in dataset(6, 3), cut in any::<usize>(), byte in any::<u8>()) {
        for f in legal_formats(&d) {
            let mut bytes = serialize_document(&d, f).unwrap();
            if !bytes.is_empty() {
                let i = cut % bytes.len();
                bytes[i] = byte;
                let _ = parse_document(&bytes, f, None);
                bytes.truncate(i);
                let _ = parse_document(&bytes, f, None);
            }
        }
    }
}

#[test]
fn refinement_blind_spots_are_resolved() {
    // Every node has the same colour after refinement in all of these.
    let cases = [
        (vec![6], vec![3, 3], false),
        (vec![3, 3], vec![3, 3], true),
        (vec![4], vec![2, 2], false),
        (vec![2, 4], vec![3, 3], false),
        (vec![5], vec![5], true),
    ];
    for (a, b, expected) in cases {
        let da = cycles(&a);
        let db = relabel_randomly(&cycles(&b), 11);
        assert_eq!(brute_force_isomorphic(&da, &db), expected, "oracle {a:?} {b:?}");
        assert_eq!(dataset_isomorphic(&da, &db).unwrap(), expected, "{a:?} {b:?}");
    }
}

#[test]
fn complexity_limit_applies_only_when_backtracking() {
    let big = cycles(&[10, 10]);
    let err = dataset_isomorphic_with_limit(&big, &cycles(&[20]), 8).unwrap_err();
    assert_eq!(err, ComplexityLimitError { blank_nodes: 20, limit: 8 });
    // A chain is resolved by refinement alone.
    let chain = parse_str(
        "_:a <http://p> _:b .\n_:b <http://p> _:c .\n_:c <http://p> _:d .\n_:d <http://p> _:e .\n",
        RdfFormat::NTriples,
        None,
    )
    .unwrap();
    assert!(dataset_isomorphic_with_limit(&chain, &relabel_randomly(&chain, 3), 1).unwrap());
}
