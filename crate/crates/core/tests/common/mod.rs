//! Shared helpers for the integration tests: fixture access, random
//! datasets and a brute-force isomorphism oracle.

#![allow(dead_code)]

pub mod conneg;
pub mod registry;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use benchreg::rdf::{BlankNode, GraphName, Iri, Literal, Quad, RdfDataset, Subject, Term};
use proptest::prelude::*;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

pub fn copy_dir(from: &Path, to: &Path) {
    for entry in walkdir::WalkDir::new(from) {
        let entry = entry.unwrap();
        let rel = entry.path().strip_prefix(from).unwrap();
        let target = to.join(rel);
        if entry.file_type().is_dir() {
            fs::create_dir_all(&target).unwrap();
        } else {
            fs::copy(entry.path(), &target).unwrap();
        }
    }
}

/// Relative path to bytes, for every file under `root`.
pub fn tree_bytes(root: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for entry in walkdir::WalkDir::new(root) {
        let entry = entry.unwrap();
        if entry.file_type().is_file() {
            let rel = entry.path().strip_prefix(root).unwrap().to_string_lossy().into_owned();
            out.insert(rel, fs::read(entry.path()).unwrap());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// brute-force isomorphism

fn blanks_of(q: &Quad) -> Vec<&BlankNode> {
    let mut out = Vec::new();
    if let Subject::Blank(b) = &q.subject {
        out.push(b);
    }
    if let Term::Blank(b) = &q.object {
        out.push(b);
    }
    if let GraphName::Blank(b) = &q.graph {
        out.push(b);
    }
    out
}

fn rename(q: &Quad, map: &BTreeMap<&BlankNode, &BlankNode>) -> Quad {
    let subject = match &q.subject {
        Subject::Blank(b) => Subject::Blank(map[b].clone()),
        s => s.clone(),
    };
    let object = match &q.object {
        Term::Blank(b) => Term::Blank(map[b].clone()),
        t => t.clone(),
    };
    let graph = match &q.graph {
        GraphName::Blank(b) => GraphName::Blank(map[b].clone()),
        g => g.clone(),
    };
    Quad { subject, predicate: q.predicate.clone(), object, graph }
}

/// Tries every bijection between the two blank-node sets.
pub fn brute_force_isomorphic(a: &RdfDataset, b: &RdfDataset) -> bool {
    let qa: Vec<&Quad> = a.iter().collect();
    let qb: BTreeSet<Quad> = b.iter().cloned().collect();
    if qa.len() != qb.len() {
        return false;
    }
    let ba: Vec<&BlankNode> = qa.iter().flat_map(|q| blanks_of(q)).collect::<BTreeSet<_>>().into_iter().collect();
    let bb: Vec<&BlankNode> = b.iter().flat_map(blanks_of).collect::<BTreeSet<_>>().into_iter().collect();
    if ba.len() != bb.len() {
        return false;
    }
    let mut perm: Vec<usize> = (0..bb.len()).collect();
    loop {
        let map: BTreeMap<&BlankNode, &BlankNode> = ba.iter().copied().zip(perm.iter().map(|&i| bb[i])).collect();
        if qa.iter().all(|q| qb.contains(&rename(q, &map))) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

/// Lexicographic successor; false after the last permutation.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

// ---------------------------------------------------------------------------
// random datasets

const EX: &str = "http://example.org/";

fn ex(local: &str) -> Iri {
    iri(&format!("{EX}{local}"))
}

fn literal() -> impl Strategy<Value = Literal> {
    let text = prop_oneof![
        Just(String::new()),
        Just("plain".to_owned()),
        Just("with \"quotes\" and \\ backslash".to_owned()),
        Just("line\nbreak\tand tab\r".to_owned()),
        Just("caf\u{e9} \u{1f600} \u{4e2d}".to_owned()),
        "[a-z ]{0,6}",
    ];
    prop_oneof![
        text.clone().prop_map(Literal::string),
        (text.clone(), prop::sample::select(vec!["en", "en-US", "de", "zh-Hant-TW"]))
            .prop_map(|(t, l)| Literal::lang_string(t, l)),
        (-1000i64..1000).prop_map(Literal::integer),
        any::<bool>().prop_map(Literal::boolean),
        Just(Literal::typed("2024-02-29", iri("http://www.w3.org/2001/XMLSchema#date"))),
        Just(Literal::typed("1.50", iri("http://www.w3.org/2001/XMLSchema#decimal"))),
        (text, Just(ex("custom"))).prop_map(|(t, d)| Literal::typed(t, d)),
    ]
}

/// Quads over a small vocabulary so that collisions and shared nodes are
/// common. `named` controls whether quads may leave the default graph.
pub fn quad(max_blanks: usize, named: bool) -> impl Strategy<Value = Quad> {
    let blank = (0..max_blanks.max(1)).prop_map(|i| BlankNode::new(format!("n{i}")));
    let use_blanks = max_blanks > 0;
    let subject = prop_oneof![
        3 => (0..4usize).prop_map(|i| Subject::Iri(ex(&format!("s{i}")))),
        if use_blanks { 3 } else { 0 } => blank.clone().prop_map(Subject::Blank),
    ];
    let predicate = prop_oneof![
        (0..3usize).prop_map(|i| ex(&format!("p{i}"))),
        Just(iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")),
    ];
    let object = prop_oneof![
        2 => (0..4usize).prop_map(|i| Term::Iri(ex(&format!("s{i}")))),
        if use_blanks { 3 } else { 0 } => blank.clone().prop_map(Term::Blank),
        3 => literal().prop_map(Term::Literal),
    ];
    let graph = prop_oneof![
        3 => Just(GraphName::Default),
        if named { 2 } else { 0 } => (0..2usize).prop_map(|i| GraphName::Iri(ex(&format!("g{i}")))),
        if named && use_blanks { 1 } else { 0 } => blank.prop_map(GraphName::Blank),
    ];
    (subject, predicate, object, graph).prop_map(|(subject, predicate, object, graph)| Quad { subject, predicate, object, graph })
}

pub fn dataset(max_quads: usize, max_blanks: usize) -> impl Strategy<Value = RdfDataset> {
    any::<bool>()
        .prop_flat_map(move |named| prop::collection::vec(quad(max_blanks, named), 0..=max_quads))
        .prop_map(|quads| quads.into_iter().collect())
}

/// Renames every blank node through a seeded random permutation of fresh
/// labels.
pub fn relabel_randomly(ds: &RdfDataset, seed: u64) -> RdfDataset {
    let blanks: Vec<BlankNode> = ds.blank_nodes().into_iter().collect();
    let mut targets: Vec<usize> = (0..blanks.len()).collect();
    let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
    for i in (1..targets.len()).rev() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        targets.swap(i, (state % (i as u64 + 1)) as usize);
    }
    let map: BTreeMap<BlankNode, BlankNode> =
        blanks.into_iter().zip(targets).map(|(b, t)| (b, BlankNode::new(format!("r{t}")))).collect();
    ds.relabel_blank_nodes(|b| map[b].clone())
}

/// Points one blank-node occurrence at a different blank node, if there are
/// at least two. The result may or may not stay isomorphic.
pub fn perturb(ds: &RdfDataset, pick: usize) -> RdfDataset {
    let blanks: Vec<BlankNode> = ds.blank_nodes().into_iter().collect();
    let quads: Vec<Quad> = ds.iter().cloned().collect();
    if quads.is_empty() {
        return ds.clone();
    }
    let mut out: Vec<Quad> = quads.clone();
    let i = pick % quads.len();
    let q = &mut out[i];
    if blanks.len() >= 2 {
        let other = |b: &BlankNode| {
            let pos = blanks.iter().position(|x| x == b).unwrap();
            blanks[(pos + 1 + pick % (blanks.len() - 1)) % blanks.len()].clone()
        };
        if let Term::Blank(b) = &q.object {
            q.object = Term::Blank(other(b));
            return out.into_iter().collect();
        }
        if let Subject::Blank(b) = &q.subject {
            q.subject = Subject::Blank(other(b));
            return out.into_iter().collect();
        }
    }
    q.predicate = ex("perturbed");
    out.into_iter().collect()
}

/// Blank nodes joined by one predicate along a union of cycles; all nodes
/// look alike to colour refinement.
pub fn cycles(lengths: &[usize]) -> RdfDataset {
    let p = ex("next");
    let mut ds = RdfDataset::new();
    let mut base = 0;
    for &len in lengths {
        for i in 0..len {
            let a = BlankNode::new(format!("c{}", base + i));
            let b = BlankNode::new(format!("c{}", base + (i + 1) % len));
            ds.insert(Quad::triple(a, p.clone(), b));
        }
        base += len;
    }
    ds
}

// ---------------------------------------------------------------------------
// reading generated pages back

/// Task heading text and its `(date, report link text)` rows, in page order,
/// from a results index page.
pub fn results_groups(markdown: &str) -> Vec<(String, Vec<(String, String)>)> {
    let mut groups: Vec<(String, Vec<(String, String)>)> = Vec::new();
    for line in markdown.lines() {
        if let Some(h) = line.strip_prefix("## ") {
            let name = h.strip_prefix('[').and_then(|r| r.split_once(']')).map_or(h, |(n, _)| n);
            groups.push((name.to_owned(), Vec::new()));
        } else if line.starts_with("| 2") || line.starts_with("| 1") {
            let cells: Vec<&str> = line.trim_matches('|').split(" | ").map(str::trim).collect();
            let report = cells[1].strip_prefix('[').and_then(|r| r.split_once(']')).map_or(cells[1], |(n, _)| n);
            groups.last_mut().expect("rows follow a heading").1.push((cells[0].to_owned(), report.to_owned()));
        }
    }
    groups
}

/// ISO 7064 mod 11-2 check character, computed digit by digit.
pub fn orcid_check(base15: &str) -> char {
    let mut total = 0u32;
    for c in base15.chars() {
        total = (total + c.to_digit(10).unwrap()) * 2;
    }
    match (12 - total % 11) % 11 {
        10 => 'X',
        d => char::from_digit(d, 10).unwrap(),
    }
}
