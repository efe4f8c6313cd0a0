//! Blank-node isomorphism between datasets.
//!
//! Both datasets are encoded into one structure and their blank nodes are
//! colored jointly by iterative refinement: a node's next color is its
//! current color plus the sorted multiset of quads it occurs in, with other
//! blank nodes replaced by their colors. When refinement leaves ambiguous
//! classes, one node is individualized against each candidate in turn and
//! the search recurses.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use super::dataset::RdfDataset;
use super::term::{BlankNode, GraphName, Quad, Subject, Term};

/// Blank-node count above which backtracking is refused.
pub const DEFAULT_BLANK_NODE_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("isomorphism search needs backtracking over {blank_nodes} blank nodes (limit {limit})")]
pub struct ComplexityLimitError {
    pub blank_nodes: usize,
    pub limit: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Slot {
    Ground(u32),
    Blank(usize),
}

/// Slot key inside a node signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Ground(u32),
    Own,
    Color(u32),
}

struct Encoded {
    quads: Vec<[Slot; 4]>,
    /// node -> indices of quads mentioning it
    occurrences: Vec<Vec<usize>>,
}

fn ground_key(term_text: String, interner: &BTreeMap<String, u32>) -> u32 {
    interner[&term_text]
}

fn slot_texts(q: &Quad) -> [Option<String>; 4] {
    let s = match &q.subject {
        Subject::Iri(i) => Some(i.to_string()),
        Subject::Blank(_) => None,
    };
    let p = Some(q.predicate.to_string());
    let o = match &q.object {
        Term::Blank(_) => None,
        t => Some(t.to_string()),
    };
    let g = match &q.graph {
        GraphName::Default => Some(String::new()),
        GraphName::Iri(i) => Some(i.to_string()),
        GraphName::Blank(_) => None,
    };
    [s, p, o, g]
}

fn slot_blanks(q: &Quad) -> [Option<&BlankNode>; 4] {
    [
        match &q.subject {
            Subject::Blank(b) => Some(b),
            _ => None,
        },
        None,
        q.object.as_blank(),
        match &q.graph {
            GraphName::Blank(b) => Some(b),
            _ => None,
        },
    ]
}

/// Encodes several datasets into one node space. Ground terms are interned
/// in sorted order so ids do not depend on blank node labels.
fn encode(datasets: &[&RdfDataset]) -> (Encoded, Vec<Vec<BlankNode>>) {
    let mut texts = BTreeSet::new();
    for ds in datasets {
        for q in ds.iter() {
            for t in slot_texts(q).into_iter().flatten() {
                texts.insert(t);
            }
        }
    }
    let interner: BTreeMap<String, u32> =
        texts.into_iter().enumerate().map(|(i, t)| (t, i as u32)).collect();

    let mut quads = Vec::new();
    let mut occurrences: Vec<Vec<usize>> = Vec::new();
    let mut nodes_per_dataset = Vec::new();
    for ds in datasets {
        let mut ids: HashMap<&BlankNode, usize> = HashMap::new();
        let mut nodes = Vec::new();
        for q in ds.iter() {
            let texts = slot_texts(q);
            let blanks = slot_blanks(q);
            let mut enc = [Slot::Ground(0); 4];
            let qi = quads.len();
            for i in 0..4 {
                enc[i] = match (&texts[i], blanks[i]) {
                    (Some(t), _) => Slot::Ground(ground_key(t.clone(), &interner)),
                    (None, Some(b)) => {
                        let id = *ids.entry(b).or_insert_with(|| {
                            occurrences.push(Vec::new());
                            nodes.push(b.clone());
                            occurrences.len() - 1
                        });
                        if occurrences[id].last() != Some(&qi) {
                            occurrences[id].push(qi);
                        }
                        Slot::Blank(id)
                    }
                    (None, None) => unreachable!("every slot is ground or blank"),
                };
            }
            quads.push(enc);
        }
        nodes_per_dataset.push(nodes);
    }
    (Encoded { quads, occurrences }, nodes_per_dataset)
}

impl Encoded {
    /// Refines `colors` until the partition is stable. Colors are dense ids
    /// ordered by signature, so the result depends only on structure.
    fn refine(&self, colors: &mut [u32]) {
        let mut classes = count_classes(colors);
        loop {
            let signatures: Vec<(u32, Vec<[Key; 4]>)> = (0..colors.len())
                .map(|node| {
                    let mut edges: Vec<[Key; 4]> = self.occurrences[node]
                        .iter()
                        .map(|&qi| {
                            self.quads[qi].map(|slot| match slot {
                                Slot::Ground(g) => Key::Ground(g),
                                Slot::Blank(b) if b == node => Key::Own,
                                Slot::Blank(b) => Key::Color(colors[b]),
                            })
                        })
                        .collect();
                    edges.sort_unstable();
                    (colors[node], edges)
                })
                .collect();
            let mut distinct: Vec<&(u32, Vec<[Key; 4]>)> = signatures.iter().collect();
            distinct.sort();
            distinct.dedup();
            let ids: BTreeMap<&(u32, Vec<[Key; 4]>), u32> =
                distinct.into_iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
            for (node, sig) in signatures.iter().enumerate() {
                colors[node] = ids[sig];
            }
            let next = count_classes(colors);
            if next == classes {
                return;
            }
            classes = next;
        }
    }
}

fn count_classes(colors: &[u32]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

/// Structural color per blank node of a single dataset. Nodes that end up
/// with equal colors are indistinguishable by refinement.
pub(crate) fn blank_node_colors(ds: &RdfDataset) -> BTreeMap<BlankNode, u32> {
    let (enc, nodes) = encode(&[ds]);
    let mut colors = vec![0u32; enc.occurrences.len()];
    enc.refine(&mut colors);
    nodes[0].iter().cloned().zip(colors).collect()
}

/// True iff some bijection between blank nodes makes the quad sets equal.
pub fn dataset_isomorphic(a: &RdfDataset, b: &RdfDataset) -> Result<bool, ComplexityLimitError> {
    dataset_isomorphic_with_limit(a, b, DEFAULT_BLANK_NODE_LIMIT)
}

pub fn dataset_isomorphic_with_limit(
    a: &RdfDataset,
    b: &RdfDataset,
    limit: usize,
) -> Result<bool, ComplexityLimitError> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let ground_a: Vec<&Quad> = a.iter().filter(|q| !q.has_blank_nodes()).collect();
    let ground_b: Vec<&Quad> = b.iter().filter(|q| !q.has_blank_nodes()).collect();
    if ground_a != ground_b {
        return Ok(false);
    }
    let (enc, nodes) = encode(&[a, b]);
    let na = nodes[0].len();
    let nb = nodes[1].len();
    if na != nb {
        return Ok(false);
    }
    if na == 0 {
        return Ok(true);
    }
    let search = Search { enc: &enc, na, quads_a: a.len(), limit };
    let colors = vec![0u32; na + nb];
    search.run(colors)
}

struct Search<'a> {
    enc: &'a Encoded,
    na: usize,
    quads_a: usize,
    limit: usize,
}

impl Search<'_> {
    fn run(&self, mut colors: Vec<u32>) -> Result<bool, ComplexityLimitError> {
        self.enc.refine(&mut colors);
        let mut cells: BTreeMap<u32, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (node, &c) in colors.iter().enumerate() {
            let cell = cells.entry(c).or_default();
            if node < self.na {
                cell.0.push(node);
            } else {
                cell.1.push(node);
            }
        }
        if cells.values().any(|(xa, xb)| xa.len() != xb.len()) {
            return Ok(false);
        }
        let ambiguous = cells
            .iter()
            .filter(|(_, (xa, _))| xa.len() > 1)
            .min_by_key(|(c, (xa, _))| (xa.len(), **c));
        let Some((_, (xa, xb))) = ambiguous else {
            let mapping: HashMap<usize, usize> =
                cells.values().map(|(xa, xb)| (xa[0], xb[0])).collect();
            return Ok(self.verify(&mapping));
        };
        if self.na > self.limit {
            return Err(ComplexityLimitError { blank_nodes: self.na, limit: self.limit });
        }
        let fresh = colors.iter().max().copied().unwrap_or(0) + 1;
        let pick = xa[0];
        for &candidate in xb {
            let mut next = colors.clone();
            next[pick] = fresh;
            next[candidate] = fresh;
            if self.run(next)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn verify(&self, mapping: &HashMap<usize, usize>) -> bool {
        let map_slot = |s: Slot| match s {
            Slot::Blank(b) => Slot::Blank(mapping[&b]),
            g => g,
        };
        let mapped: BTreeSet<[Slot; 4]> =
            self.enc.quads[..self.quads_a].iter().map(|q| q.map(map_slot)).collect();
        let target: BTreeSet<[Slot; 4]> = self.enc.quads[self.quads_a..].iter().copied().collect();
        mapped == target
    }
}

/// Relabels blank nodes to `b0, b1, ...` in order of first appearance when
/// quads are sorted canonically with blank nodes ranked by structural color.
pub fn canonical_relabel(ds: &RdfDataset) -> RdfDataset {
    let colors = blank_node_colors(ds);
    if colors.is_empty() {
        return ds.clone();
    }
    // Ties are broken by the original label, which keeps the output a pure
    // function of the input dataset.
    let mut ranked: Vec<(&u32, &BlankNode)> = colors.iter().map(|(b, c)| (c, b)).collect();
    ranked.sort();
    let width = ranked.len().to_string().len();
    let provisional: HashMap<BlankNode, BlankNode> = ranked
        .iter()
        .enumerate()
        .map(|(i, (_, b))| ((*b).clone(), BlankNode::new(format!("c{i:0width$}"))))
        .collect();
    let staged = ds.relabel_blank_nodes(|b| provisional[b].clone());
    let mut final_labels: HashMap<BlankNode, BlankNode> = HashMap::new();
    for q in staged.iter() {
        for b in slot_blanks(q).into_iter().flatten() {
            let n = final_labels.len();
            final_labels.entry(b.clone()).or_insert_with(|| BlankNode::new(format!("b{n}")));
        }
    }
    staged.relabel_blank_nodes(|b| final_labels[b].clone())
}
