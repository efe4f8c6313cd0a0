use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::term::{BlankNode, GraphName, Iri, Literal, Quad, Subject, Term};
use super::vocab::rdf;

/// A set of quads. Prefixes are a serialization hint and never take part in
/// equality.
#[derive(Clone, Debug, Default)]
pub struct RdfDataset {
    quads: BTreeSet<Quad>,
    prefixes: BTreeMap<String, Iri>,
}

impl PartialEq for RdfDataset {
    fn eq(&self, other: &Self) -> bool {
        self.quads == other.quads
    }
}

impl Eq for RdfDataset {}

impl FromIterator<Quad> for RdfDataset {
    fn from_iter<I: IntoIterator<Item = Quad>>(iter: I) -> Self {
        RdfDataset { quads: iter.into_iter().collect(), prefixes: BTreeMap::new() }
    }
}

impl Extend<Quad> for RdfDataset {
    fn extend<I: IntoIterator<Item = Quad>>(&mut self, iter: I) {
        self.quads.extend(iter);
    }
}

impl<'a> IntoIterator for &'a RdfDataset {
    type Item = &'a Quad;
    type IntoIter = std::collections::btree_set::Iter<'a, Quad>;

    fn into_iter(self) -> Self::IntoIter {
        self.quads.iter()
    }
}

impl RdfDataset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns true if the quad was not already present.
    pub fn insert(&mut self, quad: Quad) -> bool {
        self.quads.insert(quad)
    }

    pub fn remove(&mut self, quad: &Quad) -> bool {
        self.quads.remove(quad)
    }

    pub fn contains(&self, quad: &Quad) -> bool {
        self.quads.contains(quad)
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    /// Quads in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Quad> {
        self.quads.iter()
    }

    pub fn retain(&mut self, f: impl FnMut(&Quad) -> bool) {
        self.quads.retain(f);
    }

    pub fn prefixes(&self) -> &BTreeMap<String, Iri> {
        &self.prefixes
    }

    pub fn set_prefix(&mut self, prefix: impl Into<String>, namespace: Iri) {
        self.prefixes.insert(prefix.into(), namespace);
    }

    pub fn with_prefixes(mut self, prefixes: &BTreeMap<String, Iri>) -> Self {
        for (p, ns) in prefixes {
            self.prefixes.entry(p.clone()).or_insert_with(|| ns.clone());
        }
        self
    }

    pub fn graph_names(&self) -> BTreeSet<GraphName> {
        self.quads.iter().map(|q| q.graph.clone()).collect()
    }

    pub fn has_named_graphs(&self) -> bool {
        self.quads.iter().any(|q| q.graph != GraphName::Default)
    }

    /// The triples of one graph, moved into the default graph.
    pub fn graph(&self, name: &GraphName) -> RdfDataset {
        let quads = self
            .quads
            .iter()
            .filter(|q| &q.graph == name)
            .map(|q| q.clone().in_graph(GraphName::Default))
            .collect();
        RdfDataset { quads, prefixes: self.prefixes.clone() }
    }

    /// Every quad moved into `graph`.
    pub fn into_graph(self, graph: &GraphName) -> RdfDataset {
        let quads = self.quads.into_iter().map(|q| q.in_graph(graph.clone())).collect();
        RdfDataset { quads, prefixes: self.prefixes }
    }

    pub fn blank_nodes(&self) -> BTreeSet<BlankNode> {
        let mut out = BTreeSet::new();
        for q in &self.quads {
            if let Subject::Blank(b) = &q.subject {
                out.insert(b.clone());
            }
            if let Term::Blank(b) = &q.object {
                out.insert(b.clone());
            }
            if let GraphName::Blank(b) = &q.graph {
                out.insert(b.clone());
            }
        }
        out
    }

    /// Applies `map` to every blank node label.
    pub fn relabel_blank_nodes(&self, mut map: impl FnMut(&BlankNode) -> BlankNode) -> RdfDataset {
        let mut cache: HashMap<BlankNode, BlankNode> = HashMap::new();
        let mut get = |b: &BlankNode| cache.entry(b.clone()).or_insert_with(|| map(b)).clone();
        let quads = self
            .quads
            .iter()
            .map(|q| Quad {
                subject: match &q.subject {
                    Subject::Blank(b) => Subject::Blank(get(b)),
                    s => s.clone(),
                },
                predicate: q.predicate.clone(),
                object: match &q.object {
                    Term::Blank(b) => Term::Blank(get(b)),
                    o => o.clone(),
                },
                graph: match &q.graph {
                    GraphName::Blank(b) => GraphName::Blank(get(b)),
                    g => g.clone(),
                },
            })
            .collect();
        RdfDataset { quads, prefixes: self.prefixes.clone() }
    }

    /// Adds `other`'s quads, renaming its blank nodes so they cannot collide
    /// with blank nodes already present.
    pub fn merge_disjoint(&mut self, other: &RdfDataset) {
        let existing: BTreeSet<String> =
            self.blank_nodes().into_iter().map(|b| b.label().to_owned()).collect();
        let mut counter = 0usize;
        let renamed = other.relabel_blank_nodes(|_| loop {
            let label = format!("m{counter}");
            counter += 1;
            if !existing.contains(&label) {
                return BlankNode::new(label);
            }
        });
        self.quads.extend(renamed.quads);
        for (p, ns) in &other.prefixes {
            self.prefixes.entry(p.clone()).or_insert_with(|| ns.clone());
        }
    }

    pub fn objects<'a>(
        &'a self,
        subject: &'a Subject,
        predicate: &'a Iri,
    ) -> impl Iterator<Item = &'a Term> + 'a {
        self.quads
            .iter()
            .filter(move |q| &q.subject == subject && &q.predicate == predicate)
            .map(|q| &q.object)
    }

    pub fn subjects_with<'a>(
        &'a self,
        predicate: &'a Iri,
        object: &'a Term,
    ) -> impl Iterator<Item = &'a Subject> + 'a {
        self.quads
            .iter()
            .filter(move |q| &q.predicate == predicate && &q.object == object)
            .map(|q| &q.subject)
    }

    /// Subjects typed with `class` in any graph.
    pub fn instances_of(&self, class: &Iri) -> BTreeSet<Subject> {
        let type_ = rdf::type_();
        let class = Term::Iri(class.clone());
        self.subjects_with(&type_, &class).cloned().collect()
    }

    /// Reads an RDF collection starting at `head`. Returns `None` when the
    /// list is malformed (missing first/rest, branching, or cyclic).
    pub fn read_list(&self, head: &Term) -> Option<Vec<Term>> {
        let nil = Term::Iri(rdf::nil());
        let first = rdf::first();
        let rest = rdf::rest();
        let mut items = Vec::new();
        let mut seen = BTreeSet::new();
        let mut node = head.clone();
        while node != nil {
            let subject = node.to_subject()?;
            if !seen.insert(subject.clone()) {
                return None;
            }
            let mut firsts = self.objects(&subject, &first);
            let item = firsts.next()?.clone();
            if firsts.next().is_some() {
                return None;
            }
            let mut rests = self.objects(&subject, &rest);
            let next = rests.next()?.clone();
            if rests.next().is_some() {
                return None;
            }
            items.push(item);
            node = next;
        }
        Some(items)
    }

    /// Statements whose subject is `root`, plus the closure over blank node
    /// objects (a concise bounded description).
    pub fn describe(&self, root: &Subject) -> RdfDataset {
        let mut out = RdfDataset { quads: BTreeSet::new(), prefixes: self.prefixes.clone() };
        let mut queue = vec![root.clone()];
        let mut visited = BTreeSet::new();
        while let Some(s) = queue.pop() {
            if !visited.insert(s.clone()) {
                continue;
            }
            for q in self.quads.iter().filter(|q| q.subject == s) {
                out.quads.insert(q.clone());
                if let Term::Blank(b) = &q.object {
                    queue.push(Subject::Blank(b.clone()));
                }
            }
        }
        out
    }
}

/// Appends an RDF collection of `items` to `out` and returns its head.
pub fn write_list(
    out: &mut RdfDataset,
    items: Vec<Term>,
    mut fresh: impl FnMut() -> BlankNode,
) -> Term {
    let mut head = Term::Iri(rdf::nil());
    for item in items.into_iter().rev() {
        let node = fresh();
        out.insert(Quad::triple(node.clone(), rdf::first(), item));
        out.insert(Quad::triple(node.clone(), rdf::rest(), head));
        head = Term::Blank(node);
    }
    head
}

/// Integer value of a literal with an integer-derived datatype.
pub fn literal_as_integer(literal: &Literal) -> Option<i128> {
    if !super::vocab::xsd::INTEGER_TYPES.contains(&literal.datatype().as_str()) {
        return None;
    }
    let lex = literal.lexical().trim();
    let lex = lex.strip_prefix('+').unwrap_or(lex);
    lex.parse::<i128>().ok()
}
