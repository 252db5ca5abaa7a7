use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::term::{Term, TermClass, Triple};

/// A finite set of triples.
///
/// Graphs are immutable values; cloning shares the underlying triple set.
/// Iteration follows the canonical triple order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    triples: Arc<BTreeSet<Triple>>,
}

/// The attributes of a graph, split into identifiers, blanks and variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Attributes {
    pub all: BTreeSet<Term>,
    pub identifiers: BTreeSet<Term>,
    pub blanks: BTreeSet<Term>,
    pub variables: BTreeSet<Term>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn from_triples(triples: impl IntoIterator<Item = Triple>) -> Self {
        Graph {
            triples: Arc::new(triples.into_iter().collect()),
        }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> std::collections::btree_set::Iter<'_, Triple> {
        self.triples.iter()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.triples.is_subset(&other.triples)
    }

    pub fn union(&self, other: &Graph) -> Graph {
        if other.is_empty() {
            return self.clone();
        }
        Graph::from_triples(self.iter().chain(other.iter()).cloned())
    }

    pub fn difference(&self, other: &Graph) -> Graph {
        Graph::from_triples(self.triples.difference(&other.triples).cloned())
    }

    pub fn filter(&self, mut keep: impl FnMut(&Triple) -> bool) -> Graph {
        Graph::from_triples(self.iter().filter(|t| keep(t)).cloned())
    }

    /// The set |G| of attributes, in canonical order.
    pub fn attribute_set(&self) -> BTreeSet<Term> {
        self.iter()
            .flat_map(|t| t.terms().into_iter().cloned())
            .collect()
    }

    pub fn attributes(&self) -> Attributes {
        let mut attrs = Attributes::default();
        for term in self.attribute_set() {
            match term.class() {
                TermClass::Identifier => attrs.identifiers.insert(term.clone()),
                TermClass::Blank => attrs.blanks.insert(term.clone()),
                TermClass::Variable => attrs.variables.insert(term.clone()),
            };
            attrs.all.insert(term);
        }
        attrs
    }

    pub fn blanks(&self) -> BTreeSet<Term> {
        self.attributes_where(Term::is_blank)
    }

    pub fn variables(&self) -> BTreeSet<Term> {
        self.attributes_where(Term::is_variable)
    }

    fn attributes_where(&self, pred: impl Fn(&Term) -> bool) -> BTreeSet<Term> {
        self.iter()
            .flat_map(|t| t.terms().into_iter())
            .filter(|t| pred(t))
            .cloned()
            .collect()
    }

    /// A data graph has no variables.
    pub fn is_data_graph(&self) -> bool {
        self.iter()
            .all(|t| t.terms().iter().all(|term| !term.is_variable()))
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph::from_triples(iter)
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = std::collections::btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|t| t.to_string()))
            .finish()
    }
}

/// One triple per line, in canonical order, with the original blank labels.
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.iter() {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}
