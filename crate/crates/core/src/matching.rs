//! Enumeration of matches from a query graph into a data graph.

use std::collections::{BTreeSet, HashMap};

use crate::error::MorphismError;
use crate::graph::Graph;
use crate::morphism::{AttrMap, FixedSet, Morphism};
use crate::term::{Term, Triple};

/// A morphism from a query graph to a data graph fixing `I`: every IRI and
/// literal is sent to itself, every blank and variable to some attribute of
/// the data graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match(Morphism);

impl Match {
    pub fn new(query: Graph, data: Graph, map: AttrMap) -> Result<Self, MorphismError> {
        Morphism::new(query, data, map, FixedSet::I).map(Match)
    }

    pub fn from_morphism(m: Morphism) -> Result<Self, MorphismError> {
        if *m.fixed() != FixedSet::I {
            return Match::new(m.source().clone(), m.target().clone(), m.map().clone());
        }
        Ok(Match(m))
    }

    pub fn morphism(&self) -> &Morphism {
        &self.0
    }

    pub fn into_morphism(self) -> Morphism {
        self.0
    }

    pub fn query(&self) -> &Graph {
        self.0.source()
    }

    pub fn data(&self) -> &Graph {
        self.0.target()
    }

    pub fn apply(&self, term: &Term) -> Term {
        self.0.apply(term)
    }

    /// The assignment of blanks and variables, in canonical order.
    pub fn assignment(&self) -> impl Iterator<Item = (&Term, &Term)> {
        self.0.map().iter().filter(|(k, _)| !k.is_identifier())
    }

    /// The subgraph of the data graph covered by this match.
    pub fn image(&self) -> Graph {
        self.0.image()
    }

    /// The same match with its target cut down to its image.
    pub fn onto_image(&self) -> Match {
        Match(
            self.0
                .with_target(self.image())
                .expect("a match lands in its own image"),
        )
    }
}

/// The subgraph of `G` covered by `m`.
pub fn match_image(m: &Match) -> Graph {
    m.image()
}

struct Index<'a> {
    all: Vec<&'a Triple>,
    by_position: [HashMap<&'a Term, Vec<&'a Triple>>; 3],
}

impl<'a> Index<'a> {
    fn new(g: &'a Graph) -> Self {
        let mut by_position: [HashMap<&Term, Vec<&Triple>>; 3] = Default::default();
        for t in g {
            for (pos, x) in t.terms().into_iter().enumerate() {
                by_position[pos].entry(x).or_default().push(t);
            }
        }
        Index {
            all: g.iter().collect(),
            by_position,
        }
    }

    /// Smallest candidate list given the already-known positions.
    fn candidates(&self, known: &[Option<&Term>; 3]) -> &[&'a Triple] {
        let mut best: &[&Triple] = &self.all;
        for (pos, value) in known.iter().enumerate() {
            if let Some(v) = value {
                match self.by_position[pos].get(*v) {
                    Some(list) if list.len() < best.len() => best = list,
                    Some(_) => {}
                    None => return &[],
                }
            }
        }
        best
    }
}

struct Search<'a, 'g> {
    patterns: Vec<&'a Triple>,
    free: &'a BTreeSet<Term>,
    index: Index<'g>,
    binding: HashMap<&'a Term, &'g Term>,
    found: Vec<Vec<Term>>,
}

impl<'a, 'g> Search<'a, 'g> {
    fn resolve(&self, x: &'a Term) -> Option<&Term> {
        if self.free.contains(x) {
            self.binding.get(x).copied()
        } else {
            Some(x)
        }
    }

    fn run(&mut self, depth: usize) {
        if depth == self.patterns.len() {
            let row = self.free.iter().map(|x| self.binding[x].clone()).collect();
            self.found.push(row);
            return;
        }
        let pattern = self.patterns[depth];
        let positions = pattern.terms();
        let known = positions.map(|x| self.resolve(x));
        let candidates: Vec<&'g Triple> = self.index.candidates(&known).to_vec();
        for candidate in candidates {
            let mut bound_here: Vec<&'a Term> = Vec::new();
            let mut ok = true;
            for (x, value) in positions.into_iter().zip(candidate.terms()) {
                match self.resolve(x) {
                    Some(expected) if expected == value => {}
                    Some(_) => {
                        ok = false;
                        break;
                    }
                    None => {
                        self.binding.insert(x, value);
                        bound_here.push(x);
                    }
                }
            }
            if ok {
                self.run(depth + 1);
            }
            for x in bound_here {
                self.binding.remove(x);
            }
        }
    }
}

fn candidate_count(pattern: &Triple, free: &BTreeSet<Term>, index: &Index<'_>) -> usize {
    let known = pattern.terms().map(|x| (!free.contains(x)).then_some(x));
    index.candidates(&known).len()
}

/// Enumerates `Match(L, G)`.
///
/// Each match appears once. Matches are ordered lexicographically by their
/// assignment vectors (values of the blanks and variables of `L`, taken in
/// canonical order). An empty `L` has exactly one match, the empty one.
pub fn enumerate_matches(l: &Graph, g: &Graph) -> Vec<Match> {
    let free: BTreeSet<Term> = l
        .attribute_set()
        .into_iter()
        .filter(|t| !t.is_identifier())
        .collect();
    let index = Index::new(g);
    let mut patterns: Vec<&Triple> = l.iter().collect();
    patterns.sort_by_cached_key(|t| candidate_count(t, &free, &index));
    let mut search = Search {
        patterns,
        free: &free,
        index,
        binding: HashMap::new(),
        found: Vec::new(),
    };
    search.run(0);
    let mut rows = search.found;
    rows.sort();
    rows.dedup();

    let fixed_part: AttrMap = l
        .attribute_set()
        .into_iter()
        .filter(Term::is_identifier)
        .map(|t| (t.clone(), t))
        .collect();
    rows.into_iter()
        .map(|row| {
            let mut map = fixed_part.clone();
            map.extend(free.iter().cloned().zip(row));
            Match(Morphism::from_parts(l.clone(), g.clone(), map, FixedSet::I))
        })
        .collect()
}
