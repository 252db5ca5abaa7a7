//! Canonical blank labels: isomorphic graphs (fixing identifiers and
//! variables) receive the same labelled listing.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::Graph;
use crate::term::{Term, Triple};

/// A term with its blank replaced by a number. Orders like [`Term`]:
/// identifiers, then blanks, then variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Key<'a> {
    Id(&'a Term),
    Blank(usize),
    Var(&'a Term),
}

type Row<'a> = [Key<'a>; 3];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Slot<'a> {
    Own,
    Fixed(&'a Term),
    Free(usize),
}

struct Component<'a> {
    blanks: Vec<&'a Term>,
    index: BTreeMap<&'a Term, usize>,
    triples: Vec<&'a Triple>,
}

impl<'a> Component<'a> {
    fn key(&self, t: &'a Term, labels: &[usize]) -> Key<'a> {
        match self.index.get(t) {
            Some(&i) => Key::Blank(labels[i]),
            None if t.is_variable() => Key::Var(t),
            None => Key::Id(t),
        }
    }

    fn listing(&self, labels: &[usize]) -> Vec<Row<'a>> {
        let mut rows: Vec<Row<'a>> = self
            .triples
            .iter()
            .map(|t| t.terms().map(|x| self.key(x, labels)))
            .collect();
        rows.sort();
        rows
    }

    /// Iterated colour refinement until the partition stops splitting.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut incident: Vec<Vec<&'a Triple>> = vec![Vec::new(); self.blanks.len()];
        for t in &self.triples {
            let mut seen = BTreeSet::new();
            for x in t.terms() {
                if let Some(&i) = self.index.get(x) {
                    if seen.insert(i) {
                        incident[i].push(t);
                    }
                }
            }
        }
        let mut classes = colors.iter().collect::<BTreeSet<_>>().len();
        loop {
            let signatures: Vec<(usize, Vec<[Slot<'a>; 3]>)> = (0..self.blanks.len())
                .map(|i| {
                    let mut sig: Vec<[Slot<'a>; 3]> = incident[i]
                        .iter()
                        .map(|t| {
                            t.terms().map(|x| match self.index.get(x) {
                                Some(&j) if j == i => Slot::Own,
                                Some(&j) => Slot::Free(colors[j]),
                                None => Slot::Fixed(x),
                            })
                        })
                        .collect();
                    sig.sort();
                    (colors[i], sig)
                })
                .collect();
            let ranks: BTreeSet<&(usize, Vec<[Slot<'a>; 3]>)> = signatures.iter().collect();
            let ranks: BTreeMap<_, usize> =
                ranks.into_iter().enumerate().map(|(r, s)| (s, r)).collect();
            colors = signatures.iter().map(|s| ranks[s]).collect();
            let now = ranks.len();
            if now == classes {
                return colors;
            }
            classes = now;
        }
    }

    /// Individualization and refinement; keeps the least listing.
    fn search(&self, colors: Vec<usize>, best: &mut Option<(Vec<Row<'a>>, Vec<usize>)>) {
        let colors = self.refine(colors);
        let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &c) in colors.iter().enumerate() {
            cells.entry(c).or_default().push(i);
        }
        match cells.values().find(|cell| cell.len() > 1) {
            None => {
                let listing = self.listing(&colors);
                if best.as_ref().is_none_or(|(b, _)| listing < *b) {
                    *best = Some((listing, colors));
                }
            }
            Some(cell) => {
                for &v in cell {
                    let split = colors
                        .iter()
                        .enumerate()
                        .map(|(i, &c)| if i == v { 2 * c } else { 2 * c + 1 })
                        .collect();
                    self.search(split, best);
                }
            }
        }
    }
}

fn sort_key<'t>(x: &'t Term, labels: &BTreeMap<&Term, usize>) -> (u8, Option<&'t Term>, usize) {
    match labels.get(x) {
        Some(&n) => (1, None, n),
        None if x.is_variable() => (2, Some(x), 0),
        None => (0, Some(x), 0),
    }
}

/// Assigns each blank of `g` a number `0, 1, …` such that relabelling blanks
/// by their numbers sends isomorphic graphs to the same listing, and blank
/// numbers follow the first appearance in that sorted listing.
pub fn canonical_blank_labels(g: &Graph) -> BTreeMap<Term, usize> {
    let blanks: Vec<&Term> = g
        .iter()
        .flat_map(|t| t.terms())
        .filter(|x| x.is_blank())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let position: BTreeMap<&Term, usize> =
        blanks.iter().enumerate().map(|(i, b)| (*b, i)).collect();

    let mut parent: Vec<usize> = (0..blanks.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for t in g {
        let ids: Vec<usize> = t
            .terms()
            .iter()
            .filter_map(|x| position.get(*x).copied())
            .collect();
        for w in ids.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: BTreeMap<usize, Vec<&Term>> = BTreeMap::new();
    for (i, b) in blanks.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(b);
    }
    let mut triples_of: BTreeMap<usize, Vec<&Triple>> = BTreeMap::new();
    for t in g {
        if let Some(i) = t.terms().iter().find_map(|x| position.get(*x).copied()) {
            let root = find(&mut parent, i);
            triples_of.entry(root).or_default().push(t);
        }
    }

    let mut canon: Vec<(Vec<Row>, Vec<&Term>)> = Vec::new();
    for (root, members) in groups {
        let component = Component {
            index: members.iter().enumerate().map(|(i, b)| (*b, i)).collect(),
            blanks: members,
            triples: triples_of.remove(&root).unwrap_or_default(),
        };
        let mut best = None;
        component.search(vec![0; component.blanks.len()], &mut best);
        let (listing, colors) = best.expect("search visits at least one leaf");
        let mut ordered = vec![component.blanks[0]; component.blanks.len()];
        for (i, &c) in colors.iter().enumerate() {
            ordered[c] = component.blanks[i];
        }
        canon.push((listing, ordered));
    }
    canon.sort_by(|a, b| a.0.cmp(&b.0));

    let mut provisional: BTreeMap<&Term, usize> = BTreeMap::new();
    for (_, ordered) in &canon {
        for b in ordered {
            let n = provisional.len();
            provisional.insert(b, n);
        }
    }
    let mut rows: Vec<_> = g
        .iter()
        .map(|t| (t.terms().map(|x| sort_key(x, &provisional)), t))
        .collect();
    rows.sort();

    let mut labels = BTreeMap::new();
    for (_, t) in rows {
        for x in t.terms() {
            if x.is_blank() && !labels.contains_key(x) {
                let n = labels.len();
                labels.insert(x.clone(), n);
            }
        }
    }
    labels
}

#[cfg(test)]
mod tests {
    use super::*;

    fn listing(g: &Graph) -> Vec<Triple> {
        let labels = canonical_blank_labels(g);
        let mut out: Vec<Triple> = g
            .iter()
            .map(|t| {
                t.map(|x| match labels.get(x) {
                    Some(n) => Term::blank(format!("b{n}")),
                    None => x.clone(),
                })
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn renamed_graphs_agree() {
        let p = Term::iri("p");
        let g1 = Graph::from_triples([
            Triple::new(Term::blank("x"), p.clone(), Term::blank("y")),
            Triple::new(Term::blank("y"), p.clone(), Term::iri("a")),
        ]);
        let g2 = Graph::from_triples([
            Triple::new(Term::blank("q"), p.clone(), Term::blank("a")),
            Triple::new(Term::blank("a"), p.clone(), Term::iri("a")),
        ]);
        assert_eq!(listing(&g1), listing(&g2));
    }

    #[test]
    fn symmetric_cycle() {
        let p = Term::iri("p");
        let cycle = |names: [&str; 3]| {
            Graph::from_triples((0..3).map(|i| {
                Triple::new(
                    Term::blank(names[i]),
                    p.clone(),
                    Term::blank(names[(i + 1) % 3]),
                )
            }))
        };
        assert_eq!(
            listing(&cycle(["a", "b", "c"])),
            listing(&cycle(["z", "c", "m"]))
        );
    }

    #[test]
    fn labels_are_dense() {
        let p = Term::iri("p");
        let g = Graph::from_triples([
            Triple::new(Term::blank("u"), p.clone(), Term::iri("x")),
            Triple::new(Term::blank("v"), p.clone(), Term::iri("y")),
            Triple::new(Term::blank("w"), p.clone(), Term::iri("y")),
        ]);
        let labels = canonical_blank_labels(&g);
        let mut values: Vec<usize> = labels.values().copied().collect();
        values.sort();
        assert_eq!(values, vec![0, 1, 2]);
        assert_eq!(labels[&Term::blank("u")], 0);
    }
}
