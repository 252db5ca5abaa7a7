//! Generation of new blanks and variables.

use std::collections::BTreeSet;

use crate::graph::Graph;
use crate::morphism::{AttrMap, FixedSet, Morphism};
use crate::term::Term;

pub const DEFAULT_PREFIX: &str = "g";

/// Source of new attribute names `<prefix>N` from a monotone counter.
///
/// A generator belongs to one evaluation. Names it has issued are never
/// issued again, and names in the reserved set or in a caller's avoid set
/// are skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreshNames {
    prefix: String,
    next: u64,
    reserved: BTreeSet<Term>,
}

impl Default for FreshNames {
    fn default() -> Self {
        FreshNames::with_prefix(DEFAULT_PREFIX)
    }
}

impl FreshNames {
    pub fn new() -> Self {
        FreshNames::default()
    }

    pub fn with_prefix(prefix: impl Into<String>) -> Self {
        FreshNames {
            prefix: prefix.into(),
            next: 0,
            reserved: BTreeSet::new(),
        }
    }

    pub fn prefix(&self) -> &str {
        &self.prefix
    }

    /// Number of names issued or skipped so far.
    pub fn counter(&self) -> u64 {
        self.next
    }

    /// Adds terms that must never be issued by this generator.
    pub fn reserve(&mut self, terms: impl IntoIterator<Item = Term>) {
        self.reserved.extend(terms);
    }

    fn issue(&mut self, make: impl Fn(String) -> Term, avoid: &BTreeSet<Term>) -> Term {
        loop {
            let candidate = make(format!("{}{}", self.prefix, self.next));
            self.next += 1;
            if !avoid.contains(&candidate) && !self.reserved.contains(&candidate) {
                return candidate;
            }
        }
    }

    pub fn blank(&mut self, avoid: &BTreeSet<Term>) -> Term {
        self.issue(Term::Blank, avoid)
    }

    pub fn variable(&mut self, avoid: &BTreeSet<Term>) -> Term {
        self.issue(Term::Variable, avoid)
    }

    /// A new term of the same kind as `term`, which must be a blank or a
    /// variable.
    pub fn like(&mut self, term: &Term, avoid: &BTreeSet<Term>) -> Term {
        match term {
            Term::Variable(_) => self.variable(avoid),
            Term::Blank(_) => self.blank(avoid),
            other => panic!("cannot rename resource identifier {other}"),
        }
    }

    /// Maps each term of `terms` (in iteration order) to a new term of the
    /// same kind.
    pub fn rename_all<'a>(
        &mut self,
        terms: impl IntoIterator<Item = &'a Term>,
        avoid: &BTreeSet<Term>,
    ) -> AttrMap {
        terms
            .into_iter()
            .map(|t| (t.clone(), self.like(t, avoid)))
            .collect()
    }
}

/// Extends a partial renaming by the identity on the rest of `|g|`.
pub(crate) fn total_on(g: &Graph, partial: &AttrMap) -> AttrMap {
    g.attribute_set()
        .into_iter()
        .map(|x| {
            let y = partial.get(&x).cloned().unwrap_or_else(|| x.clone());
            (x, y)
        })
        .collect()
}

/// Applies an injective renaming and returns the renamed graph with the
/// witnessing isomorphism.
pub(crate) fn rename(g: &Graph, partial: &AttrMap, fixed: FixedSet) -> (Graph, Morphism) {
    let map = total_on(g, partial);
    let renamed: Graph = g.iter().map(|t| t.map(|x| map[x].clone())).collect();
    let witness = Morphism::from_parts(g.clone(), renamed.clone(), map, fixed);
    (renamed, witness)
}

/// Replaces every blank of `g` by a new blank outside `reserved` and `|g|`.
/// The witness is an isomorphism fixing `I ∪ V`.
pub fn fresh_blank_rename(
    g: &Graph,
    reserved: &BTreeSet<Term>,
    fresh: &mut FreshNames,
) -> (Graph, Morphism) {
    let mut avoid = g.attribute_set();
    avoid.extend(reserved.iter().cloned());
    let blanks = g.blanks();
    let renaming = fresh.rename_all(&blanks, &avoid);
    rename(g, &renaming, FixedSet::IV)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Triple;

    fn fn_iri() -> Term {
        Term::iri("http://www.w3.org/2001/vcard-rdf/3.0#FN")
    }

    #[test]
    fn skips_reserved_and_avoided_names() {
        let mut fresh = FreshNames::default();
        fresh.reserve([Term::blank("g0")]);
        let avoid = [Term::blank("g1")].into_iter().collect();
        assert_eq!(fresh.blank(&avoid), Term::blank("g2"));
        assert_eq!(fresh.variable(&avoid), Term::var("g3"));
    }

    #[test]
    fn blank_free_graph_is_unchanged() {
        let g = Graph::from_triples([Triple::new(Term::iri("a"), Term::iri("p"), Term::var("x"))]);
        let (h, w) = fresh_blank_rename(&g, &BTreeSet::new(), &mut FreshNames::default());
        assert_eq!(h, g);
        assert_eq!(w, Morphism::identity(g, FixedSet::IV));
    }

    #[test]
    fn renames_reserved_blank() {
        let name = Term::iri("http://xmlns.com/foaf/0.1/name");
        let g = Graph::from_triples([Triple::new(
            Term::blank("x"),
            name.clone(),
            Term::var("name"),
        )]);
        let reserved = [Term::blank("x")].into_iter().collect();
        let (h, w) = fresh_blank_rename(&g, &reserved, &mut FreshNames::default());
        let y = Term::blank("g0");
        assert_eq!(
            h,
            Graph::from_triples([Triple::new(y.clone(), name, Term::var("name"))])
        );
        assert_eq!(w.apply(&Term::blank("x")), y);
        assert!(w.is_isomorphism());
    }

    #[test]
    fn repeated_renaming_gives_disjoint_blanks() {
        let g = Graph::from_triples([Triple::new(Term::blank("c"), fn_iri(), Term::var("name"))]);
        let mut fresh = FreshNames::default();
        let mut reserved: BTreeSet<Term> = g.blanks();
        let (h1, _) = fresh_blank_rename(&g, &reserved, &mut fresh);
        reserved.extend(h1.blanks());
        let (h2, _) = fresh_blank_rename(&g, &reserved, &mut fresh);
        assert!(h1.blanks().is_disjoint(&h2.blanks()));
        assert!(h1.blanks().is_disjoint(&g.blanks()));
        assert!(h2.blanks().is_disjoint(&g.blanks()));
    }
}
