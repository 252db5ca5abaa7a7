//! Morphisms of graphs fixing a set of attributes.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::MorphismError;
use crate::graph::Graph;
use crate::term::{Term, TermClass};

/// A finite map on attributes.
pub type AttrMap = BTreeMap<Term, Term>;

/// A set `C` of attributes that morphisms must leave unchanged.
///
/// Every fixed set contains all resource identifiers. On top of that it may
/// contain all blanks, all variables, and any finite set of extra blanks
/// (the latter gives `I ∪ |G|_B`).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FixedSet {
    fixes_all_blanks: bool,
    fixes_all_variables: bool,
    extra_blanks: BTreeSet<Term>,
}

impl FixedSet {
    pub const I: FixedSet = FixedSet::new(false, false);
    pub const IB: FixedSet = FixedSet::new(true, false);
    pub const IV: FixedSet = FixedSet::new(false, true);
    pub const IBV: FixedSet = FixedSet::new(true, true);

    const fn new(fixes_all_blanks: bool, fixes_all_variables: bool) -> Self {
        FixedSet {
            fixes_all_blanks,
            fixes_all_variables,
            extra_blanks: BTreeSet::new(),
        }
    }

    /// `I` together with the given blanks. Non-blank terms are ignored.
    pub fn identifiers_and(blanks: impl IntoIterator<Item = Term>) -> Self {
        FixedSet {
            extra_blanks: blanks.into_iter().filter(Term::is_blank).collect(),
            ..FixedSet::I
        }
    }

    pub fn fixes_identifiers(&self) -> bool {
        true
    }

    pub fn fixes_all_blanks(&self) -> bool {
        self.fixes_all_blanks
    }

    pub fn fixes_all_variables(&self) -> bool {
        self.fixes_all_variables
    }

    pub fn extra_blanks(&self) -> &BTreeSet<Term> {
        &self.extra_blanks
    }

    pub fn contains(&self, term: &Term) -> bool {
        match term.class() {
            TermClass::Identifier => true,
            TermClass::Blank => self.fixes_all_blanks || self.extra_blanks.contains(term),
            TermClass::Variable => self.fixes_all_variables,
        }
    }
}

/// Applies `map` triple-wise to `source`, failing if some attribute of
/// `source` has no image.
pub fn apply_morphism(map: &AttrMap, source: &Graph) -> Result<Graph, MorphismError> {
    source
        .iter()
        .map(|t| {
            t.try_map(|x| {
                map.get(x)
                    .cloned()
                    .ok_or_else(|| MorphismError::Totality(x.clone()))
            })
        })
        .collect()
}

/// Checks that `map` is total on `|src|`, fixes every attribute of `src` in
/// `fixed`, and sends every triple of `src` into `dst`.
pub fn check_morphism(map: &AttrMap, src: &Graph, dst: &Graph, fixed: &FixedSet) -> bool {
    validate(map, src, dst, fixed).is_ok()
}

fn validate(
    map: &AttrMap,
    src: &Graph,
    dst: &Graph,
    fixed: &FixedSet,
) -> Result<(), MorphismError> {
    for x in src.attribute_set() {
        let image = map
            .get(&x)
            .ok_or_else(|| MorphismError::Totality(x.clone()))?;
        if fixed.contains(&x) && *image != x {
            return Err(MorphismError::NotFixed(x, image.clone()));
        }
    }
    for t in src {
        let image = t.map(|x| map[x].clone());
        if !dst.contains(&image) {
            return Err(MorphismError::NotInTarget(t.clone()));
        }
    }
    Ok(())
}

/// A morphism `source -> target` fixing `fixed`, represented by its
/// attribute map `|a|` on `|source|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Graph,
    target: Graph,
    map: AttrMap,
    fixed: FixedSet,
}

impl Morphism {
    /// Validates and builds a morphism. Entries of `map` outside `|source|`
    /// are discarded.
    pub fn new(
        source: Graph,
        target: Graph,
        mut map: AttrMap,
        fixed: FixedSet,
    ) -> Result<Self, MorphismError> {
        let attrs = source.attribute_set();
        map.retain(|k, _| attrs.contains(k));
        validate(&map, &source, &target, &fixed)?;
        Ok(Morphism {
            source,
            target,
            map,
            fixed,
        })
    }

    /// Builds a morphism whose validity the caller has established.
    pub(crate) fn from_parts(source: Graph, target: Graph, map: AttrMap, fixed: FixedSet) -> Self {
        debug_assert!(check_morphism(&map, &source, &target, &fixed));
        Morphism {
            source,
            target,
            map,
            fixed,
        }
    }

    pub fn identity(graph: Graph, fixed: FixedSet) -> Self {
        let map = graph
            .attribute_set()
            .into_iter()
            .map(|x| (x.clone(), x))
            .collect();
        Morphism {
            source: graph.clone(),
            target: graph,
            map,
            fixed,
        }
    }

    /// The inclusion of `sub` into `sup`.
    pub fn inclusion(sub: Graph, sup: Graph, fixed: FixedSet) -> Result<Self, MorphismError> {
        let map = sub
            .attribute_set()
            .into_iter()
            .map(|x| (x.clone(), x))
            .collect();
        Morphism::new(sub, sup, map, fixed)
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn map(&self) -> &AttrMap {
        &self.map
    }

    pub fn fixed(&self) -> &FixedSet {
        &self.fixed
    }

    /// Image of an attribute; terms outside `|source|` are sent to themselves.
    pub fn apply(&self, term: &Term) -> Term {
        self.map.get(term).cloned().unwrap_or_else(|| term.clone())
    }

    /// The image `a(source)`, a subgraph of the target.
    pub fn image(&self) -> Graph {
        apply_morphism(&self.map, &self.source).expect("morphism map is total")
    }

    /// The composite `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism, MorphismError> {
        if self.target != next.source {
            return Err(MorphismError::Mismatch);
        }
        let map = self
            .map
            .iter()
            .map(|(x, y)| (x.clone(), next.apply(y)))
            .collect();
        Morphism::new(
            self.source.clone(),
            next.target.clone(),
            map,
            self.fixed.clone(),
        )
    }

    pub fn is_isomorphism(&self) -> bool {
        self.inverse().is_ok()
    }

    /// The inverse, when `|a|` is a bijection `|source| -> |target|` and the
    /// image is the whole target.
    pub fn inverse(&self) -> Result<Morphism, MorphismError> {
        let mut inv = AttrMap::new();
        for (x, y) in &self.map {
            if inv.insert(y.clone(), x.clone()).is_some() {
                return Err(MorphismError::NotInvertible);
            }
        }
        if self.image() != self.target {
            return Err(MorphismError::NotInvertible);
        }
        Morphism::new(
            self.target.clone(),
            self.source.clone(),
            inv,
            self.fixed.clone(),
        )
    }

    /// The same attribute map, viewed with a different target graph.
    pub fn with_target(&self, target: Graph) -> Result<Morphism, MorphismError> {
        Morphism::new(
            self.source.clone(),
            target,
            self.map.clone(),
            self.fixed.clone(),
        )
    }

    /// Restriction along an inclusion `sub ⊆ source`.
    pub fn restrict(&self, sub: &Graph) -> Result<Morphism, MorphismError> {
        Morphism::new(
            sub.clone(),
            self.target.clone(),
            self.map.clone(),
            self.fixed.clone(),
        )
    }
}
