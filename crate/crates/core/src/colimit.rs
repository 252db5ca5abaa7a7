//! Colimits of graphs fixing a set `C`, and the POIM transformation.
//!
//! The pushout of an inclusion `L ⊆ K` along a morphism `m : L -> G` is
//! `D = G ∪ N³(K)` where `N` agrees with `m` on `|L|` and is the identity
//! elsewhere, once the attributes of `K` outside `|L|` have been made new.
//! The POIM transformation of a rule `L ⊆ K ⊇ R` sends a match of `L` to the
//! match of `R` obtained by that pushout followed by taking the image of
//! `R` inside `D`.

use std::collections::BTreeSet;

use crate::error::ColimitError;
use crate::fresh::{rename, total_on, FreshNames};
use crate::graph::Graph;
use crate::matching::Match;
use crate::morphism::{AttrMap, FixedSet, Morphism};
use crate::term::Term;

/// A transformation rule `L -> K <- R` with `K = L ∪ R` and both legs
/// inclusions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cospan {
    left: Graph,
    middle: Graph,
    right: Graph,
}

impl Cospan {
    pub fn new(left: Graph, right: Graph) -> Self {
        Cospan {
            middle: left.union(&right),
            left,
            right,
        }
    }

    pub fn left(&self) -> &Graph {
        &self.left
    }

    pub fn middle(&self) -> &Graph {
        &self.middle
    }

    pub fn right(&self) -> &Graph {
        &self.right
    }

    pub fn left_inclusion(&self) -> Morphism {
        Morphism::inclusion(self.left.clone(), self.middle.clone(), FixedSet::I)
            .expect("L is a subgraph of K")
    }

    pub fn right_inclusion(&self) -> Morphism {
        Morphism::inclusion(self.right.clone(), self.middle.clone(), FixedSet::I)
            .expect("R is a subgraph of K")
    }

    /// Applies an attribute renaming to all three graphs at once.
    pub fn renamed(&self, map: &AttrMap) -> Cospan {
        let apply = |g: &Graph| -> Graph {
            g.iter()
                .map(|t| t.map(|x| map.get(x).cloned().unwrap_or_else(|| x.clone())))
                .collect()
        };
        Cospan::new(apply(&self.left), apply(&self.right))
    }
}

/// A coproduct object with its injections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coproduct {
    pub object: Graph,
    pub injections: Vec<Morphism>,
}

/// Coproduct of `parts` in the category of graphs fixing `fixed`.
///
/// Non-fixed attributes shared with an earlier part are renamed to new
/// attributes of the same kind, so that the parts pairwise meet only in
/// `fixed`; the union is then a coproduct. The first part, and every
/// attribute that does not clash, keeps its name.
pub fn coproduct(parts: &[Graph], fixed: &FixedSet, fresh: &mut FreshNames) -> Coproduct {
    let avoid: BTreeSet<Term> = parts.iter().flat_map(Graph::attribute_set).collect();
    let mut used: BTreeSet<Term> = BTreeSet::new();
    let mut renamed_parts = Vec::with_capacity(parts.len());
    for part in parts {
        let free: Vec<Term> = part
            .attribute_set()
            .into_iter()
            .filter(|x| !fixed.contains(x))
            .collect();
        let clashing: Vec<&Term> = free.iter().filter(|x| used.contains(*x)).collect();
        let renaming = fresh.rename_all(clashing, &avoid);
        let (renamed, witness) = rename(part, &renaming, fixed.clone());
        used.extend(free.iter().map(|x| witness.apply(x)));
        renamed_parts.push((renamed, witness));
    }
    let object: Graph = renamed_parts
        .iter()
        .flat_map(|(g, _)| g.iter().cloned())
        .collect();
    let injections = renamed_parts
        .into_iter()
        .map(|(_, w)| {
            w.with_target(object.clone())
                .expect("part lies in the union")
        })
        .collect();
    Coproduct { object, injections }
}

/// The `k`-fold replication of a rule, with the renamings used per copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replicated {
    pub rule: Cospan,
    /// For copy `i` (0-based), the map from blanks and variables of `K` to
    /// their names in that copy.
    pub copies: Vec<AttrMap>,
}

/// Builds `kL -> kK <- kR`.
///
/// Copy `i` (numbered from 1) renames each blank and variable `x` of `K` to
/// `x·i`, simultaneously in `L`, `K` and `R`, so both legs stay inclusions.
/// A primed suffix is appended if that name is already taken.
pub fn replicate_rule(rule: &Cospan, k: usize) -> Replicated {
    let free: Vec<Term> = rule
        .middle
        .attribute_set()
        .into_iter()
        .filter(|x| !x.is_identifier())
        .collect();
    let mut taken: BTreeSet<Term> = rule.middle.attribute_set();
    let mut copies = Vec::with_capacity(k);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 1..=k {
        let mut map = AttrMap::new();
        for x in &free {
            let base = x.local_name().expect("blank or variable");
            let mut name = format!("{base}·{i}");
            let fresh = loop {
                let candidate = match x {
                    Term::Blank(_) => Term::Blank(name.clone()),
                    _ => Term::Variable(name.clone()),
                };
                if !taken.contains(&candidate) {
                    break candidate;
                }
                name.push('\'');
            };
            taken.insert(fresh.clone());
            map.insert(x.clone(), fresh);
        }
        let copy = rule.renamed(&map);
        left.extend(copy.left.iter().cloned());
        right.extend(copy.right.iter().cloned());
        copies.push(map);
    }
    Replicated {
        rule: Cospan::new(Graph::from_triples(left), Graph::from_triples(right)),
        copies,
    }
}

/// A pushout square `(l, m, n, g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushout {
    /// Isomorphism `K -> K'` making the attributes of `K` outside `|L|` new.
    /// It is the identity on `|L|` and on fixed attributes.
    pub renaming: Morphism,
    /// `K'`, which still contains `L`.
    pub middle: Graph,
    /// `D = G ∪ N³(K')`.
    pub object: Graph,
    /// `n : K' -> D`.
    pub cobase: Morphism,
    /// `g : G -> D`, an inclusion.
    pub inclusion: Morphism,
}

/// Pushout of the inclusion `left ⊆ middle` along `m : left -> G`, in the
/// category of graphs fixing `m.fixed()`.
///
/// Every non-fixed attribute of `middle` outside `|left|` is first replaced
/// by a new attribute of the same kind, which establishes
/// `|K'| ∩ |G| ⊆ C` away from `|L|`.
pub fn pushout(
    left: &Graph,
    middle: &Graph,
    m: &Morphism,
    fresh: &mut FreshNames,
) -> Result<Pushout, ColimitError> {
    if m.source() != left {
        return Err(ColimitError::Precondition(
            "the match does not start at the left-hand side".into(),
        ));
    }
    if !left.is_subgraph_of(middle) {
        return Err(ColimitError::Precondition(
            "the left-hand side is not included in the middle graph".into(),
        ));
    }
    let fixed = m.fixed().clone();
    let g = m.target();
    let left_attrs = left.attribute_set();
    let outside: Vec<Term> = middle
        .attribute_set()
        .into_iter()
        .filter(|x| !left_attrs.contains(x) && !fixed.contains(x))
        .collect();
    let mut avoid = middle.attribute_set();
    avoid.extend(g.attribute_set());
    let renaming = fresh.rename_all(&outside, &avoid);
    let (renamed, renaming) = rename(middle, &renaming, fixed.clone());

    let cobase_map: AttrMap = renamed
        .attribute_set()
        .into_iter()
        .map(|x| {
            let y = if left_attrs.contains(&x) {
                m.apply(&x)
            } else {
                x.clone()
            };
            (x, y)
        })
        .collect();
    let pushed: Graph = renamed
        .iter()
        .map(|t| t.map(|x| cobase_map[x].clone()))
        .collect();
    let object = g.union(&pushed);
    let cobase = Morphism::new(renamed.clone(), object.clone(), cobase_map, fixed.clone())?;
    let inclusion = Morphism::inclusion(g.clone(), object.clone(), fixed)?;
    Ok(Pushout {
        renaming,
        middle: renamed,
        object,
        cobase,
        inclusion,
    })
}

/// The factorization `R -> H -> D` of `n` restricted to `R ⊆ K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageFactorization {
    /// `H = n³(R)`.
    pub object: Graph,
    /// `p : R -> H`, the restriction of `n`.
    pub restriction: Morphism,
    /// `h : H -> D`, an inclusion.
    pub inclusion: Morphism,
}

pub fn image_factorization(
    right: &Graph,
    n: &Morphism,
) -> Result<ImageFactorization, ColimitError> {
    if !right.is_subgraph_of(n.source()) {
        return Err(ColimitError::Precondition(
            "the right-hand side is not included in the middle graph".into(),
        ));
    }
    let restricted = n.restrict(right)?;
    let object = restricted.image();
    let restriction = restricted.with_target(object.clone())?;
    let inclusion = Morphism::inclusion(object.clone(), n.target().clone(), n.fixed().clone())?;
    Ok(ImageFactorization {
        object,
        restriction,
        inclusion,
    })
}

/// Everything produced by one POIM step:
///
/// ```text
///   L --l--> K' <--r-- R'
///   |m       |n        |p
///   G --g--> D  <--h-- H
/// ```
///
/// `K'` and `R'` are the rule's `K` and `R` after the pushout renaming.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoimTrace {
    pub rule: Cospan,
    /// The rule actually used, `L ⊆ K' ⊇ R'`.
    pub working_rule: Cospan,
    /// `K -> K'`.
    pub renaming: Morphism,
    pub input_match: Match,
    pub pushout_graph: Graph,
    pub pushout_match: Morphism,
    pub pushout_inclusion: Morphism,
    pub result_graph: Graph,
    /// `p : R' -> H`.
    pub result_match: Morphism,
    pub result_inclusion: Morphism,
}

impl PoimTrace {
    /// The resulting match `R -> H` on the original right-hand side.
    pub fn result_match_on_rule(&self) -> Morphism {
        let map = self
            .rule
            .right()
            .attribute_set()
            .into_iter()
            .map(|x| {
                let y = self.result_match.apply(&self.renaming.apply(&x));
                (x, y)
            })
            .collect();
        Morphism::new(
            self.rule.right().clone(),
            self.result_graph.clone(),
            map,
            FixedSet::I,
        )
        .expect("renaming composed with p is a morphism")
    }
}

/// Applies the POIM transformation of `rule` to a match of its left-hand
/// side. The result graph is one representative of its isomorphism class;
/// blanks created here come from `fresh`.
pub fn poim(rule: &Cospan, m: &Match, fresh: &mut FreshNames) -> Result<PoimTrace, ColimitError> {
    let po = pushout(rule.left(), rule.middle(), m.morphism(), fresh)?;
    let renamed_right: Graph = rule
        .right()
        .iter()
        .map(|t| t.map(|x| po.renaming.apply(x)))
        .collect();
    let working_rule = Cospan::new(rule.left().clone(), renamed_right);
    debug_assert_eq!(working_rule.middle(), &po.middle);
    let im = image_factorization(working_rule.right(), &po.cobase)?;
    Ok(PoimTrace {
        rule: rule.clone(),
        working_rule,
        renaming: po.renaming,
        input_match: m.clone(),
        pushout_graph: po.object,
        pushout_match: po.cobase,
        pushout_inclusion: po.inclusion,
        result_graph: im.object,
        result_match: im.restriction,
        result_inclusion: im.inclusion,
    })
}

/// Computes the POIM result directly as `H = P³(R)`, where `P` sends each
/// variable of `R` to its value under `m`, each blank of `R` to a new blank,
/// and fixes everything else.
///
/// The rule must satisfy `|L|_B ∩ |R|_B = ∅` and `|R|_V ⊆ |L|_V`. Blanks
/// are drawn from `fresh` in the same order as [`poim`] draws them, so with
/// generators in the same state both return the same graph.
pub fn poim_shortcut(
    rule: &Cospan,
    m: &Match,
    fresh: &mut FreshNames,
) -> Result<(Graph, Morphism), ColimitError> {
    if m.query() != rule.left() {
        return Err(ColimitError::Precondition(
            "the match does not start at the left-hand side".into(),
        ));
    }
    let left = rule.left().attributes();
    let right = rule.right().attributes();
    if !left.blanks.is_disjoint(&right.blanks) {
        return Err(ColimitError::Precondition(
            "left and right share a blank".into(),
        ));
    }
    if !right.variables.is_subset(&left.variables) {
        return Err(ColimitError::Precondition(
            "a variable of the right-hand side is unbound".into(),
        ));
    }
    let mut avoid = rule.middle().attribute_set();
    avoid.extend(m.data().attribute_set());
    let mut map = fresh.rename_all(&right.blanks, &avoid);
    for v in &right.variables {
        map.insert(v.clone(), m.apply(v));
    }
    let map = total_on(rule.right(), &map);
    let h: Graph = rule
        .right()
        .iter()
        .map(|t| t.map(|x| map[x].clone()))
        .collect();
    let p = Morphism::new(rule.right().clone(), h.clone(), map, FixedSet::I)?;
    Ok((h, p))
}
