//! Isomorphism checking in the category of graphs fixing a set `C`.
//!
//! An isomorphism fixing `C` is the identity on fixed attributes and a
//! bijection between the non-fixed attributes of both graphs that maps the
//! first graph exactly onto the second. The search assigns the non-fixed
//! attributes of the first graph in canonical order, trying candidates in
//! canonical order, so the first witness found is the lexicographically
//! least one. Candidates are pruned by colour refinement: two attributes can
//! only correspond when their iterated incidence signatures agree.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::Graph;
use crate::morphism::{AttrMap, FixedSet, Morphism};
use crate::term::{Term, Triple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    Own,
    Fixed(usize),
    Free(usize),
}

type Signature = (usize, Vec<[Slot; 3]>);

struct Side<'a> {
    graph: &'a Graph,
    free: Vec<Term>,
    index: BTreeMap<Term, usize>,
    /// Triples incident to each free attribute.
    incident: Vec<Vec<&'a Triple>>,
}

impl<'a> Side<'a> {
    fn new(graph: &'a Graph, fixed: &FixedSet) -> Self {
        let free: Vec<Term> = graph
            .attribute_set()
            .into_iter()
            .filter(|t| !fixed.contains(t))
            .collect();
        let index: BTreeMap<Term, usize> = free
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let mut incident = vec![Vec::new(); free.len()];
        for t in graph {
            let mut seen = BTreeSet::new();
            for x in t.terms() {
                if let Some(&i) = index.get(x) {
                    if seen.insert(i) {
                        incident[i].push(t);
                    }
                }
            }
        }
        Side {
            graph,
            free,
            index,
            incident,
        }
    }

    fn signature(
        &self,
        i: usize,
        colors: &[usize],
        fixed_ids: &BTreeMap<Term, usize>,
    ) -> Signature {
        let own = &self.free[i];
        let mut entries: Vec<[Slot; 3]> = self.incident[i]
            .iter()
            .map(|t| {
                t.terms().map(|x| {
                    if x == own {
                        Slot::Own
                    } else if let Some(&j) = self.index.get(x) {
                        Slot::Free(colors[j])
                    } else {
                        Slot::Fixed(fixed_ids[x])
                    }
                })
            })
            .collect();
        entries.sort_unstable();
        (colors[i], entries)
    }
}

/// Joint colour refinement of the free attributes of both graphs. Returns
/// `None` when the colour multisets already differ.
fn refine(
    a: &Side<'_>,
    b: &Side<'_>,
    fixed_ids: &BTreeMap<Term, usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut ca = vec![0; a.free.len()];
    let mut cb = vec![0; b.free.len()];
    let mut classes = 1;
    loop {
        let sa: Vec<Signature> = (0..a.free.len())
            .map(|i| a.signature(i, &ca, fixed_ids))
            .collect();
        let sb: Vec<Signature> = (0..b.free.len())
            .map(|i| b.signature(i, &cb, fixed_ids))
            .collect();
        let ranks: BTreeMap<&Signature, usize> = sa
            .iter()
            .chain(sb.iter())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(r, s)| (s, r))
            .collect();
        let na: Vec<usize> = sa.iter().map(|s| ranks[s]).collect();
        let nb: Vec<usize> = sb.iter().map(|s| ranks[s]).collect();
        let mut ma = na.clone();
        let mut mb = nb.clone();
        ma.sort_unstable();
        mb.sort_unstable();
        if ma != mb {
            return None;
        }
        let new_classes = ranks.len();
        ca = na;
        cb = nb;
        if new_classes == classes {
            return Some((ca, cb));
        }
        classes = new_classes;
    }
}

struct Search<'a> {
    a: &'a Side<'a>,
    b: &'a Side<'a>,
    ca: Vec<usize>,
    cb: Vec<usize>,
    assignment: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn image(&self, x: &Term) -> Option<Term> {
        match self.a.index.get(x) {
            Some(&i) => self.assignment[i].map(|j| self.b.free[j].clone()),
            None => Some(x.clone()),
        }
    }

    fn consistent(&self, i: usize) -> bool {
        self.a.incident[i].iter().all(|t| {
            match (
                self.image(&t.subject),
                self.image(&t.predicate),
                self.image(&t.object),
            ) {
                (Some(s), Some(p), Some(o)) => self.b.graph.contains(&Triple::new(s, p, o)),
                _ => true,
            }
        })
    }

    fn run(&mut self, i: usize) -> bool {
        if i == self.a.free.len() {
            return true;
        }
        for j in 0..self.b.free.len() {
            if self.used[j] || self.cb[j] != self.ca[i] {
                continue;
            }
            self.assignment[i] = Some(j);
            self.used[j] = true;
            if self.consistent(i) && self.run(i + 1) {
                return true;
            }
            self.used[j] = false;
            self.assignment[i] = None;
        }
        false
    }
}

/// Searches for an isomorphism `g1 -> g2` fixing `fixed`.
///
/// Returns the lexicographically least witness (ordering the non-fixed
/// attributes of `g1` canonically), or `None` when the graphs are not
/// isomorphic in the category fixing `fixed`.
pub fn iso_check(g1: &Graph, g2: &Graph, fixed: &FixedSet) -> Option<Morphism> {
    if g1.len() != g2.len() {
        return None;
    }
    let fixed_attrs = |g: &Graph| -> BTreeSet<Term> {
        g.attribute_set()
            .into_iter()
            .filter(|t| fixed.contains(t))
            .collect()
    };
    let fixed_terms = fixed_attrs(g1);
    if fixed_terms != fixed_attrs(g2) {
        return None;
    }
    let a = Side::new(g1, fixed);
    let b = Side::new(g2, fixed);
    if a.free.len() != b.free.len() {
        return None;
    }
    let fixed_ids: BTreeMap<Term, usize> = fixed_terms
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, t)| (t, i))
        .collect();
    let all_fixed = |t: &&Triple| t.terms().iter().all(|x| fixed.contains(x));
    if !g1.iter().filter(all_fixed).all(|t| g2.contains(t)) {
        return None;
    }
    let (ca, cb) = refine(&a, &b, &fixed_ids)?;
    let n = a.free.len();
    let mut search = Search {
        a: &a,
        b: &b,
        ca,
        cb,
        assignment: vec![None; n],
        used: vec![false; n],
    };
    if !search.run(0) {
        return None;
    }
    let mut map: AttrMap = fixed_terms.into_iter().map(|t| (t.clone(), t)).collect();
    for (i, x) in a.free.iter().enumerate() {
        let j = search.assignment[i].expect("complete assignment");
        map.insert(x.clone(), b.free[j].clone());
    }
    Some(Morphism::from_parts(
        g1.clone(),
        g2.clone(),
        map,
        fixed.clone(),
    ))
}
