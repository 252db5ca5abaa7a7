//! Brute-force oracles and instance generators shared by the property and
//! acceptance suites. Nothing here calls the search code under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use poim_core::random::{self, Alphabet};
use poim_core::{
    normalize_construct, AttrMap, ConstructQuery, FixedSet, FreshNames, Graph, Term, Triple,
};
use rand::Rng;

pub fn lookup(map: &AttrMap, x: &Term) -> Term {
    map.get(x).cloned().unwrap_or_else(|| x.clone())
}

pub fn apply(map: &AttrMap, g: &Graph) -> Graph {
    g.iter().map(|t| t.map(|x| lookup(map, x))).collect()
}

fn free_attributes(g: &Graph, fixed: &FixedSet) -> Vec<Term> {
    g.attribute_set()
        .into_iter()
        .filter(|x| !fixed.contains(x))
        .collect()
}

fn fixed_part(g: &Graph, fixed: &FixedSet) -> AttrMap {
    g.attribute_set()
        .into_iter()
        .filter(|x| fixed.contains(x))
        .map(|x| (x.clone(), x))
        .collect()
}

/// Every total map from the free attributes of `src` into `pool`, identity
/// on fixed attributes, whose triple-wise image lies in `dst`. Walks the
/// full product of choices, checking only complete maps.
pub fn all_total_maps_into(
    src: &Graph,
    dst: &Graph,
    fixed: &FixedSet,
    pool: &[Term],
) -> Vec<AttrMap> {
    let free = free_attributes(src, fixed);
    let base = fixed_part(src, fixed);
    let dst: HashSet<&Triple> = dst.iter().collect();
    let mut out = Vec::new();
    if pool.is_empty() && !free.is_empty() {
        return out;
    }
    let mut digits = vec![0usize; free.len()];
    loop {
        let mut map = base.clone();
        for (x, &d) in free.iter().zip(&digits) {
            map.insert(x.clone(), pool[d].clone());
        }
        if src
            .iter()
            .all(|t| dst.contains(&t.map(|x| lookup(&map, x))))
        {
            out.push(map);
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return out;
            }
            digits[i] += 1;
            if digits[i] < pool.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// The matches of `l` in `g`, found by trying every total map into `|G|`.
pub fn brute_force_matches(l: &Graph, g: &Graph) -> BTreeSet<AttrMap> {
    let pool: Vec<Term> = g.attribute_set().into_iter().collect();
    all_total_maps_into(l, g, &FixedSet::I, &pool)
        .into_iter()
        .collect()
}

/// Every morphism `src -> dst` fixing `fixed`, by depth-first search over
/// all candidate values, abandoning a branch only once some triple whose
/// attributes are all assigned leaves `dst`.
pub fn all_morphisms(src: &Graph, dst: &Graph, fixed: &FixedSet) -> Vec<AttrMap> {
    let free = free_attributes(src, fixed);
    let pool: Vec<Term> = dst.attribute_set().into_iter().collect();
    let dst_set: HashSet<&Triple> = dst.iter().collect();
    let mut out = Vec::new();
    let mut map = fixed_part(src, fixed);
    fn go(
        i: usize,
        free: &[Term],
        pool: &[Term],
        src: &Graph,
        dst: &HashSet<&Triple>,
        map: &mut AttrMap,
        out: &mut Vec<AttrMap>,
    ) {
        let complete_ok = src.iter().all(|t| {
            if t.terms().iter().all(|x| map.contains_key(*x)) {
                dst.contains(&t.map(|x| map[x].clone()))
            } else {
                true
            }
        });
        if !complete_ok {
            return;
        }
        if i == free.len() {
            out.push(map.clone());
            return;
        }
        for v in pool {
            map.insert(free[i].clone(), v.clone());
            go(i + 1, free, pool, src, dst, map, out);
        }
        map.remove(&free[i]);
    }
    go(0, &free, &pool, src, &dst_set, &mut map, &mut out);
    out
}

fn permutations(items: &[Term]) -> Vec<Vec<Term>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// Every isomorphism `g1 -> g2` fixing `fixed`, as attribute maps, in
/// lexicographic order of the images of the free attributes of `g1`.
pub fn brute_force_isos(g1: &Graph, g2: &Graph, fixed: &FixedSet) -> Vec<AttrMap> {
    let f1 = free_attributes(g1, fixed);
    let f2 = free_attributes(g2, fixed);
    if f1.len() != f2.len() || g1.len() != g2.len() {
        return Vec::new();
    }
    let base = fixed_part(g1, fixed);
    permutations(&f2)
        .into_iter()
        .filter_map(|perm| {
            let mut map = base.clone();
            map.extend(f1.iter().cloned().zip(perm));
            (apply(&map, g1) == *g2).then_some(map)
        })
        .collect()
}

/// Whether `map` restricted to the attributes of `g` agrees with `other`.
pub fn agree_on(g: &Graph, map: &AttrMap, other: &AttrMap) -> bool {
    g.attribute_set()
        .iter()
        .all(|x| lookup(map, x) == lookup(other, x))
}

pub fn compose(first: &AttrMap, then: &AttrMap, domain: &Graph) -> AttrMap {
    domain
        .attribute_set()
        .into_iter()
        .map(|x| {
            let y = lookup(then, &lookup(first, &x));
            (x, y)
        })
        .collect()
}

/// Whether `g1` and `g2` are isomorphic fixing `fixed`, by brute force.
pub fn isomorphic(g1: &Graph, g2: &Graph, fixed: &FixedSet) -> bool {
    !brute_force_isos(g1, g2, fixed).is_empty()
}

#[derive(Debug, Clone)]
pub struct ConstructInstance {
    pub data: Graph,
    pub lhs: Graph,
    pub rhs: Graph,
    pub query: ConstructQuery,
}

/// A CONSTRUCT instance with `|L| ≤ 3`, `|R| ≤ 3`, `|G| ≤ 8` over the
/// small alphabet.
pub fn construct_instance(seed: u64) -> ConstructInstance {
    let alphabet = Alphabet::small();
    let mut rng = random::seeded(seed);
    let data = random::data_graph(&mut rng, &alphabet, 8);
    let (lhs, rhs) = random::construct_pair(&mut rng, &data, &alphabet, 3, 3);
    let query = normalize_construct(&lhs, &rhs, &mut FreshNames::default());
    ConstructInstance {
        data,
        lhs,
        rhs,
        query,
    }
}

/// A SELECT instance over the small alphabet: data, pattern and columns.
pub fn select_instance(seed: u64) -> (Graph, Graph, Vec<Term>) {
    let alphabet = Alphabet::small();
    let mut rng = random::seeded(seed);
    let data = random::data_graph(&mut rng, &alphabet, 8);
    let lhs = random::pattern_for(&mut rng, &data, &alphabet, 3);
    let columns = random::select_columns(&mut rng, &lhs);
    (data, lhs, columns)
}

/// A matching instance with `|L| ≤ 3` and at most five data attributes.
pub fn match_instance(seed: u64) -> (Graph, Graph) {
    let alphabet = Alphabet::small();
    let mut rng = random::seeded(seed);
    let data_pool: Vec<Term> = {
        let mut pool: Vec<Term> = alphabet
            .identifiers
            .iter()
            .chain(&alphabet.blanks)
            .cloned()
            .collect();
        while pool.len() > 5 {
            let i = rng.gen_range(0..pool.len());
            pool.remove(i);
        }
        pool
    };
    let restricted = Alphabet {
        identifiers: data_pool
            .iter()
            .filter(|x| x.is_identifier())
            .cloned()
            .collect(),
        blanks: data_pool.iter().filter(|x| x.is_blank()).cloned().collect(),
        variables: alphabet.variables.clone(),
    };
    let g = random::data_graph(&mut rng, &restricted, 8);
    loop {
        let l = if rng.gen_bool(0.6) {
            random::pattern_for(&mut rng, &g, &alphabet, 3)
        } else {
            random::query_graph(&mut rng, &alphabet, 3)
        };
        if l.attribute_set()
            .iter()
            .filter(|x| !x.is_identifier())
            .count()
            <= 6
        {
            return (l, g);
        }
    }
}

/// A random map of the free attributes of `g` into `pool`, identity on `I`.
pub fn random_map(rng: &mut impl Rng, g: &Graph, pool: &[Term]) -> AttrMap {
    g.attribute_set()
        .into_iter()
        .map(|x| {
            let y = if x.is_identifier() {
                x.clone()
            } else {
                pool[rng.gen_range(0..pool.len())].clone()
            };
            (x, y)
        })
        .collect()
}

/// Blank labels after canonical relabelling, for comparing fixed outputs.
pub fn relabelled(g: &Graph) -> BTreeSet<Triple> {
    let labels: BTreeMap<Term, usize> = poim_core::syntax::canonical_blank_labels(g);
    g.iter()
        .map(|t| {
            t.map(|x| match labels.get(x) {
                Some(n) => Term::blank(format!("b{n}")),
                None => x.clone(),
            })
        })
        .collect()
}
