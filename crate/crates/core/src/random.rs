//! Seeded generators of small graphs and queries, for property tests and
//! benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::term::{Literal, Term, Triple};

/// A reproducible generator.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The attributes random graphs are drawn from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    pub identifiers: Vec<Term>,
    pub blanks: Vec<Term>,
    pub variables: Vec<Term>,
}

impl Alphabet {
    /// Four IRIs, two literals, three blanks and four variables.
    pub fn small() -> Self {
        let iri = |s: &str| Term::iri(format!("http://example.org/{s}"));
        Alphabet {
            identifiers: vec![
                iri("a"),
                iri("b"),
                iri("p"),
                iri("q"),
                Term::literal("1"),
                Term::literal("x"),
            ],
            blanks: ["u", "v", "w"].map(Term::blank).to_vec(),
            variables: ["x", "y", "z", "t"].map(Term::var).to_vec(),
        }
    }

    /// Identifiers exercising the writer: escapes, language tags,
    /// datatypes and non-ASCII text.
    pub fn awkward() -> Self {
        Alphabet {
            identifiers: vec![
                Term::iri("http://example.org/a"),
                Term::iri("urn:x:é#frag"),
                Term::literal("quote \" and \\ backslash"),
                Term::literal("line\nbreak\ttab\rreturn"),
                Term::Literal(Literal::lang("chat", "fr-CA")),
                Term::Literal(Literal::typed(
                    "7",
                    "http://www.w3.org/2001/XMLSchema#integer",
                )),
                Term::literal(""),
                Term::literal("comma, ünïcode ✓"),
            ],
            blanks: ["b0", "x-y", "n.1", "Z"].map(Term::blank).to_vec(),
            variables: Vec::new(),
        }
    }

    fn data_pool(&self) -> Vec<Term> {
        self.identifiers
            .iter()
            .chain(&self.blanks)
            .cloned()
            .collect()
    }

    fn query_pool(&self) -> Vec<Term> {
        self.data_pool()
            .into_iter()
            .chain(self.variables.iter().cloned())
            .collect()
    }
}

fn graph_from(rng: &mut impl Rng, pool: &[Term], min: usize, max: usize) -> Graph {
    let n = rng.gen_range(min..=max);
    let mut pick = || pool.choose(rng).expect("non-empty pool").clone();
    (0..n)
        .map(|_| Triple::new(pick(), pick(), pick()))
        .collect()
}

/// A data graph of at most `max_triples` triples over identifiers and blanks.
pub fn data_graph(rng: &mut impl Rng, alphabet: &Alphabet, max_triples: usize) -> Graph {
    graph_from(rng, &alphabet.data_pool(), 0, max_triples)
}

/// A query graph of at most `max_triples` triples over the whole alphabet.
pub fn query_graph(rng: &mut impl Rng, alphabet: &Alphabet, max_triples: usize) -> Graph {
    graph_from(rng, &alphabet.query_pool(), 0, max_triples)
}

/// A query graph built by abstracting some attributes of triples taken from
/// `g`, so that it tends to have matches in `g`.
pub fn pattern_for(
    rng: &mut impl Rng,
    g: &Graph,
    alphabet: &Alphabet,
    max_triples: usize,
) -> Graph {
    let source: Vec<&Triple> = g.iter().collect();
    if source.is_empty() {
        return query_graph(rng, alphabet, max_triples);
    }
    let n = rng.gen_range(1..=max_triples.max(1));
    let mut abstraction: Vec<(Term, Term)> = Vec::new();
    let mut out = Vec::new();
    for _ in 0..n {
        let t = *source.choose(rng).expect("non-empty");
        let mapped = t.map(|x| {
            if let Some((_, v)) = abstraction.iter().find(|(k, _)| k == x) {
                return v.clone();
            }
            let roll: f64 = rng.gen();
            let replacement = if roll < 0.45 && !alphabet.variables.is_empty() {
                alphabet.variables.choose(rng).expect("non-empty").clone()
            } else if roll < 0.55 && !alphabet.blanks.is_empty() {
                alphabet.blanks.choose(rng).expect("non-empty").clone()
            } else if x.is_identifier() {
                x.clone()
            } else {
                alphabet
                    .variables
                    .first()
                    .cloned()
                    .unwrap_or_else(|| x.clone())
            };
            abstraction.push((x.clone(), replacement.clone()));
            replacement
        });
        out.push(mapped);
    }
    out.into_iter().collect()
}

/// A raw CONSTRUCT pair `(L, R)` with `|L| ≤ max_lhs`, `|R| ≤ max_rhs`,
/// before normalization.
pub fn construct_pair(
    rng: &mut impl Rng,
    g: &Graph,
    alphabet: &Alphabet,
    max_lhs: usize,
    max_rhs: usize,
) -> (Graph, Graph) {
    let lhs = if rng.gen_bool(0.7) {
        pattern_for(rng, g, alphabet, max_lhs)
    } else {
        query_graph(rng, alphabet, max_lhs)
    };
    let mut pool: Vec<Term> = lhs.variables().into_iter().collect();
    pool.extend(alphabet.identifiers.iter().take(4).cloned());
    pool.extend(alphabet.blanks.iter().cloned());
    let rhs = graph_from(rng, &pool, 0, max_rhs);
    (lhs, rhs)
}

/// A random ordering of a random subset of the variables of `lhs`.
pub fn select_columns(rng: &mut impl Rng, lhs: &Graph) -> Vec<Term> {
    let mut vars: Vec<Term> = lhs.variables().into_iter().collect();
    vars.shuffle(rng);
    let keep = rng.gen_range(0..=vars.len());
    vars.truncate(keep);
    vars
}
