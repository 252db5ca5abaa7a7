//! Benchmark fixtures for `poim-core`.

use poim_core::random::{self, Alphabet};
use poim_core::{normalize_construct, ConstructQuery, FreshNames, Graph, SelectQuery, Term};

/// An alphabet whose size grows with the requested graph size, so that
/// larger graphs stay sparse.
pub fn alphabet(scale: usize) -> Alphabet {
    let n = scale.max(2);
    Alphabet {
        identifiers: (0..n)
            .map(|i| Term::iri(format!("http://example.org/n{i}")))
            .chain((0..4).map(|i| Term::iri(format!("http://example.org/p{i}"))))
            .collect(),
        blanks: (0..n / 2).map(|i| Term::blank(format!("b{i}"))).collect(),
        variables: ["x", "y", "z"].map(Term::var).to_vec(),
    }
}

/// A data graph of at most `triples` triples and a CONSTRUCT query whose
/// pattern is drawn from it.
pub fn construct_workload(seed: u64, triples: usize) -> (Graph, ConstructQuery) {
    let alphabet = alphabet(triples / 2);
    let mut rng = random::seeded(seed);
    let data = random::data_graph(&mut rng, &alphabet, triples);
    let (lhs, rhs) = random::construct_pair(&mut rng, &data, &alphabet, 2, 2);
    (
        data,
        normalize_construct(&lhs, &rhs, &mut FreshNames::default()),
    )
}

/// A data graph and a SELECT query over every variable of its pattern.
pub fn select_workload(seed: u64, triples: usize) -> (Graph, SelectQuery) {
    let alphabet = alphabet(triples / 2);
    let mut rng = random::seeded(seed);
    let data = random::data_graph(&mut rng, &alphabet, triples);
    let lhs = random::pattern_for(&mut rng, &data, &alphabet, 2);
    let columns = lhs.variables().into_iter().collect();
    let query = SelectQuery::new(lhs, columns).expect("columns come from the pattern");
    (data, query)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_are_reproducible() {
        assert_eq!(construct_workload(3, 50).0, construct_workload(3, 50).0);
        let (g, q) = select_workload(4, 50);
        assert!(g.len() <= 50);
        assert_eq!(q.columns().len(), q.lhs().variables().len());
    }
}
