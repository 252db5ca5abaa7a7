//! Basic CONSTRUCT and SELECT queries.
//!
//! A CONSTRUCT query `(L, R)` is run against a data graph in three
//! interchangeable ways, which agree up to blank renaming:
//!
//! * [`eval_construct_direct`] instantiates `R` once per match, with new
//!   blanks for each match;
//! * [`eval_construct_high`] applies a single POIM step to the rule
//!   replicated once per match;
//! * [`eval_construct_low`] applies one POIM step per match on the match
//!   image and glues the local results with a coproduct that keeps the data
//!   graph's own blanks.
//!
//! A SELECT query `(L, S)` is encoded as the CONSTRUCT query `(L, Gr(S))`,
//! whose result is a relational graph with one line blank per match.

use std::collections::{BTreeMap, BTreeSet};

use crate::colimit::{coproduct, poim, replicate_rule, Cospan};
use crate::error::QueryError;
use crate::fresh::FreshNames;
use crate::graph::Graph;
use crate::matching::{enumerate_matches, Match};
use crate::morphism::{AttrMap, FixedSet};
use crate::term::{Term, Triple};

/// Namespace of the predicates minted for SELECT columns.
pub const COLUMN_NAMESPACE: &str = "urn:poim:col:";

/// A normalized basic CONSTRUCT query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructQuery {
    rule: Cospan,
}

impl ConstructQuery {
    /// Normalizes `(L, R)` with a private name generator.
    pub fn new(lhs: Graph, rhs: Graph) -> Self {
        normalize_construct(&lhs, &rhs, &mut FreshNames::default())
    }

    pub fn lhs(&self) -> &Graph {
        self.rule.left()
    }

    pub fn rhs(&self) -> &Graph {
        self.rule.right()
    }

    pub fn rule(&self) -> &Cospan {
        &self.rule
    }
}

/// Builds a CONSTRUCT query from arbitrary finite query graphs:
/// blanks of `R` that also occur in `L` are renamed apart, triples of `R`
/// mentioning a variable absent from `L` are dropped, and the rule
/// `L ⊆ L ∪ R ⊇ R` is formed.
pub fn normalize_construct(lhs: &Graph, rhs: &Graph, fresh: &mut FreshNames) -> ConstructQuery {
    let left = lhs.attributes();
    let rhs_blanks = rhs.blanks();
    let clashing = rhs_blanks.intersection(&left.blanks);
    let mut avoid = left.all.clone();
    avoid.extend(rhs.attribute_set());
    let renaming = fresh.rename_all(clashing, &avoid);
    let rhs: Graph = rhs
        .iter()
        .filter(|t| {
            t.terms()
                .iter()
                .all(|x| !x.is_variable() || left.variables.contains(*x))
        })
        .map(|t| t.map(|x| renaming.get(x).cloned().unwrap_or_else(|| x.clone())))
        .collect();
    ConstructQuery {
        rule: Cospan::new(lhs.clone(), rhs),
    }
}

fn query_avoid(q: &ConstructQuery, g: &Graph) -> BTreeSet<Term> {
    let mut avoid = q.rule.middle().attribute_set();
    avoid.extend(g.attribute_set());
    avoid
}

/// Instantiates `R` for one match: variables take their matched values and
/// every blank of `R` becomes a new blank.
fn instantiate(rhs: &Graph, m: &Match, avoid: &BTreeSet<Term>, fresh: &mut FreshNames) -> Graph {
    let mut map: AttrMap = fresh.rename_all(&rhs.blanks(), avoid);
    for v in rhs.variables() {
        let value = m.apply(&v);
        map.insert(v, value);
    }
    rhs.iter()
        .map(|t| t.map(|x| map.get(x).cloned().unwrap_or_else(|| x.clone())))
        .collect()
}

/// `H = H_1 ∪ … ∪ H_k` over the matches `m_1, …, m_k` in canonical order.
pub fn eval_construct_direct(q: &ConstructQuery, g: &Graph, fresh: &mut FreshNames) -> Graph {
    let avoid = query_avoid(q, g);
    enumerate_matches(q.lhs(), g)
        .iter()
        .flat_map(|m| {
            instantiate(q.rhs(), m, &avoid, fresh)
                .iter()
                .cloned()
                .collect::<Vec<_>>()
        })
        .collect()
}

/// One POIM step on `(kL, kR)` along the match that is `m_i` on the `i`-th
/// copy of `L`.
pub fn eval_construct_high(q: &ConstructQuery, g: &Graph, fresh: &mut FreshNames) -> Graph {
    let matches = enumerate_matches(q.lhs(), g);
    if matches.is_empty() {
        return Graph::new();
    }
    let replicated = replicate_rule(q.rule(), matches.len());
    let left_attrs = q.lhs().attribute_set();
    let mut map: AttrMap = replicated
        .rule
        .left()
        .attribute_set()
        .into_iter()
        .filter(Term::is_identifier)
        .map(|x| (x.clone(), x))
        .collect();
    for (m, copy) in matches.iter().zip(&replicated.copies) {
        for (x, renamed) in copy {
            if left_attrs.contains(x) {
                map.insert(renamed.clone(), m.apply(x));
            }
        }
    }
    let merged = Match::new(replicated.rule.left().clone(), g.clone(), map)
        .expect("copies of the matches agree on identifiers");
    poim(&replicated.rule, &merged, fresh)
        .expect("merged match starts at kL")
        .result_graph
}

/// Local POIM results on each match image, merged by a coproduct fixing
/// `I ∪ |G|_B`.
pub fn eval_construct_low(q: &ConstructQuery, g: &Graph, fresh: &mut FreshNames) -> Graph {
    fresh.reserve(g.attribute_set());
    let locals: Vec<Graph> = enumerate_matches(q.lhs(), g)
        .iter()
        .map(|m| {
            // every local result starts from the same generator state
            let mut local = fresh.clone();
            poim(q.rule(), &m.onto_image(), &mut local)
                .expect("match starts at L")
                .result_graph
        })
        .collect();
    coproduct(&locals, &FixedSet::identifiers_and(g.blanks()), fresh).object
}

/// Which of the three equivalent procedures to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMode {
    #[default]
    Direct,
    High,
    Low,
}

pub fn eval_construct(
    q: &ConstructQuery,
    g: &Graph,
    mode: EvalMode,
    fresh: &mut FreshNames,
) -> Graph {
    match mode {
        EvalMode::Direct => eval_construct_direct(q, g, fresh),
        EvalMode::High => eval_construct_high(q, g, fresh),
        EvalMode::Low => eval_construct_low(q, g, fresh),
    }
}

/// Whether a triple is an RDF triple: IRI or blank subject, IRI predicate,
/// and a non-variable object.
pub fn is_well_formed(t: &Triple) -> bool {
    (t.subject.is_iri() || t.subject.is_blank()) && t.predicate.is_iri() && !t.object.is_variable()
}

pub fn filter_well_formed(h: &Graph) -> Graph {
    h.filter(is_well_formed)
}

/// The SPARQL answer of `CONSTRUCT {R} WHERE {L}` over an RDF graph, up to
/// blank renaming. Blanks of `L` are first turned into new variables.
pub fn answers_over_rdf(q: &ConstructQuery, g: &Graph, fresh: &mut FreshNames) -> Graph {
    let lhs_blanks = q.lhs().blanks();
    let query = if lhs_blanks.is_empty() {
        q.clone()
    } else {
        let avoid = q.rule().middle().attribute_set();
        let to_vars: AttrMap = lhs_blanks
            .iter()
            .map(|b| (b.clone(), fresh.variable(&avoid)))
            .collect();
        let lhs: Graph = q
            .lhs()
            .iter()
            .map(|t| t.map(|x| to_vars.get(x).cloned().unwrap_or_else(|| x.clone())))
            .collect();
        normalize_construct(&lhs, q.rhs(), fresh)
    };
    filter_well_formed(&eval_construct_direct(&query, g, fresh))
}

/// A basic SELECT query `(L, S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectQuery {
    lhs: Graph,
    columns: Vec<Term>,
}

impl SelectQuery {
    pub fn new(lhs: Graph, columns: Vec<Term>) -> Result<Self, QueryError> {
        check_columns(&columns)?;
        let vars = lhs.variables();
        if let Some(missing) = columns.iter().find(|c| !vars.contains(*c)) {
            return Err(QueryError::UnboundColumn(missing.clone()));
        }
        Ok(SelectQuery { lhs, columns })
    }

    pub fn lhs(&self) -> &Graph {
        &self.lhs
    }

    pub fn columns(&self) -> &[Term] {
        &self.columns
    }

    pub fn column_names(&self) -> Vec<String> {
        self.columns
            .iter()
            .map(|c| c.local_name().unwrap_or_default().to_string())
            .collect()
    }
}

fn check_columns(columns: &[Term]) -> Result<(), QueryError> {
    let mut seen = BTreeSet::new();
    for c in columns {
        if !c.is_variable() {
            return Err(QueryError::NotAVariable(c.clone()));
        }
        if !seen.insert(c) {
            return Err(QueryError::DuplicateColumn(c.clone()));
        }
    }
    Ok(())
}

/// The predicate standing for a selected variable.
pub fn column_iri(variable_name: &str) -> Term {
    Term::iri(format!("{COLUMN_NAMESPACE}{variable_name}"))
}

fn column_label(column: &Term) -> String {
    match column {
        Term::Iri(iri) => iri
            .strip_prefix(COLUMN_NAMESPACE)
            .unwrap_or(iri)
            .to_string(),
        other => other.to_string(),
    }
}

/// The relational query graph `Gr(S) = {(_:r, s_j, ?s_j)}`.
pub fn gr_of(columns: &[Term]) -> Result<Graph, QueryError> {
    check_columns(columns)?;
    let line = Term::blank("r");
    Ok(columns
        .iter()
        .map(|c| {
            let name = c.local_name().expect("checked variable");
            Triple::new(line.clone(), column_iri(name), c.clone())
        })
        .collect())
}

/// A multiset of tuples over `I ∪ B`, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multirelation {
    columns: Vec<String>,
    rows: Vec<Vec<Term>>,
}

impl Multirelation {
    /// Sorts `rows`; each must have one entry per column and no variables.
    pub fn new(columns: Vec<String>, mut rows: Vec<Vec<Term>>) -> Result<Self, QueryError> {
        for row in &rows {
            if row.len() != columns.len() {
                return Err(QueryError::NotRelational(format!(
                    "row of length {} for {} columns",
                    row.len(),
                    columns.len()
                )));
            }
            if let Some(v) = row.iter().find(|x| x.is_variable()) {
                return Err(QueryError::NotRelational(format!("variable {v} in a row")));
            }
        }
        rows.sort();
        Ok(Multirelation { columns, rows })
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Term>] {
        &self.rows
    }

    pub fn arity(&self) -> usize {
        self.columns.len()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn multiplicity(&self, row: &[Term]) -> usize {
        self.rows.iter().filter(|r| r.as_slice() == row).count()
    }
}

fn lines_of<'a>(
    h: &'a Graph,
    columns: &[Term],
) -> Result<BTreeMap<&'a Term, BTreeMap<&'a Term, &'a Term>>, String> {
    let mut distinct = BTreeSet::new();
    if !columns.iter().all(|c| distinct.insert(c)) {
        return Err("repeated column".into());
    }
    let mut lines: BTreeMap<&Term, BTreeMap<&Term, &Term>> = BTreeMap::new();
    for t in h {
        if !t.subject.is_blank() {
            return Err(format!("subject of `{t}` is not a blank"));
        }
        if !distinct.contains(&t.predicate) {
            return Err(format!("predicate of `{t}` is not a column"));
        }
        if t.object.is_variable() {
            return Err(format!("object of `{t}` is a variable"));
        }
        if lines
            .entry(&t.subject)
            .or_default()
            .insert(&t.predicate, &t.object)
            .is_some()
        {
            return Err(format!(
                "line {} has two values for {}",
                t.subject, t.predicate
            ));
        }
    }
    for t in h {
        if lines.contains_key(&t.object) {
            return Err(format!("line blank {} also occurs as a value", t.object));
        }
    }
    if let Some((line, _)) = lines.iter().find(|(_, cells)| cells.len() != columns.len()) {
        return Err(format!("line {line} does not fill every column"));
    }
    Ok(lines)
}

/// Whether `h` is a relational data graph on `columns`.
pub fn is_relational(h: &Graph, columns: &[Term]) -> bool {
    lines_of(h, columns).is_ok()
}

/// The multirelation of a relational data graph: one row per line blank.
pub fn rel_of(h: &Graph, columns: &[Term]) -> Result<Multirelation, QueryError> {
    let lines = lines_of(h, columns).map_err(QueryError::NotRelational)?;
    let rows = lines
        .values()
        .map(|cells| columns.iter().map(|c| cells[c].clone()).collect())
        .collect();
    Multirelation::new(columns.iter().map(column_label).collect(), rows)
}

/// Runs `(L, S)` as the CONSTRUCT query `(L, Gr(S))` and reads the result
/// back as a multirelation. With no columns the result has one empty row
/// per match.
pub fn eval_select(
    q: &SelectQuery,
    g: &Graph,
    fresh: &mut FreshNames,
) -> Result<Multirelation, QueryError> {
    if q.columns.is_empty() {
        let k = enumerate_matches(&q.lhs, g).len();
        return Multirelation::new(Vec::new(), vec![Vec::new(); k]);
    }
    let construct = normalize_construct(&q.lhs, &gr_of(&q.columns)?, fresh);
    let h = eval_construct_direct(&construct, g, fresh);
    let predicates: Vec<Term> = q
        .columns
        .iter()
        .map(|c| column_iri(c.local_name().expect("checked variable")))
        .collect();
    let rel = rel_of(&h, &predicates)?;
    Multirelation::new(q.column_names(), rel.rows)
}
