use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::canon::canonical_blank_labels;
use crate::graph::Graph;
use crate::query::Multirelation;
use crate::term::{Term, Triple};

fn relabel(t: &Triple, labels: &BTreeMap<Term, usize>) -> Triple {
    t.map(|x| match labels.get(x) {
        Some(n) => Term::blank(format!("b{n}")),
        None => x.clone(),
    })
}

/// N-Triples text with canonical blank labels `_:b0, _:b1, …`: graphs that
/// are isomorphic fixing identifiers and variables give identical text.
/// Lines are sorted, one triple per line.
pub fn serialize_graph(g: &Graph) -> String {
    let labels = canonical_blank_labels(g);
    let mut rows: Vec<_> = g
        .iter()
        .map(|t| {
            let key = t.terms().map(|x| match labels.get(x) {
                Some(&n) => (1u8, None, n),
                None if x.is_variable() => (2, Some(x), 0),
                None => (0, Some(x), 0),
            });
            (key, t)
        })
        .collect();
    rows.sort();
    let mut out = String::new();
    for (_, t) in rows {
        let _ = writeln!(out, "{}", relabel(t, &labels));
    }
    out
}

/// N-Triples text keeping the graph's own blank labels.
pub fn serialize_raw(g: &Graph) -> String {
    let mut out = String::new();
    for t in g {
        let _ = writeln!(out, "{t}");
    }
    out
}

/// One CSV field, quoted when it contains a comma, quote or line break.
pub fn render_csv_field(value: &str) -> String {
    if value.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

fn csv_cell(x: &Term, labels: &BTreeMap<Term, usize>) -> String {
    match x {
        Term::Iri(iri) => render_csv_field(iri),
        Term::Literal(l) if l.datatype.is_none() && l.language.is_none() => {
            format!("\"{}\"", l.lexical.replace('"', "\"\""))
        }
        Term::Blank(_) => match labels.get(x) {
            Some(n) => format!("_:b{n}"),
            None => render_csv_field(&x.to_string()),
        },
        other => render_csv_field(&other.to_string()),
    }
}

/// CSV with a header of column names. IRIs are bare, plain literals are
/// always quoted, other literals use their N-Triples form, and blanks are
/// relabelled `_:b0, _:b1, …` in order of first appearance.
pub fn serialize_multirelation(r: &Multirelation) -> String {
    let mut labels: BTreeMap<Term, usize> = BTreeMap::new();
    for row in r.rows() {
        for x in row {
            if x.is_blank() && !labels.contains_key(x) {
                let n = labels.len();
                labels.insert(x.clone(), n);
            }
        }
    }
    let mut out = String::new();
    let header: Vec<String> = r.columns().iter().map(|c| render_csv_field(c)).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in r.rows() {
        let cells: Vec<String> = row.iter().map(|x| csv_cell(x, &labels)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
