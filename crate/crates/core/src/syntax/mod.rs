//! Reading and writing graphs, queries and result tables.
//!
//! Data is read from a Turtle subset: `@prefix`/`PREFIX` declarations,
//! IRIs, prefixed names, plain, typed and language-tagged literals, labelled
//! blanks, and `.`, `;`, `,` punctuation. Any term may stand in any
//! position. Queries are `CONSTRUCT { … } WHERE { … }` and
//! `SELECT ?v … WHERE { … }` over the same triple syntax plus variables.
//!
//! Graphs are written as N-Triples with blank labels chosen canonically, so
//! isomorphic graphs (fixing identifiers) print the same text. Result
//! tables are written as CSV.

mod canon;
mod lexer;
mod parser;
mod writer;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::Graph;
use crate::query::{ConstructQuery, SelectQuery};

pub use canon::canonical_blank_labels;
pub use parser::{parse_data, parse_query, parse_query_with};
pub use writer::{render_csv_field, serialize_graph, serialize_multirelation, serialize_raw};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("undefined prefix `{0}:`")]
    UndefinedPrefix(String),
    #[error("variable ?{0} is not allowed in data")]
    VariableInData(String),
    #[error("selected variable ?{0} does not occur in the WHERE pattern")]
    UnboundColumn(String),
    #[error("variable ?{0} is selected more than once")]
    DuplicateColumn(String),
}

/// A parse failure with its 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

/// Where a triple started in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

/// A parsed data file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataDocument {
    pub prefixes: BTreeMap<String, String>,
    pub graph: Graph,
    /// Source positions in file order; repeated triples keep each position.
    pub spans: Vec<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Construct(ConstructQuery),
    Select(SelectQuery),
}

/// A parsed query file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryDocument {
    pub prefixes: BTreeMap<String, String>,
    pub query: Query,
}
