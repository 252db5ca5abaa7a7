//! Categorical semantics for a kernel of RDF and SPARQL.
//!
//! Data graphs and query graphs are finite sets of generalized triples over
//! resource identifiers, blanks and variables. Morphisms are attribute maps
//! that fix a chosen set of attributes. On top of that this crate provides
//! match enumeration, coproducts and pushouts of graphs, the POIM (pushout
//! then image) transformation, three equivalent ways of running basic
//! CONSTRUCT queries, and the encoding of basic SELECT queries as CONSTRUCT
//! queries. The [`syntax`] module reads a Turtle subset and a query subset,
//! and writes N-Triples and CSV.

pub mod colimit;
pub mod error;
pub mod fresh;
pub mod graph;
pub mod iso;
pub mod matching;
pub mod morphism;
pub mod query;
pub mod random;
pub mod syntax;
pub mod term;

pub use colimit::{
    coproduct, image_factorization, poim, poim_shortcut, pushout, replicate_rule, Coproduct,
    Cospan, ImageFactorization, PoimTrace, Pushout, Replicated,
};
pub use error::{ColimitError, MorphismError, QueryError};
pub use fresh::{fresh_blank_rename, FreshNames};
pub use graph::{Attributes, Graph};
pub use iso::iso_check;
pub use matching::{enumerate_matches, match_image, Match};
pub use morphism::{apply_morphism, check_morphism, AttrMap, FixedSet, Morphism};
pub use query::{
    answers_over_rdf, eval_construct, eval_construct_direct, eval_construct_high,
    eval_construct_low, eval_select, filter_well_formed, gr_of, is_relational, is_well_formed,
    normalize_construct, rel_of, ConstructQuery, EvalMode, Multirelation, SelectQuery,
};
pub use term::{Literal, Term, TermClass, Triple};
