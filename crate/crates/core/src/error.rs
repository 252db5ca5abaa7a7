use thiserror::Error;

use crate::term::{Term, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("attribute {0} has no image under the map")]
    Totality(Term),
    #[error("fixed attribute {0} is mapped to {1}")]
    NotFixed(Term, Term),
    #[error("image of triple `{0}` is not in the target graph")]
    NotInTarget(Triple),
    #[error("cannot compose: the first target differs from the second source")]
    Mismatch,
    #[error("morphism is not invertible")]
    NotInvertible,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("variable {0} is selected more than once")]
    DuplicateColumn(Term),
    #[error("selected variable {0} does not occur in the pattern")]
    UnboundColumn(Term),
    #[error("{0} is not a variable")]
    NotAVariable(Term),
    #[error("graph is not relational: {0}")]
    NotRelational(String),
    #[error("invalid match: {0}")]
    InvalidMatch(#[from] MorphismError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColimitError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}
