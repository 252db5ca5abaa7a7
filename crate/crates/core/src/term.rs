//! Attributes of graphs: resource identifiers, blanks and variables.

use std::fmt;

/// A literal value, compared structurally on its lexical form, datatype and
/// language tag. No value-space normalization is performed, so `"1"` and
/// `"01"` are different literals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub lexical: String,
    pub datatype: Option<String>,
    pub language: Option<String>,
}

impl Literal {
    pub fn plain(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: None,
            language: None,
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: Some(datatype.into()),
            language: None,
        }
    }

    pub fn lang(lexical: impl Into<String>, language: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: None,
            language: Some(language.into()),
        }
    }
}

/// An attribute of a graph.
///
/// The variant order is the canonical kind rank (`Iri < Literal < Blank <
/// Variable`), and the derived `Ord` then compares lexical parts, which gives
/// the total order used for every enumeration and witness in this crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(String),
    Literal(Literal),
    /// A blank, identified by its local label (without the `_:` prefix).
    Blank(String),
    /// A variable, identified by its name (without the `?` prefix).
    Variable(String),
}

/// Which of the three attribute sets a term belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermClass {
    /// IRIs and literals.
    Identifier,
    Blank,
    Variable,
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Self {
        Term::Iri(value.into())
    }

    pub fn literal(lexical: impl Into<String>) -> Self {
        Term::Literal(Literal::plain(lexical))
    }

    pub fn blank(label: impl Into<String>) -> Self {
        Term::Blank(label.into())
    }

    pub fn var(name: impl Into<String>) -> Self {
        Term::Variable(name.into())
    }

    pub fn class(&self) -> TermClass {
        match self {
            Term::Iri(_) | Term::Literal(_) => TermClass::Identifier,
            Term::Blank(_) => TermClass::Blank,
            Term::Variable(_) => TermClass::Variable,
        }
    }

    pub fn is_identifier(&self) -> bool {
        self.class() == TermClass::Identifier
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Variable(_))
    }

    /// Label of a blank or name of a variable.
    pub fn local_name(&self) -> Option<&str> {
        match self {
            Term::Blank(n) | Term::Variable(n) => Some(n),
            _ => None,
        }
    }
}

pub(crate) fn escape_string(out: &mut impl fmt::Write, s: &str) -> fmt::Result {
    for c in s.chars() {
        match c {
            '"' => out.write_str("\\\"")?,
            '\\' => out.write_str("\\\\")?,
            '\n' => out.write_str("\\n")?,
            '\r' => out.write_str("\\r")?,
            '\t' => out.write_str("\\t")?,
            c => out.write_char(c)?,
        }
    }
    Ok(())
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("\"")?;
        escape_string(f, &self.lexical)?;
        f.write_str("\"")?;
        if let Some(lang) = &self.language {
            write!(f, "@{lang}")?;
        } else if let Some(dt) = &self.datatype {
            write!(f, "^^<{dt}>")?;
        }
        Ok(())
    }
}

/// N-Triples style rendering; variables are written `?name`.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Literal(lit) => lit.fmt(f),
            Term::Blank(label) => write!(f, "_:{label}"),
            Term::Variable(name) => write!(f, "?{name}"),
        }
    }
}

/// A generalized triple: any term kind may occupy any position.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Self {
        Triple {
            subject,
            predicate,
            object,
        }
    }

    pub fn terms(&self) -> [&Term; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn map(&self, mut f: impl FnMut(&Term) -> Term) -> Triple {
        Triple {
            subject: f(&self.subject),
            predicate: f(&self.predicate),
            object: f(&self.object),
        }
    }

    pub fn try_map<E>(&self, mut f: impl FnMut(&Term) -> Result<Term, E>) -> Result<Triple, E> {
        Ok(Triple {
            subject: f(&self.subject)?,
            predicate: f(&self.predicate)?,
            object: f(&self.object)?,
        })
    }

    pub fn contains(&self, term: &Term) -> bool {
        self.terms().contains(&term)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}
