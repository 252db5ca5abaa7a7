use std::collections::BTreeMap;

use super::lexer::{Lexer, Spanned, Tok};
use super::{DataDocument, ParseError, ParseErrorKind, Query, QueryDocument, Span};
use crate::fresh::FreshNames;
use crate::graph::Graph;
use crate::query::{normalize_construct, SelectQuery};
use crate::term::{Literal, Term, Triple};

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    prefixes: BTreeMap<String, String>,
    allow_variables: bool,
}

impl Parser {
    fn new(text: &str, allow_variables: bool) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: Lexer::new(text).tokenize()?,
            pos: 0,
            prefixes: BTreeMap::new(),
            allow_variables,
        })
    }

    fn peek(&self) -> &Spanned {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> Spanned {
        let t = self.peek().clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error_at(at: &Spanned, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            line: at.line,
            column: at.column,
        }
    }

    fn unexpected(at: &Spanned, wanted: &str) -> ParseError {
        Self::error_at(
            at,
            ParseErrorKind::Syntax(format!("expected {wanted}, found {}", at.tok.describe())),
        )
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<Spanned, ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            Err(Self::unexpected(&t, wanted))
        }
    }

    fn is_keyword(tok: &Tok, keyword: &str) -> bool {
        matches!(tok, Tok::Word(w) if w.eq_ignore_ascii_case(keyword))
    }

    fn expect_keyword(&mut self, keyword: &str) -> Result<(), ParseError> {
        let t = self.next();
        if Self::is_keyword(&t.tok, keyword) {
            Ok(())
        } else {
            Err(Self::unexpected(&t, &format!("`{keyword}`")))
        }
    }

    /// `@prefix p: <iri> .` or `PREFIX p: <iri>`, if one is next.
    fn prefix_decl(&mut self) -> Result<bool, ParseError> {
        let at_form = match &self.peek().tok {
            Tok::AtPrefix => true,
            t if Self::is_keyword(t, "prefix") => false,
            _ => return Ok(false),
        };
        self.next();
        let name = self.next();
        let Tok::PName { prefix, local } = &name.tok else {
            return Err(Self::unexpected(&name, "a prefix name"));
        };
        if !local.is_empty() {
            return Err(Self::unexpected(&name, "a prefix name ending in `:`"));
        }
        let iri = self.next();
        let Tok::IriRef(iri) = iri.tok else {
            return Err(Self::unexpected(&iri, "an IRI"));
        };
        self.prefixes.insert(prefix.clone(), iri);
        if at_form {
            self.expect(Tok::Dot, "`.`")?;
        }
        Ok(true)
    }

    fn iri(&self, at: &Spanned) -> Result<String, ParseError> {
        match &at.tok {
            Tok::IriRef(iri) => Ok(iri.clone()),
            Tok::PName { prefix, local } => match self.prefixes.get(prefix) {
                Some(ns) => Ok(format!("{ns}{local}")),
                None => Err(Self::error_at(
                    at,
                    ParseErrorKind::UndefinedPrefix(prefix.clone()),
                )),
            },
            _ => Err(Self::unexpected(at, "an IRI")),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::IriRef(_) | Tok::PName { .. } => Ok(Term::Iri(self.iri(&t)?)),
            Tok::Blank(label) => Ok(Term::blank(label.clone())),
            Tok::Var(name) => {
                if self.allow_variables {
                    Ok(Term::var(name.clone()))
                } else {
                    Err(Self::error_at(
                        &t,
                        ParseErrorKind::VariableInData(name.clone()),
                    ))
                }
            }
            Tok::Str { lexical, lang } => {
                if let Some(lang) = lang {
                    return Ok(Term::Literal(Literal::lang(lexical.clone(), lang.clone())));
                }
                if self.peek().tok == Tok::DoubleCaret {
                    self.next();
                    let dt = self.next();
                    let dt = self.iri(&dt)?;
                    Ok(Term::Literal(Literal::typed(lexical.clone(), dt)))
                } else {
                    Ok(Term::literal(lexical.clone()))
                }
            }
            Tok::Word(w) if w == "a" => {
                Ok(Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"))
            }
            _ => Err(Self::unexpected(&t, "a term")),
        }
    }

    /// `subject verb object (, object)* (; verb object (, object)*)*`
    fn triples(&mut self, out: &mut Vec<(Triple, Span)>) -> Result<(), ParseError> {
        let start = self.peek();
        let span = Span {
            line: start.line,
            column: start.column,
        };
        let subject = self.term()?;
        loop {
            let predicate = self.term()?;
            loop {
                let object = self.term()?;
                out.push((
                    Triple::new(subject.clone(), predicate.clone(), object),
                    span,
                ));
                if self.peek().tok == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
            if self.peek().tok != Tok::Semicolon {
                return Ok(());
            }
            while self.peek().tok == Tok::Semicolon {
                self.next();
            }
            if matches!(self.peek().tok, Tok::Dot | Tok::RBrace | Tok::Eof) {
                return Ok(());
            }
        }
    }

    /// `{ triples (. triples)* .? }`
    fn group(&mut self) -> Result<Graph, ParseError> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut out = Vec::new();
        loop {
            if self.peek().tok == Tok::RBrace {
                self.next();
                break;
            }
            self.triples(&mut out)?;
            let t = self.next();
            match t.tok {
                Tok::Dot => {}
                Tok::RBrace => break,
                _ => return Err(Self::unexpected(&t, "`.` or `}`")),
            }
        }
        Ok(out.into_iter().map(|(t, _)| t).collect())
    }
}

/// Parses a data file. Variables are rejected.
pub fn parse_data(text: &str) -> Result<DataDocument, ParseError> {
    let mut p = Parser::new(text, false)?;
    let mut out = Vec::new();
    loop {
        if p.peek().tok == Tok::Eof {
            break;
        }
        if p.prefix_decl()? {
            continue;
        }
        p.triples(&mut out)?;
        p.expect(Tok::Dot, "`.`")?;
    }
    let spans = out.iter().map(|(_, s)| *s).collect();
    Ok(DataDocument {
        prefixes: p.prefixes,
        graph: out.into_iter().map(|(t, _)| t).collect(),
        spans,
    })
}

/// Parses a query with a private name generator.
pub fn parse_query(text: &str) -> Result<QueryDocument, ParseError> {
    parse_query_with(text, &mut FreshNames::default())
}

/// Parses a query; `fresh` supplies names for CONSTRUCT template blanks
/// that clash with blanks of the pattern.
pub fn parse_query_with(text: &str, fresh: &mut FreshNames) -> Result<QueryDocument, ParseError> {
    let mut p = Parser::new(text, true)?;
    while p.prefix_decl()? {}
    let head = p.next();
    let query = if Parser::is_keyword(&head.tok, "construct") {
        let template = p.group()?;
        p.expect_keyword("where")?;
        let pattern = p.group()?;
        Query::Construct(normalize_construct(&pattern, &template, fresh))
    } else if Parser::is_keyword(&head.tok, "select") {
        let mut columns: Vec<(Term, Spanned)> = Vec::new();
        while let Tok::Var(name) = &p.peek().tok {
            let at = p.peek().clone();
            let v = Term::var(name.clone());
            if columns.iter().any(|(c, _)| *c == v) {
                return Err(Parser::error_at(
                    &at,
                    ParseErrorKind::DuplicateColumn(name.clone()),
                ));
            }
            columns.push((v, at));
            p.next();
        }
        p.expect_keyword("where")?;
        let pattern = p.group()?;
        let vars = pattern.variables();
        if let Some((c, at)) = columns.iter().find(|(c, _)| !vars.contains(c)) {
            let name = c.local_name().unwrap_or_default().to_string();
            return Err(Parser::error_at(at, ParseErrorKind::UnboundColumn(name)));
        }
        let columns = columns.into_iter().map(|(c, _)| c).collect();
        Query::Select(SelectQuery::new(pattern, columns).expect("columns checked above"))
    } else {
        return Err(Parser::unexpected(&head, "`CONSTRUCT` or `SELECT`"));
    };
    let end = p.next();
    if end.tok != Tok::Eof {
        return Err(Parser::unexpected(&end, "end of input"));
    }
    Ok(QueryDocument {
        prefixes: p.prefixes,
        query,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(s: &str) -> Term {
        Term::iri(format!("http://example.org/{s}"))
    }

    #[test]
    fn turtle_punctuation() {
        let doc = parse_data(
            "@prefix ex: <http://example.org/> .\n\
             ex:a ex:p ex:b , ex:c ; ex:q \"x\"@en ;\n\
             .\n\
             PREFIX e: <http://example.org/>\n\
             _:n e:p \"1\"^^e:int .",
        )
        .unwrap();
        assert_eq!(doc.graph.len(), 4);
        assert!(doc.graph.contains(&Triple::new(
            ex("a"),
            ex("q"),
            Term::Literal(Literal::lang("x", "en"))
        )));
        assert!(doc.graph.contains(&Triple::new(
            Term::blank("n"),
            ex("p"),
            Term::Literal(Literal::typed("1", "http://example.org/int"))
        )));
        assert_eq!(doc.spans[0], Span { line: 2, column: 1 });
        assert_eq!(doc.prefixes.len(), 2);
    }

    #[test]
    fn generalized_positions() {
        let doc = parse_data("\"s\" _:p <o> .").unwrap();
        assert_eq!(
            doc.graph,
            Graph::from_triples([Triple::new(
                Term::literal("s"),
                Term::blank("p"),
                Term::iri("o")
            )])
        );
    }

    #[test]
    fn variable_in_data_is_rejected() {
        let err = parse_data("<a> <p> ?x .").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::VariableInData("x".into()));
        assert_eq!((err.line, err.column), (1, 9));
    }

    #[test]
    fn undefined_prefix() {
        let err = parse_data("<a> <p> nope:x .").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UndefinedPrefix("nope".into()));
    }

    #[test]
    fn missing_dot() {
        let err = parse_data("<a> <p> <b>").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn construct_query() {
        let doc = parse_query(
            "PREFIX ex: <http://example.org/>\n\
             CONSTRUCT { ?x ex:p _:b . } WHERE { ?x ex:q ?y . ?y ex:q _:b }",
        )
        .unwrap();
        let Query::Construct(q) = doc.query else {
            panic!("expected CONSTRUCT")
        };
        assert_eq!(q.lhs().len(), 2);
        assert_eq!(q.rhs().len(), 1);
        assert!(q.rhs().blanks().is_disjoint(&q.lhs().blanks()));
    }

    #[test]
    fn select_query_errors() {
        let err = parse_query("SELECT ?x ?z WHERE { ?x <p> ?y }").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnboundColumn("z".into()));
        assert_eq!((err.line, err.column), (1, 11));
        let err = parse_query("SELECT ?x ?x WHERE { ?x <p> ?y }").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateColumn("x".into()));
    }

    #[test]
    fn select_query() {
        let doc = parse_query("select ?y ?x where { ?x <p> ?y . }").unwrap();
        let Query::Select(q) = doc.query else {
            panic!("expected SELECT")
        };
        assert_eq!(q.column_names(), vec!["y", "x"]);
    }

    #[test]
    fn trailing_garbage() {
        assert!(parse_query("SELECT ?x WHERE { ?x <p> ?y } }").is_err());
    }

    #[test]
    fn garbage_does_not_panic() {
        for text in [
            "",
            "{",
            "}",
            "SELECT",
            "CONSTRUCT {",
            "\"",
            "<",
            "_:",
            "?",
            "@",
            "^",
            "a:b:c",
            ". . .",
        ] {
            let _ = parse_data(text);
            let _ = parse_query(text);
        }
    }
}
