use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    IriRef(String),
    PName {
        prefix: String,
        local: String,
    },
    Blank(String),
    Var(String),
    Str {
        lexical: String,
        lang: Option<String>,
    },
    DoubleCaret,
    Dot,
    Semicolon,
    Comma,
    LBrace,
    RBrace,
    AtPrefix,
    Word(String),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::IriRef(i) => format!("<{i}>"),
            Tok::PName { prefix, local } => format!("{prefix}:{local}"),
            Tok::Blank(b) => format!("_:{b}"),
            Tok::Var(v) => format!("?{v}"),
            Tok::Str { .. } => "string literal".into(),
            Tok::DoubleCaret => "`^^`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Semicolon => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::AtPrefix => "`@prefix`".into(),
            Tok::Word(w) => format!("`{w}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-' || c == '.' || c == '·'
}

pub(crate) struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Lexer {
    pub(crate) fn new(text: &str) -> Self {
        Lexer {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, column: usize, msg: impl Into<String>) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Syntax(msg.into()),
            line,
            column,
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    /// Reads name characters, leaving any trailing dots unconsumed.
    fn name(&mut self) -> String {
        let start = self.pos;
        let mut end = start;
        while let Some(c) = self.chars.get(end) {
            if is_name_char(*c) {
                end += 1;
            } else {
                break;
            }
        }
        while end > start && self.chars[end - 1] == '.' {
            end -= 1;
        }
        let mut out = String::new();
        while self.pos < end {
            out.push(self.bump().expect("within bounds"));
        }
        out
    }

    pub(crate) fn tokenize(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let (line, column) = (self.line, self.column);
            let Some(c) = self.peek() else {
                out.push(Spanned {
                    tok: Tok::Eof,
                    line,
                    column,
                });
                return Ok(out);
            };
            let tok = match c {
                '<' => self.iri(line, column)?,
                '"' | '\'' => self.string(line, column)?,
                '.' => {
                    self.bump();
                    Tok::Dot
                }
                ';' => {
                    self.bump();
                    Tok::Semicolon
                }
                ',' => {
                    self.bump();
                    Tok::Comma
                }
                '{' => {
                    self.bump();
                    Tok::LBrace
                }
                '}' => {
                    self.bump();
                    Tok::RBrace
                }
                '^' => {
                    self.bump();
                    if self.peek() != Some('^') {
                        return Err(self.error(line, column, "expected `^^`"));
                    }
                    self.bump();
                    Tok::DoubleCaret
                }
                '@' => {
                    self.bump();
                    let word = self.name();
                    if word == "prefix" {
                        Tok::AtPrefix
                    } else {
                        return Err(self.error(
                            line,
                            column,
                            format!("unknown directive `@{word}`"),
                        ));
                    }
                }
                '?' | '$' => {
                    self.bump();
                    let name = self.name();
                    if name.is_empty() || name.contains('.') {
                        return Err(self.error(line, column, "invalid variable name"));
                    }
                    Tok::Var(name)
                }
                '_' if self.peek_at(1) == Some(':') => {
                    self.bump();
                    self.bump();
                    let label = self.name();
                    if label.is_empty() {
                        return Err(self.error(line, column, "empty blank node label"));
                    }
                    Tok::Blank(label)
                }
                ':' => {
                    self.bump();
                    let local = self.name();
                    Tok::PName {
                        prefix: String::new(),
                        local,
                    }
                }
                c if is_name_char(c) => {
                    let word = self.name();
                    if word.is_empty() {
                        return Err(self.error(
                            line,
                            column,
                            format!("unexpected character `{c}`"),
                        ));
                    }
                    if self.peek() == Some(':') {
                        self.bump();
                        let local = self.name();
                        Tok::PName {
                            prefix: word,
                            local,
                        }
                    } else {
                        Tok::Word(word)
                    }
                }
                c => return Err(self.error(line, column, format!("unexpected character `{c}`"))),
            };
            out.push(Spanned { tok, line, column });
        }
    }

    fn iri(&mut self, line: usize, column: usize) -> Result<Tok, ParseError> {
        self.bump();
        let mut iri = String::new();
        loop {
            match self.bump() {
                Some('>') => return Ok(Tok::IriRef(iri)),
                Some(c) if c.is_whitespace() || c == '<' || c == '"' => {
                    return Err(self.error(line, column, "invalid character in IRI"))
                }
                Some(c) => iri.push(c),
                None => return Err(self.error(line, column, "unterminated IRI")),
            }
        }
    }

    fn hex_escape(
        &mut self,
        digits: usize,
        line: usize,
        column: usize,
    ) -> Result<char, ParseError> {
        let mut code = 0u32;
        for _ in 0..digits {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.error(line, column, "invalid unicode escape"))?;
            code = code * 16 + d;
        }
        char::from_u32(code).ok_or_else(|| self.error(line, column, "invalid unicode code point"))
    }

    fn string(&mut self, line: usize, column: usize) -> Result<Tok, ParseError> {
        let quote = self.bump().expect("peeked quote");
        let mut lexical = String::new();
        loop {
            match self.bump() {
                Some(c) if c == quote => break,
                Some('\\') => {
                    let (l, col) = (self.line, self.column);
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('b') => '\u{8}',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_escape(4, l, col)?,
                        Some('U') => self.hex_escape(8, l, col)?,
                        _ => return Err(self.error(l, col, "invalid escape sequence")),
                    };
                    lexical.push(c);
                }
                Some('\n') | Some('\r') | None => {
                    return Err(self.error(line, column, "unterminated string literal"))
                }
                Some(c) => lexical.push(c),
            }
        }
        let mut lang = None;
        if self.peek() == Some('@') {
            let (l, col) = (self.line, self.column);
            self.bump();
            let mut tag = String::new();
            while let Some(c) = self.peek() {
                if c.is_ascii_alphanumeric() || c == '-' {
                    tag.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            if tag.is_empty() || !tag.starts_with(|c: char| c.is_ascii_alphabetic()) {
                return Err(self.error(l, col, "invalid language tag"));
            }
            lang = Some(tag);
        }
        Ok(Tok::Str { lexical, lang })
    }
}
