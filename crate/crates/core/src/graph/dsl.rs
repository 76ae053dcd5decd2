//! Reader for the line-oriented graph description format:
//!
//! ```text
//! graph example {
//!   vertices: v1 v2 v3;
//!   edges: f1: v2 -> v1; f2: v2 -> v3;
//!   infinite: v2;          # optional, repeatable
//! }
//! ```
//!
//! The `graph <name> { ... }` wrapper and the colons after section keywords
//! are optional, so `vertices v; edges;` is a complete description.

use super::{Graph, GraphBuilder, GraphError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Colon,
    Semi,
    Comma,
    Arrow,
    LBrace,
    RBrace,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

const KEYWORDS: [&str; 4] = ["graph", "vertices", "edges", "infinite"];

fn tokenize(text: &str) -> Result<Vec<Token>, GraphError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let chars: Vec<(usize, char)> = line.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (col, c) = chars[i];
            let at = |tok| Token {
                tok,
                line: lineno + 1,
                column: col + 1,
            };
            match c {
                c if c.is_whitespace() => {
                    i += 1;
                }
                ':' => {
                    out.push(at(Tok::Colon));
                    i += 1;
                }
                ';' => {
                    out.push(at(Tok::Semi));
                    i += 1;
                }
                ',' => {
                    out.push(at(Tok::Comma));
                    i += 1;
                }
                '{' => {
                    out.push(at(Tok::LBrace));
                    i += 1;
                }
                '}' => {
                    out.push(at(Tok::RBrace));
                    i += 1;
                }
                '-' if chars.get(i + 1).map(|p| p.1) == Some('>') => {
                    out.push(at(Tok::Arrow));
                    i += 2;
                }
                c if c.is_ascii_alphabetic() => {
                    let mut j = i;
                    while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_')
                    {
                        j += 1;
                    }
                    let word: String = chars[i..j].iter().map(|p| p.1).collect();
                    out.push(at(Tok::Ident(word)));
                    i = j;
                }
                other => {
                    return Err(GraphError::Syntax {
                        line: lineno + 1,
                        column: col + 1,
                        expected: "identifier or punctuation".into(),
                        found: format!("`{other}`"),
                    })
                }
            }
        }
    }
    let line = text.lines().count().max(1);
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: text.lines().last().map_or(0, |l| l.len()) + 1,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> GraphError {
        let t = &self.tokens[self.pos];
        GraphError::Syntax {
            line: t.line,
            column: t.column,
            expected: expected.into(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), GraphError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&tok.describe()))
        }
    }

    fn ident(&mut self) -> Result<String, GraphError> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("identifier")),
        }
    }

    fn keyword(&self) -> Option<&str> {
        match self.peek() {
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => Some(s.as_str()),
            _ => None,
        }
    }

    fn section_end(&self) -> bool {
        matches!(self.peek(), Tok::RBrace | Tok::Eof) || self.keyword().is_some()
    }

    fn optional_colon(&mut self) {
        if *self.peek() == Tok::Colon {
            self.bump();
        }
    }

    fn graph(&mut self) -> Result<GraphBuilder, GraphError> {
        let mut builder = GraphBuilder::new();
        let braced = if self.keyword() == Some("graph") {
            self.bump();
            builder.set_name(self.ident()?);
            self.expect(Tok::LBrace)?;
            true
        } else {
            false
        };
        loop {
            match self.keyword() {
                Some("vertices") => {
                    self.bump();
                    self.optional_colon();
                    self.vertices(&mut builder)?;
                }
                Some("edges") => {
                    self.bump();
                    self.optional_colon();
                    self.edges(&mut builder)?;
                }
                Some("infinite") => {
                    self.bump();
                    self.optional_colon();
                    self.infinite(&mut builder)?;
                }
                _ => break,
            }
        }
        if braced {
            self.expect(Tok::RBrace)?;
        }
        if *self.peek() != Tok::Eof {
            return Err(self.error(if braced {
                "end of input"
            } else {
                "`vertices`, `edges`, `infinite` or end of input"
            }));
        }
        Ok(builder)
    }

    fn id_list(&mut self) -> Result<Vec<String>, GraphError> {
        let mut ids = Vec::new();
        loop {
            match self.peek() {
                Tok::Semi => {
                    self.bump();
                    return Ok(ids);
                }
                Tok::Comma if !ids.is_empty() => {
                    self.bump();
                }
                Tok::Ident(_) => ids.push(self.ident()?),
                _ => return Err(self.error("identifier or `;`")),
            }
        }
    }

    fn vertices(&mut self, b: &mut GraphBuilder) -> Result<(), GraphError> {
        for id in self.id_list()? {
            b.push_vertex(id);
        }
        Ok(())
    }

    fn infinite(&mut self, b: &mut GraphBuilder) -> Result<(), GraphError> {
        let ids = self.id_list()?;
        if ids.is_empty() {
            return Err(self.error("vertex identifier"));
        }
        for id in ids {
            b.push_infinite(id);
        }
        Ok(())
    }

    fn edges(&mut self, b: &mut GraphBuilder) -> Result<(), GraphError> {
        loop {
            if self.section_end() {
                return Ok(());
            }
            if *self.peek() == Tok::Semi {
                self.bump();
                return Ok(());
            }
            // An edge declaration is `id : id -> id`; anything else here is an error.
            if !matches!(self.peek_at(1), Tok::Colon) {
                self.ident()?;
                return Err(self.error("`:`"));
            }
            let id = self.ident()?;
            self.expect(Tok::Colon)?;
            let source = self.ident()?;
            self.expect(Tok::Arrow)?;
            let range = self.ident()?;
            b.push_edge(id, source, range);
            match self.peek() {
                Tok::Semi => {
                    self.bump();
                }
                _ if self.section_end() => return Ok(()),
                _ => return Err(self.error("`;`")),
            }
        }
    }
}

/// Parses a graph description, reporting the first error with its position.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    parser.graph()?.build()
}
