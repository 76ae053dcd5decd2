//! Text form of elements.
//!
//! ```text
//! element := ['+'|'-'] term (('+'|'-') term)*
//! term    := scalar ['*' product] | product
//! product := factor (['.'] factor)*        juxtaposition only before '('
//! factor  := atom ['*']                    postfix '*' is the involution
//! atom    := identifier | '(' element ')'
//! scalar  := integer ['/' integer]
//! ```
//!
//! So `f2.(f4.f3)* - 3*v1`, `f2(f4.f3)*` and `f2*.f2` all parse. A bare
//! scalar stands for that multiple of the identity.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::graph::Symbol;

use super::{Algebra, Coefficient, CoefficientError, Element, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("at column {column}: expected {expected}, found {found}")]
    Syntax {
        column: usize,
        expected: String,
        found: String,
    },
    #[error("at column {column}: unknown identifier `{name}`")]
    UnknownIdentifier { column: usize, name: String },
    #[error("at column {column}: {source}")]
    Coefficient {
        column: usize,
        source: CoefficientError,
    },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Dot,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::End => write!(f, "end of expression"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '.' => Some(Tok::Dot),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(ExprError::Syntax {
                column: col,
                expected: "a term".into(),
                found: format!("`{c}`"),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a, R: Coefficient> {
    alg: &'a Algebra<R>,
    tokens: Vec<(Tok, usize)>,
    pos: usize,
}

impl<R: Coefficient> Parser<'_, R> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn column(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ExprError {
        ExprError::Syntax {
            column: self.column(),
            expected: expected.into(),
            found: self.peek().to_string(),
        }
    }

    fn element(&mut self) -> Result<Element<R>, ExprError> {
        let mut negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = Element::zero();
        loop {
            let t = self.term()?;
            acc = if negate { acc - t } else { acc + t };
            negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            self.bump();
        }
    }

    fn term(&mut self) -> Result<Element<R>, ExprError> {
        if let Tok::Int(_) = self.peek() {
            let c = self.scalar()?;
            if *self.peek() == Tok::Star {
                self.bump();
                return Ok(self.product()?.scale(&c));
            }
            return Ok(self.alg.identity().scale(&c));
        }
        self.product()
    }

    fn scalar(&mut self) -> Result<R, ExprError> {
        let col = self.column();
        let Tok::Int(num) = self.bump() else {
            unreachable!("caller checked for an integer")
        };
        let ctx = self.alg.context();
        if *self.peek() == Tok::Slash {
            self.bump();
            let Tok::Int(den) = self.peek().clone() else {
                return Err(self.error("an integer denominator"));
            };
            self.bump();
            R::from_ratio(ctx, &num, &den).map_err(|source| ExprError::Coefficient { column: col, source })
        } else {
            Ok(R::from_integer(ctx, &num))
        }
    }

    fn product(&mut self) -> Result<Element<R>, ExprError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Dot => {
                    self.bump();
                }
                Tok::LParen => {}
                _ => return Ok(acc),
            }
            let next = self.factor()?;
            acc = self.alg.mul(&acc, &next);
        }
    }

    fn factor(&mut self) -> Result<Element<R>, ExprError> {
        let mut x = self.atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            x = self.alg.involution(&x);
        }
        Ok(x)
    }

    fn atom(&mut self) -> Result<Element<R>, ExprError> {
        let col = self.column();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                match self.alg.graph().lookup(&name) {
                    Some(Symbol::Vertex(v)) => Ok(self.alg.vertex(v)),
                    Some(Symbol::Edge(e)) => Ok(self.alg.edge(e)),
                    None => Err(ExprError::UnknownIdentifier { column: col, name }),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.element()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("an identifier or `(`")),
        }
    }
}

impl<R: Coefficient> Algebra<R> {
    /// Parses an element expression over this algebra's graph and ring.
    pub fn parse(&self, text: &str) -> Result<Element<R>, ExprError> {
        let tokens = tokenize(text)?;
        let mut p = Parser {
            alg: self,
            tokens,
            pos: 0,
        };
        let e = p.element()?;
        if *p.peek() != Tok::End {
            return Err(p.error("`+`, `-` or end of expression"));
        }
        Ok(e)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let g = self.graph();
        let ghost = |p: &crate::graph::Path| {
            if p.len() == 1 {
                format!("{}*", g.format_path(p))
            } else {
                format!("({})*", g.format_path(p))
            }
        };
        match (m.alpha.is_vertex(), m.beta.is_vertex()) {
            (true, true) => g.format_path(&m.alpha),
            (false, true) => g.format_path(&m.alpha),
            (true, false) => ghost(&m.beta),
            (false, false) => format!("{}.{}", g.format_path(&m.alpha), ghost(&m.beta)),
        }
    }

    /// Renders an element in a form [`Algebra::parse`] reads back.
    pub fn format(&self, e: &Element<R>) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in e.terms().enumerate() {
            let (neg, mag) = if c.is_negative() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&self.format_monomial(m));
        }
        out
    }
}
