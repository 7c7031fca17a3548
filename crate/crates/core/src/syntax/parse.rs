//! Recursive-descent parser for the formula language.
//!
//! ```text
//! formula  := fdisj ;             fdisj := fconj { "\/" fconj } ;
//! fconj    := funit { "/\" funit } ;
//! funit    := "!" funit | "(" formula ")" | fatom | "true" | "false" ;
//! fatom    := cterm "(" ident ")" | ident "(" ident "," ident ")"
//!           | "[" concept "==" "top" "]" | "[" concept "<=" concept "]" ;
//! cterm    := ident | "(" concept ")" ;
//! concept  := cdisj ;             cdisj := cconj { "|" cconj } ;
//! cconj    := cunit { "&" cunit } ;
//! cunit    := "~" cunit | "exists" ident "." cunit | "forall" ident "." cunit
//!           | "(" concept ")" | ident | "top" | "bot" ;
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Concept, Formula};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Or,    // \/
    And,   // /\
    Bang,  // !
    Tilde, // ~
    Pipe,  // |
    Amp,   // &
    LParen,
    RParen,
    LBracket,
    RBracket,
    EqEq, // ==
    Le,   // <=
    Comma,
    Dot,
    True,
    False,
    Top,
    Bot,
    Exists,
    Forall,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{}`", s),
            Tok::Eof => "end of input".to_string(),
            other => {
                let s = match other {
                    Tok::Or => "\\/",
                    Tok::And => "/\\",
                    Tok::Bang => "!",
                    Tok::Tilde => "~",
                    Tok::Pipe => "|",
                    Tok::Amp => "&",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::EqEq => "==",
                    Tok::Le => "<=",
                    Tok::Comma => ",",
                    Tok::Dot => ".",
                    Tok::True => "true",
                    Tok::False => "false",
                    Tok::Top => "top",
                    Tok::Bot => "bot",
                    Tok::Exists => "exists",
                    Tok::Forall => "forall",
                    Tok::Ident(_) | Tok::Eof => unreachable!(),
                };
                format!("`{}`", s)
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = (line, column);
        let next = chars.get(i + 1).copied();
        let (tok, len) = match (c, next) {
            ('\\', Some('/')) => (Tok::Or, 2),
            ('/', Some('\\')) => (Tok::And, 2),
            ('=', Some('=')) => (Tok::EqEq, 2),
            ('<', Some('=')) => (Tok::Le, 2),
            ('!', _) => (Tok::Bang, 1),
            ('~', _) => (Tok::Tilde, 1),
            ('|', _) => (Tok::Pipe, 1),
            ('&', _) => (Tok::Amp, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('[', _) => (Tok::LBracket, 1),
            (']', _) => (Tok::RBracket, 1),
            (',', _) => (Tok::Comma, 1),
            ('.', _) => (Tok::Dot, 1),
            (c, _) if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = match word.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "top" => Tok::Top,
                    "bot" => Tok::Bot,
                    "exists" => Tok::Exists,
                    "forall" => Tok::Forall,
                    _ => Tok::Ident(word),
                };
                (tok, j - i)
            }
            (c, _) => {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: format!("unexpected character `{}`", c),
                })
            }
        };
        out.push(Spanned {
            tok,
            line: start.0,
            column: start.1,
        });
        i += len;
        column += len;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let idx = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[idx].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> Error {
        let s = &self.toks[self.pos];
        Error::Syntax {
            line: s.line,
            column: s.column,
            message: format!("expected {}, found {}", expected, s.tok.describe()),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(&tok.describe()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Tok::Ident(_) => match self.bump() {
                Tok::Ident(s) => Ok(s),
                _ => unreachable!(),
            },
            _ => Err(self.error_here(what)),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut acc = self.fconj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.fconj()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn fconj(&mut self) -> Result<Formula> {
        let mut acc = self.funit()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.funit()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn funit(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.funit()?))
            }
            Tok::True => {
                self.bump();
                Ok(Formula::tautology())
            }
            Tok::False => {
                self.bump();
                Ok(Formula::Falsum)
            }
            Tok::LBracket => {
                self.bump();
                let lhs = self.concept()?;
                match self.peek() {
                    Tok::EqEq => {
                        self.bump();
                        self.expect(Tok::Top)?;
                        self.expect(Tok::RBracket)?;
                        Ok(Formula::eq_top(lhs))
                    }
                    Tok::Le => {
                        self.bump();
                        let rhs = self.concept()?;
                        self.expect(Tok::RBracket)?;
                        Ok(Formula::subsumption(lhs, rhs))
                    }
                    _ => Err(self.error_here("`==` or `<=`")),
                }
            }
            Tok::Ident(name) => {
                self.bump();
                self.expect(Tok::LParen)?;
                let first = self.ident("individual name")?;
                if *self.peek() == Tok::Comma {
                    self.bump();
                    let second = self.ident("individual name")?;
                    self.expect(Tok::RParen)?;
                    Ok(Formula::role(name, first, second))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(Formula::assertion(Concept::Name(name), first))
                }
            }
            Tok::LParen => {
                // `(concept)(ind)` or `(formula)`: try the concept reading first.
                let save = self.pos;
                match self.parenthesised_assertion() {
                    Ok(f) => Ok(f),
                    Err(concept_err) => {
                        let concept_pos = self.pos;
                        self.pos = save;
                        self.bump();
                        match self.formula().and_then(|f| {
                            self.expect(Tok::RParen)?;
                            Ok(f)
                        }) {
                            Ok(f) => Ok(f),
                            Err(formula_err) => {
                                // report whichever reading got further
                                if concept_pos > self.pos {
                                    Err(concept_err)
                                } else {
                                    Err(formula_err)
                                }
                            }
                        }
                    }
                }
            }
            _ => Err(self.error_here("a formula")),
        }
    }

    fn parenthesised_assertion(&mut self) -> Result<Formula> {
        self.expect(Tok::LParen)?;
        let c = self.concept()?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::LParen)?;
        let a = self.ident("individual name")?;
        self.expect(Tok::RParen)?;
        Ok(Formula::assertion(c, a))
    }

    fn concept(&mut self) -> Result<Concept> {
        let mut acc = self.cconj()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.cconj()?;
            acc = Concept::or(acc, rhs);
        }
        Ok(acc)
    }

    fn cconj(&mut self) -> Result<Concept> {
        let mut acc = self.cunit()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.cunit()?;
            acc = Concept::and(acc, rhs);
        }
        Ok(acc)
    }

    fn cunit(&mut self) -> Result<Concept> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Concept::not(self.cunit()?))
            }
            Tok::Exists | Tok::Forall => {
                let universal = self.bump() == Tok::Forall;
                let role = self.ident("role name")?;
                self.expect(Tok::Dot)?;
                let body = self.cunit()?;
                Ok(if universal {
                    Concept::forall(role, body)
                } else {
                    Concept::exists(role, body)
                })
            }
            Tok::LParen => {
                self.bump();
                let c = self.concept()?;
                self.expect(Tok::RParen)?;
                Ok(c)
            }
            Tok::Ident(name) => {
                // a name directly followed by `(` belongs to the formula level
                if *self.peek_at(1) == Tok::LParen {
                    return Err(self.error_here("a concept"));
                }
                self.bump();
                Ok(Concept::Name(name))
            }
            Tok::Top => {
                self.bump();
                Ok(Concept::Top)
            }
            Tok::Bot => {
                self.bump();
                Ok(Concept::bot())
            }
            _ => Err(self.error_here("a concept")),
        }
    }
}

/// Parse a formula; the result is desugared and free of double negation.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    if *p.peek() == Tok::Eof {
        return Err(p.error_here("a formula"));
    }
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error_here("end of input"));
    }
    Ok(f)
}

pub fn parse_concept(text: &str) -> Result<Concept> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let c = p.concept()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error_here("end of input"));
    }
    Ok(c)
}
