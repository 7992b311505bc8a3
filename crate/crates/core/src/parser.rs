//! Concrete syntax for terms and theory files.
//!
//! Term grammar, loosest to tightest: `;` for sequential composition, `*`
//! for parallel composition, then atoms `id <nat>`, `sym <nat> <nat>`,
//! `fmul`, `funit`, `fcomul`, `fcounit`, `cup <nat>`, `cap <nat>`,
//! generator identifiers, and parentheses. Whitespace is insignificant;
//! `#` starts a line comment.

use std::fmt;

use thiserror::Error;

use crate::term::Term;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Nat(usize),
    Semi,
    Star,
    LParen,
    RParen,
    Colon,
    Arrow,
    RewritesTo,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "`{s}`"),
            TokenKind::Nat(n) => write!(f, "`{n}`"),
            TokenKind::Semi => write!(f, "`;`"),
            TokenKind::Star => write!(f, "`*`"),
            TokenKind::LParen => write!(f, "`(`"),
            TokenKind::RParen => write!(f, "`)`"),
            TokenKind::Colon => write!(f, "`:`"),
            TokenKind::Arrow => write!(f, "`->`"),
            TokenKind::RewritesTo => write!(f, "`=>`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&d) = chars.peek() {
                if d == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        let kind = match c {
            ';' => {
                bump(&mut chars);
                TokenKind::Semi
            }
            '*' => {
                bump(&mut chars);
                TokenKind::Star
            }
            '(' => {
                bump(&mut chars);
                TokenKind::LParen
            }
            ')' => {
                bump(&mut chars);
                TokenKind::RParen
            }
            ':' => {
                bump(&mut chars);
                TokenKind::Colon
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    TokenKind::Arrow
                } else {
                    return Err(ParseError {
                        line: tline,
                        col: tcol,
                        message: "expected `->`".into(),
                    });
                }
            }
            '=' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    TokenKind::RewritesTo
                } else {
                    return Err(ParseError {
                        line: tline,
                        col: tcol,
                        message: "expected `=>`".into(),
                    });
                }
            }
            d if d.is_ascii_digit() => {
                let mut n = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        n.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                TokenKind::Nat(n.parse().map_err(|_| ParseError {
                    line: tline,
                    col: tcol,
                    message: format!("number `{n}` out of range"),
                })?)
            }
            d if d.is_alphabetic() || d == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' || d == '\'' {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                TokenKind::Ident(s)
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        tokens.push(Token {
            kind,
            line: tline,
            col: tcol,
        });
    }
    Ok(tokens)
}

pub struct TokenStream {
    tokens: Vec<Token>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

impl TokenStream {
    pub fn new(text: &str) -> Result<Self, ParseError> {
        let tokens = tokenize(text)?;
        let lines = text.lines().count().max(1);
        Ok(TokenStream {
            tokens,
            pos: 0,
            end_line: lines,
            end_col: text.lines().last().map_or(1, |l| l.chars().count() + 1),
        })
    }

    pub fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    pub fn next_token(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn error_here(&self, message: impl Into<String>) -> ParseError {
        match self.peek() {
            Some(t) => ParseError {
                line: t.line,
                col: t.col,
                message: message.into(),
            },
            None => ParseError {
                line: self.end_line,
                col: self.end_col,
                message: format!("{} (at end of input)", message.into()),
            },
        }
    }

    pub fn expect(&mut self, want: &TokenKind) -> Result<Token, ParseError> {
        match self.peek() {
            Some(t) if t.kind == *want => Ok(self.next_token().unwrap()),
            Some(t) => Err(ParseError {
                line: t.line,
                col: t.col,
                message: format!("expected {want}, found {}", t.kind),
            }),
            None => Err(self.error_here(format!("expected {want}"))),
        }
    }

    pub fn expect_ident(&mut self) -> Result<(String, Token), ParseError> {
        match self.peek() {
            Some(t) => {
                if let TokenKind::Ident(s) = &t.kind {
                    let s = s.clone();
                    let t = self.next_token().unwrap();
                    Ok((s, t))
                } else {
                    Err(self.error_here(format!("expected an identifier, found {}", t.kind)))
                }
            }
            None => Err(self.error_here("expected an identifier")),
        }
    }

    pub fn expect_nat(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Some(t) => {
                if let TokenKind::Nat(n) = t.kind {
                    self.next_token();
                    Ok(n)
                } else {
                    Err(self.error_here(format!("expected a number, found {}", t.kind)))
                }
            }
            None => Err(self.error_here("expected a number")),
        }
    }
}

/// Parse a complete term.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut ts = TokenStream::new(text)?;
    let t = parse_seq(&mut ts)?;
    if let Some(tok) = ts.peek() {
        return Err(ParseError {
            line: tok.line,
            col: tok.col,
            message: format!("unexpected {} after the term", tok.kind),
        });
    }
    Ok(t)
}

/// Parse a term from an already-open token stream (used by theory files,
/// which stop at `=>` or the next declaration).
pub fn parse_seq(ts: &mut TokenStream) -> Result<Term, ParseError> {
    let mut parts = vec![parse_par(ts)?];
    while matches!(ts.peek(), Some(t) if t.kind == TokenKind::Semi) {
        ts.next_token();
        parts.push(parse_par(ts)?);
    }
    Ok(Term::seq_all(parts))
}

fn parse_par(ts: &mut TokenStream) -> Result<Term, ParseError> {
    let mut parts = vec![parse_atom(ts)?];
    while matches!(ts.peek(), Some(t) if t.kind == TokenKind::Star) {
        ts.next_token();
        parts.push(parse_atom(ts)?);
    }
    Ok(Term::par_all(parts))
}

fn parse_atom(ts: &mut TokenStream) -> Result<Term, ParseError> {
    let Some(tok) = ts.peek().cloned() else {
        return Err(ts.error_here("expected a term"));
    };
    match tok.kind {
        TokenKind::LParen => {
            ts.next_token();
            let t = parse_seq(ts)?;
            ts.expect(&TokenKind::RParen)?;
            Ok(t)
        }
        TokenKind::Ident(name) => {
            ts.next_token();
            match name.as_str() {
                "id" => Ok(Term::Id(ts.expect_nat()?)),
                "sym" => {
                    let n = ts.expect_nat()?;
                    let m = ts.expect_nat()?;
                    Ok(Term::Sym(n, m))
                }
                "cup" => Ok(Term::Cup(ts.expect_nat()?)),
                "cap" => Ok(Term::Cap(ts.expect_nat()?)),
                "fmul" => Ok(Term::FMul),
                "funit" => Ok(Term::FUnit),
                "fcomul" => Ok(Term::FComul),
                "fcounit" => Ok(Term::FCounit),
                _ => Ok(Term::Gen(name)),
            }
        }
        other => Err(ParseError {
            line: tok.line,
            col: tok.col,
            message: format!("expected a term, found {other}"),
        }),
    }
}
