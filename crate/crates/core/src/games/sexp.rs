//! Minimal s-expression reader with source positions.
//!
//! Atoms are maximal runs of characters other than whitespace, `(`, `)` and
//! `;`. A `;` starts a comment running to the end of the line.

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn at(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }
}

#[derive(Debug)]
enum Token {
    Open(Pos),
    Close(Pos),
    Atom(String, Pos),
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut column = 0;
    let mut chars = text.chars().peekable();
    let mut atom: Option<(String, Pos)> = None;

    let flush = |atom: &mut Option<(String, Pos)>, tokens: &mut Vec<Token>| {
        if let Some((s, p)) = atom.take() {
            tokens.push(Token::Atom(s, p));
        }
    };

    while let Some(c) = chars.next() {
        column += 1;
        let pos = Pos { line, column };
        match c {
            '(' => {
                flush(&mut atom, &mut tokens);
                tokens.push(Token::Open(pos));
            }
            ')' => {
                flush(&mut atom, &mut tokens);
                tokens.push(Token::Close(pos));
            }
            ';' => {
                flush(&mut atom, &mut tokens);
                while let Some(&n) = chars.peek() {
                    if n == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            c if c.is_whitespace() => {
                flush(&mut atom, &mut tokens);
                if c == '\n' {
                    line += 1;
                    column = 0;
                }
            }
            c => match &mut atom {
                Some((s, _)) => s.push(c),
                None => atom = Some((c.to_string(), pos)),
            },
        }
    }
    flush(&mut atom, &mut tokens);
    tokens
}

/// Reads exactly one top-level expression.
pub fn read_one(text: &str) -> Result<Sexp, ParseError> {
    let tokens = tokenize(text);
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    let mut done: Option<Sexp> = None;

    for token in tokens {
        let expr = match token {
            Token::Open(p) => {
                stack.push((Vec::new(), p));
                continue;
            }
            Token::Close(p) => match stack.pop() {
                Some((items, open)) => Sexp::List(items, open),
                None => return Err(ParseError::at(p, "unbalanced `)`")),
            },
            Token::Atom(s, p) => Sexp::Atom(s, p),
        };
        match stack.last_mut() {
            Some((items, _)) => items.push(expr),
            None if done.is_some() => return Err(ParseError::at(expr.pos(), "trailing input after expression")),
            None => done = Some(expr),
        }
    }
    if let Some((_, open)) = stack.last() {
        return Err(ParseError::at(*open, "unclosed `(`"));
    }
    done.ok_or(ParseError {
        line: 1,
        column: 1,
        message: "empty input".into(),
    })
}
