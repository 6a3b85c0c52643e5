//! Recursive-descent parser for the term grammar
//!
//! ```text
//! term := sum
//! sum  := prod ("+" prod)*
//! prod := star ((";" | ε) star)*
//! star := atom "*"*
//! atom := "0" | "1" | ident | "~" atom | "(" term ")"
//! ```
//!
//! Identifiers are matched greedily against the declared names, so `qp`
//! reads as `q` followed by `p` unless `qp` itself is declared.

use super::{is_ident_char, Alphabet, KatTerm};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Zero,
    One,
    Name(String),
    /// `x[bits]`, only produced when atom literals are enabled.
    AtomLit(String),
    Tilde,
    Plus,
    Semi,
    Star,
    LParen,
    RParen,
    End,
}

pub(crate) struct Lexer<'s> {
    src: &'s str,
    pos: usize,
    names: Vec<&'s str>,
    atom_literals: bool,
}

impl<'s> Lexer<'s> {
    pub(crate) fn new(src: &'s str, names: Vec<&'s str>, atom_literals: bool) -> Self {
        Lexer {
            src,
            pos: 0,
            names,
            atom_literals,
        }
    }

    /// Returns the next token together with its 1-based column.
    pub(crate) fn next(&mut self) -> Result<(Tok, usize)> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        let column = self.src[..self.pos].chars().count() + 1;
        let Some(c) = trimmed.chars().next() else {
            return Ok((Tok::End, column));
        };
        let single = match c {
            '0' => Some(Tok::Zero),
            '1' => Some(Tok::One),
            '~' => Some(Tok::Tilde),
            '+' => Some(Tok::Plus),
            ';' => Some(Tok::Semi),
            '*' => Some(Tok::Star),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            self.pos += c.len_utf8();
            return Ok((tok, column));
        }
        if self.atom_literals && trimmed.starts_with("x[") {
            let close = trimmed.find(']').ok_or_else(|| Error::Syntax {
                column,
                message: "unterminated atom literal".into(),
            })?;
            let bits = &trimmed[2..close];
            self.pos += close + 1;
            return Ok((Tok::AtomLit(bits.to_string()), column));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let best = self
                .names
                .iter()
                .filter(|n| trimmed.starts_with(**n))
                .max_by_key(|n| n.len());
            return match best {
                Some(name) => {
                    self.pos += name.len();
                    Ok((Tok::Name(name.to_string()), column))
                }
                None => {
                    let run: String = trimmed.chars().take_while(|&c| is_ident_char(c)).collect();
                    Err(Error::UnknownIdentifier { name: run, column })
                }
            };
        }
        Err(Error::Syntax {
            column,
            message: format!("unexpected character `{c}`"),
        })
    }
}

/// Token stream with one token of lookahead.
pub(crate) struct Tokens<'s> {
    lexer: Lexer<'s>,
    peeked: Option<(Tok, usize)>,
}

impl<'s> Tokens<'s> {
    pub(crate) fn new(lexer: Lexer<'s>) -> Self {
        Tokens {
            lexer,
            peeked: None,
        }
    }

    pub(crate) fn peek(&mut self) -> Result<&(Tok, usize)> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next()?);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    pub(crate) fn bump(&mut self) -> Result<(Tok, usize)> {
        self.peek()?;
        Ok(self.peeked.take().unwrap())
    }

    pub(crate) fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let (t, column) = self.bump()?;
        if t == tok {
            Ok(())
        } else {
            Err(Error::Syntax {
                column,
                message: format!("expected {what}, found {}", describe(&t)),
            })
        }
    }
}

pub(crate) fn describe(t: &Tok) -> String {
    match t {
        Tok::Zero => "`0`".into(),
        Tok::One => "`1`".into(),
        Tok::Name(n) => format!("`{n}`"),
        Tok::AtomLit(b) => format!("`x[{b}]`"),
        Tok::Tilde => "`~`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Star => "`*`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Whether `tok` can begin an `atom`, i.e. continue a juxtaposed product.
pub(crate) fn starts_atom(tok: &Tok) -> bool {
    matches!(
        tok,
        Tok::Zero | Tok::One | Tok::Name(_) | Tok::AtomLit(_) | Tok::Tilde | Tok::LParen
    )
}

/// Parses a KAT term and checks that complements only apply to tests.
pub fn parse_term(src: &str, alpha: &Alphabet) -> Result<KatTerm> {
    let mut toks = Tokens::new(Lexer::new(src, alpha.names().collect(), false));
    let term = sum(&mut toks, alpha)?;
    let (t, column) = toks.bump()?;
    if t != Tok::End {
        return Err(Error::Syntax {
            column,
            message: format!("unexpected {}", describe(&t)),
        });
    }
    term.sort()?;
    Ok(term)
}

fn sum(toks: &mut Tokens, alpha: &Alphabet) -> Result<KatTerm> {
    let mut acc = prod(toks, alpha)?;
    while toks.peek()?.0 == Tok::Plus {
        toks.bump()?;
        acc = KatTerm::plus(acc, prod(toks, alpha)?);
    }
    Ok(acc)
}

fn prod(toks: &mut Tokens, alpha: &Alphabet) -> Result<KatTerm> {
    let mut acc = star(toks, alpha)?;
    loop {
        let next = &toks.peek()?.0;
        if *next == Tok::Semi {
            toks.bump()?;
        } else if !starts_atom(next) {
            return Ok(acc);
        }
        acc = KatTerm::times(acc, star(toks, alpha)?);
    }
}

fn star(toks: &mut Tokens, alpha: &Alphabet) -> Result<KatTerm> {
    let mut acc = atom(toks, alpha)?;
    while toks.peek()?.0 == Tok::Star {
        toks.bump()?;
        acc = KatTerm::star(acc);
    }
    Ok(acc)
}

fn atom(toks: &mut Tokens, alpha: &Alphabet) -> Result<KatTerm> {
    let (tok, column) = toks.bump()?;
    match tok {
        Tok::Zero => Ok(KatTerm::Zero),
        Tok::One => Ok(KatTerm::One),
        Tok::Name(name) => {
            if let Some(i) = alpha.program_index(&name) {
                Ok(KatTerm::Prog(i))
            } else if let Some(i) = alpha.test_index(&name) {
                Ok(KatTerm::Test(i))
            } else {
                Err(Error::UnknownIdentifier { name, column })
            }
        }
        Tok::Tilde => {
            let inner = atom(toks, alpha)?;
            if !inner.is_boolean() {
                return Err(Error::Sort(format!(
                    "complement at column {column} applied to a term that is not a test"
                )));
            }
            Ok(KatTerm::not(inner))
        }
        Tok::LParen => {
            let inner = sum(toks, alpha)?;
            toks.expect(Tok::RParen, "`)`")?;
            Ok(inner)
        }
        other => Err(Error::Syntax {
            column,
            message: format!("expected a term, found {}", describe(&other)),
        }),
    }
}
