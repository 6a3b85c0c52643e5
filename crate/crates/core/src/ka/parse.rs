//! KA terms use the KAT grammar without `~`; atoms are written `x[bits]`.

use super::KaTerm;
use crate::error::{Error, Result};
use crate::guarded::{Atom, Letter};
use crate::term::parse::{describe, starts_atom, Lexer, Tok, Tokens};
use crate::term::Alphabet;

/// Parses a KA term, keeping its shape exactly (no simplification).
pub fn parse_ka(src: &str, alpha: &Alphabet) -> Result<KaTerm> {
    let names = alpha.programs().iter().map(String::as_str).collect();
    let mut toks = Tokens::new(Lexer::new(src, names, true));
    let t = sum(&mut toks, alpha)?;
    let (tok, column) = toks.bump()?;
    if tok != Tok::End {
        return Err(Error::Syntax {
            column,
            message: format!("unexpected {}", describe(&tok)),
        });
    }
    Ok(t)
}

fn sum(toks: &mut Tokens, alpha: &Alphabet) -> Result<KaTerm> {
    let mut acc = prod(toks, alpha)?;
    while toks.peek()?.0 == Tok::Plus {
        toks.bump()?;
        acc = KaTerm::raw_plus(&acc, &prod(toks, alpha)?);
    }
    Ok(acc)
}

fn prod(toks: &mut Tokens, alpha: &Alphabet) -> Result<KaTerm> {
    let mut acc = star(toks, alpha)?;
    loop {
        let next = &toks.peek()?.0;
        if *next == Tok::Semi {
            toks.bump()?;
        } else if !starts_atom(next) || *next == Tok::Tilde {
            return Ok(acc);
        }
        acc = KaTerm::raw_times(&acc, &star(toks, alpha)?);
    }
}

fn star(toks: &mut Tokens, alpha: &Alphabet) -> Result<KaTerm> {
    let mut acc = atom(toks, alpha)?;
    while toks.peek()?.0 == Tok::Star {
        toks.bump()?;
        acc = KaTerm::raw_star(&acc);
    }
    Ok(acc)
}

fn atom(toks: &mut Tokens, alpha: &Alphabet) -> Result<KaTerm> {
    let (tok, column) = toks.bump()?;
    match tok {
        Tok::Zero => Ok(KaTerm::zero()),
        Tok::One => Ok(KaTerm::one()),
        Tok::Name(name) => {
            let i = alpha
                .program_index(&name)
                .ok_or(Error::UnknownIdentifier { name, column })?;
            Ok(KaTerm::letter(Letter::Prog(i)))
        }
        Tok::AtomLit(bits) => match Atom::from_bits(&bits) {
            Some(a) if bits.len() == alpha.tests().len() => Ok(KaTerm::letter(Letter::Atom(a))),
            _ => Err(Error::UnknownIdentifier {
                name: format!("x[{bits}]"),
                column,
            }),
        },
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
