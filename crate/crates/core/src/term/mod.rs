//! KAT terms over a declared alphabet of atomic programs and primitive tests.
//!
//! Terms are plain trees; identifiers are resolved to indices into the
//! [`Alphabet`] at parse time, so a term is only meaningful together with the
//! alphabet it was parsed against.

mod nnf;
pub(crate) mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guarded::Signature;

pub use nnf::{apply_nnf_rewrite, nnf_trace, to_nnf, NnfAxiom, NnfRewrite};
pub use parse::parse_term;

/// Largest supported number of primitive tests. Every construction enumerates
/// the `2^|B|` atoms.
pub const MAX_TESTS: usize = 16;

const RESERVED: &[&str] = &["skip", "if", "then", "else", "while", "do", "true", "false"];

/// Declared program letters `P` and primitive tests `B`, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    programs: Vec<String>,
    tests: Vec<String>,
}

impl Alphabet {
    pub fn new<P, T>(programs: P, tests: T) -> Result<Self>
    where
        P: IntoIterator,
        P::Item: Into<String>,
        T: IntoIterator,
        T::Item: Into<String>,
    {
        let programs: Vec<String> = programs.into_iter().map(Into::into).collect();
        let tests: Vec<String> = tests.into_iter().map(Into::into).collect();
        let mut seen = std::collections::BTreeSet::new();
        for name in programs.iter().chain(&tests) {
            if !is_identifier(name) {
                return Err(Error::Alphabet(format!(
                    "`{name}` is not a valid identifier"
                )));
            }
            if RESERVED.contains(&name.as_str()) {
                return Err(Error::Alphabet(format!("`{name}` is a reserved word")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::Alphabet(format!("`{name}` is declared twice")));
            }
        }
        Ok(Alphabet { programs, tests })
    }

    /// Builds an alphabet from comma-separated lists such as `"p,q"` and `"b"`.
    /// Empty strings denote empty lists.
    pub fn from_lists(programs: &str, tests: &str) -> Result<Self> {
        fn split(s: &str) -> Vec<String> {
            s.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect()
        }
        Alphabet::new(split(programs), split(tests))
    }

    pub fn programs(&self) -> &[String] {
        &self.programs
    }

    pub fn tests(&self) -> &[String] {
        &self.tests
    }

    pub fn program_index(&self, name: &str) -> Option<usize> {
        self.programs.iter().position(|p| p == name)
    }

    pub fn test_index(&self, name: &str) -> Option<usize> {
        self.tests.iter().position(|b| b == name)
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.programs.len(), self.tests.len())
    }

    /// Fails when the atom set would be too large to enumerate.
    pub fn check_test_cap(&self) -> Result<()> {
        if self.tests.len() > MAX_TESTS {
            Err(Error::TooManyTests(self.tests.len()))
        } else {
            Ok(())
        }
    }

    pub(crate) fn names(&self) -> impl Iterator<Item = &str> {
        self.programs.iter().chain(&self.tests).map(String::as_str)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(is_ident_char)
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Sort of a KAT term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sort {
    Boolean,
    Program,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KatTerm {
    Zero,
    One,
    Prog(usize),
    Test(usize),
    Not(Box<KatTerm>),
    Plus(Box<KatTerm>, Box<KatTerm>),
    Times(Box<KatTerm>, Box<KatTerm>),
    Star(Box<KatTerm>),
}

impl KatTerm {
    #[allow(clippy::should_implement_trait)]
    pub fn not(t: KatTerm) -> KatTerm {
        KatTerm::Not(Box::new(t))
    }

    pub fn plus(a: KatTerm, b: KatTerm) -> KatTerm {
        KatTerm::Plus(Box::new(a), Box::new(b))
    }

    pub fn times(a: KatTerm, b: KatTerm) -> KatTerm {
        KatTerm::Times(Box::new(a), Box::new(b))
    }

    pub fn star(a: KatTerm) -> KatTerm {
        KatTerm::Star(Box::new(a))
    }

    /// Left-nested sum of `terms`; `0` when empty.
    pub fn sum_of(terms: impl IntoIterator<Item = KatTerm>) -> KatTerm {
        terms
            .into_iter()
            .reduce(KatTerm::plus)
            .unwrap_or(KatTerm::Zero)
    }

    /// Left-nested product of `terms`; `1` when empty.
    pub fn product_of(terms: impl IntoIterator<Item = KatTerm>) -> KatTerm {
        terms
            .into_iter()
            .reduce(KatTerm::times)
            .unwrap_or(KatTerm::One)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            KatTerm::Zero | KatTerm::One | KatTerm::Prog(_) | KatTerm::Test(_) => 1,
            KatTerm::Not(a) | KatTerm::Star(a) => 1 + a.size(),
            KatTerm::Plus(a, b) | KatTerm::Times(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn children(&self) -> Vec<&KatTerm> {
        match self {
            KatTerm::Zero | KatTerm::One | KatTerm::Prog(_) | KatTerm::Test(_) => vec![],
            KatTerm::Not(a) | KatTerm::Star(a) => vec![a],
            KatTerm::Plus(a, b) | KatTerm::Times(a, b) => vec![a, b],
        }
    }

    /// Computes the sort, rejecting complements of non-Boolean subterms.
    pub fn sort(&self) -> Result<Sort> {
        Ok(match self {
            KatTerm::Zero | KatTerm::One | KatTerm::Test(_) => Sort::Boolean,
            KatTerm::Prog(_) => Sort::Program,
            KatTerm::Not(a) => match a.sort()? {
                Sort::Boolean => Sort::Boolean,
                Sort::Program => {
                    return Err(Error::Sort(
                        "complement applied to a term that is not a test".into(),
                    ))
                }
            },
            KatTerm::Plus(a, b) | KatTerm::Times(a, b) => match (a.sort()?, b.sort()?) {
                (Sort::Boolean, Sort::Boolean) => Sort::Boolean,
                _ => Sort::Program,
            },
            KatTerm::Star(a) => {
                a.sort()?;
                Sort::Program
            }
        })
    }

    pub fn is_boolean(&self) -> bool {
        matches!(self.sort(), Ok(Sort::Boolean))
    }

    /// True when every complement is applied directly to a primitive test.
    pub fn is_nnf(&self) -> bool {
        match self {
            KatTerm::Not(a) => matches!(**a, KatTerm::Test(_)),
            _ => self.children().into_iter().all(KatTerm::is_nnf),
        }
    }

    /// Subterm at `path`, where each step selects child 0 or 1.
    pub fn at_path(&self, path: &[usize]) -> Option<&KatTerm> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i)?.at_path(rest),
        }
    }

    pub fn display<'a>(&'a self, alpha: &'a Alphabet) -> TermDisplay<'a> {
        TermDisplay { term: self, alpha }
    }

    /// Rendering against `alpha`; re-parses to the same tree.
    pub fn to_text(&self, alpha: &Alphabet) -> String {
        self.display(alpha).to_string()
    }
}

pub struct TermDisplay<'a> {
    term: &'a KatTerm,
    alpha: &'a Alphabet,
}

// Precedence levels: sum < product < star < atom.
const SUM: u8 = 0;
const PROD: u8 = 1;
const STAR: u8 = 2;
const ATOM: u8 = 3;

impl TermDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, t: &KatTerm, level: u8) -> fmt::Result {
        let own = match t {
            KatTerm::Plus(..) => SUM,
            KatTerm::Times(..) => PROD,
            KatTerm::Star(_) => STAR,
            _ => ATOM,
        };
        if own < level {
            f.write_str("(")?;
            self.write(f, t, own)?;
            return f.write_str(")");
        }
        match t {
            KatTerm::Zero => f.write_str("0"),
            KatTerm::One => f.write_str("1"),
            KatTerm::Prog(i) => f.write_str(&self.alpha.programs[*i]),
            KatTerm::Test(i) => f.write_str(&self.alpha.tests[*i]),
            KatTerm::Not(a) => {
                f.write_str("~")?;
                self.write(f, a, ATOM)
            }
            KatTerm::Plus(a, b) => {
                self.write(f, a, SUM)?;
                f.write_str(" + ")?;
                self.write(f, b, PROD)
            }
            KatTerm::Times(a, b) => {
                self.write(f, a, PROD)?;
                f.write_str(" ")?;
                self.write(f, b, STAR)
            }
            KatTerm::Star(a) => {
                self.write(f, a, STAR)?;
                f.write_str("*")
            }
        }
    }
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.term, SUM)
    }
}
