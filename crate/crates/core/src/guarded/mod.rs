//! Guarded strings and the bounded denotation `G(t)`.
//!
//! After substituting a fresh letter `x[bits]` for every atom, a guarded
//! string is a word over `P ∪ {x_i}` that starts and ends with an atom and
//! alternates atoms and programs. [`denote`] enumerates every such word of a
//! term up to a length cap; it is the brute-force reference the automaton
//! construction is checked against.

mod residual;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::term::{Alphabet, KatTerm, MAX_TESTS};

pub use residual::{Residual, ResidualOracle};

/// Letter counts of an alphabet: enough to enumerate `P ∪ {x_i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub programs: usize,
    pub tests: usize,
}

impl Signature {
    pub fn new(programs: usize, tests: usize) -> Self {
        Signature { programs, tests }
    }

    pub fn atom_count(&self) -> u32 {
        1u32 << self.tests
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> {
        (0..self.atom_count()).map(Atom)
    }

    pub fn letter_count(&self) -> usize {
        self.programs + self.atom_count() as usize
    }

    /// Extended alphabet in canonical order: programs, then atoms by index.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.programs)
            .map(Letter::Prog)
            .chain(self.atoms().map(Letter::Atom))
            .collect()
    }

    /// Position of `l` in [`Signature::letters`], if it belongs to the alphabet.
    pub fn letter_index(&self, l: Letter) -> Option<usize> {
        match l {
            Letter::Prog(p) if p < self.programs => Some(p),
            Letter::Atom(a) if a.0 < self.atom_count() => Some(self.programs + a.0 as usize),
            _ => None,
        }
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.letter_index(l).is_some()
    }
}

/// An atom of the free Boolean algebra on `B`, identified by its index.
///
/// Bit `j` of the index, counted from the most significant of `|B|` bits,
/// is set exactly when the `j`-th declared test occurs positively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(pub u32);

impl Atom {
    pub fn index(self) -> u32 {
        self.0
    }

    /// Truth of test `test` under this atom.
    pub fn holds(self, test: usize, tests: usize) -> bool {
        (self.0 >> (tests - 1 - test)) & 1 == 1
    }

    pub fn bits(self, tests: usize) -> String {
        (0..tests)
            .map(|j| if self.holds(j, tests) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bits(bits: &str) -> Option<Atom> {
        if bits.len() > MAX_TESTS || !bits.chars().all(|c| c == '0' || c == '1') {
            return None;
        }
        Some(Atom(
            bits.chars()
                .fold(0, |acc, c| (acc << 1) | (c == '1') as u32),
        ))
    }

    /// The atom as a product of literals, e.g. `b ~c`; `1` when `B` is empty.
    pub fn as_term(self, tests: usize) -> KatTerm {
        KatTerm::product_of((0..tests).map(|j| {
            if self.holds(j, tests) {
                KatTerm::Test(j)
            } else {
                KatTerm::not(KatTerm::Test(j))
            }
        }))
    }
}

/// A letter of the extended alphabet `P ∪ {x_i}`. Programs order before atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Prog(usize),
    Atom(Atom),
}

impl Letter {
    pub fn is_atom(self) -> bool {
        matches!(self, Letter::Atom(_))
    }

    pub fn as_atom(self) -> Option<Atom> {
        match self {
            Letter::Atom(a) => Some(a),
            Letter::Prog(_) => None,
        }
    }
}

impl Alphabet {
    /// Text form of a letter: the program name or `x[bits]`.
    pub fn letter_text(&self, l: Letter) -> String {
        match l {
            Letter::Prog(p) => self.programs()[p].clone(),
            Letter::Atom(a) => format!("x[{}]", a.bits(self.tests().len())),
        }
    }

    /// File-format label: `prog:NAME` or `atom:BITS`.
    pub fn letter_label(&self, l: Letter) -> String {
        match l {
            Letter::Prog(p) => format!("prog:{}", self.programs()[p]),
            Letter::Atom(a) => format!("atom:{}", a.bits(self.tests().len())),
        }
    }

    pub fn parse_letter_label(&self, label: &str) -> Result<Letter> {
        let unknown = || Error::UnknownLetter(label.to_string());
        if let Some(name) = label.strip_prefix("prog:") {
            return self
                .program_index(name)
                .map(Letter::Prog)
                .ok_or_else(unknown);
        }
        if let Some(bits) = label.strip_prefix("atom:") {
            if bits.len() != self.tests().len() {
                return Err(unknown());
            }
            return Atom::from_bits(bits).map(Letter::Atom).ok_or_else(unknown);
        }
        Err(unknown())
    }

    /// Parses the text form produced by [`Alphabet::letter_text`].
    pub fn parse_letter_text(&self, text: &str) -> Result<Letter> {
        if let Some(bits) = text.strip_prefix("x[").and_then(|r| r.strip_suffix(']')) {
            if bits.len() == self.tests().len() {
                if let Some(a) = Atom::from_bits(bits) {
                    return Ok(Letter::Atom(a));
                }
            }
        }
        self.program_index(text)
            .map(Letter::Prog)
            .ok_or_else(|| Error::UnknownLetter(text.to_string()))
    }

    pub fn word_text(&self, word: &[Letter]) -> String {
        word.iter()
            .map(|&l| self.letter_text(l))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A non-empty word alternating atoms and programs, beginning and ending with
/// an atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GuardedWord(Vec<Letter>);

impl GuardedWord {
    pub fn new(letters: Vec<Letter>) -> Option<Self> {
        is_guarded(&letters).then_some(GuardedWord(letters))
    }

    pub fn atom(a: Atom) -> Self {
        GuardedWord(vec![Letter::Atom(a)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> Atom {
        self.0[0]
            .as_atom()
            .expect("guarded words start with an atom")
    }

    pub fn last(&self) -> Atom {
        self.0[self.0.len() - 1]
            .as_atom()
            .expect("guarded words end with an atom")
    }

    pub fn display<'a>(&'a self, alpha: &'a Alphabet) -> impl fmt::Display + 'a {
        WordDisplay(&self.0, alpha)
    }
}

struct WordDisplay<'a>(&'a [Letter], &'a Alphabet);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.1.word_text(self.0))
    }
}

/// Whether `letters` is a guarded string (non-empty, atom-bounded, alternating).
pub fn is_guarded(letters: &[Letter]) -> bool {
    letters.len() % 2 == 1
        && letters
            .iter()
            .enumerate()
            .all(|(i, l)| l.is_atom() == (i % 2 == 0))
}

/// Every guarded string over `sig` with at most `bound` letters, shortest
/// first.
pub fn guarded_words(sig: Signature, bound: usize) -> Vec<Vec<Letter>> {
    if bound == 0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<Letter>> = sig.atoms().map(|a| vec![Letter::Atom(a)]).collect();
    let mut start = 0;
    while out.last().is_some_and(|w| w.len() + 2 <= bound) {
        let end = out.len();
        for i in start..end {
            for p in 0..sig.programs {
                for a in sig.atoms() {
                    let mut w = out[i].clone();
                    w.push(Letter::Prog(p));
                    w.push(Letter::Atom(a));
                    out.push(w);
                }
            }
        }
        if out.len() == end {
            break;
        }
        start = end;
    }
    out
}

/// `x ⋄ y`: fuse `x` and `y` on their shared boundary atom, or `None` when
/// `last(x) != first(y)`.
pub fn diamond(x: &GuardedWord, y: &GuardedWord) -> Option<GuardedWord> {
    (x.last() == y.first()).then(|| {
        let mut out = x.0.clone();
        out.extend_from_slice(&y.0[1..]);
        GuardedWord(out)
    })
}

/// A finite slice of `G(t)`: every member of length at most `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedLanguage {
    pub bound: usize,
    pub words: BTreeSet<GuardedWord>,
}

impl BoundedLanguage {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        GuardedWord::new(w.to_vec()).is_some_and(|g| self.words.contains(&g))
    }

    /// Words as plain letter sequences, for comparison with automata.
    pub fn letter_words(&self) -> BTreeSet<Vec<Letter>> {
        self.words.iter().map(|w| w.0.clone()).collect()
    }
}

/// Every atom of the free Boolean algebra on the declared tests, by index.
pub fn all_atoms(alpha: &Alphabet) -> Result<Vec<Atom>> {
    alpha.check_test_cap()?;
    Ok(alpha.signature().atoms().collect())
}

/// Ordered extended alphabet `P ∪ {x_1..x_z}`: programs first, then atoms.
pub fn extended_alphabet(alpha: &Alphabet) -> Result<Vec<Letter>> {
    alpha.check_test_cap()?;
    Ok(alpha.signature().letters())
}

/// Propositional truth of a Boolean-sorted term under the valuation `atom`.
pub fn atom_satisfies(atom: Atom, t: &KatTerm, tests: usize) -> Result<bool> {
    Ok(match t {
        KatTerm::Zero => false,
        KatTerm::One => true,
        KatTerm::Test(j) => atom.holds(*j, tests),
        KatTerm::Not(a) => !atom_satisfies(atom, a, tests)?,
        KatTerm::Plus(a, b) => atom_satisfies(atom, a, tests)? | atom_satisfies(atom, b, tests)?,
        KatTerm::Times(a, b) => atom_satisfies(atom, a, tests)? & atom_satisfies(atom, b, tests)?,
        KatTerm::Prog(_) | KatTerm::Star(_) => {
            return Err(Error::Sort(
                "atom satisfaction is only defined for tests".into(),
            ))
        }
    })
}

type WordSet = HashSet<Vec<Letter>>;

/// All guarded strings of `G(t)` with at most `bound` letters.
pub fn denote(t: &KatTerm, alpha: &Alphabet, bound: usize) -> Result<BoundedLanguage> {
    alpha.check_test_cap()?;
    t.sort()?;
    let sig = alpha.signature();
    let words = eval(t, sig, bound)?;
    Ok(BoundedLanguage {
        bound,
        words: words.into_iter().map(GuardedWord).collect(),
    })
}

fn eval(t: &KatTerm, sig: Signature, bound: usize) -> Result<WordSet> {
    if bound == 0 {
        return Ok(WordSet::new());
    }
    if t.is_boolean() {
        let mut out = WordSet::new();
        for a in sig.atoms() {
            if atom_satisfies(a, t, sig.tests)? {
                out.insert(vec![Letter::Atom(a)]);
            }
        }
        return Ok(out);
    }
    Ok(match t {
        KatTerm::Prog(p) => {
            let mut out = WordSet::new();
            if bound >= 3 {
                for a in sig.atoms() {
                    for b in sig.atoms() {
                        out.insert(vec![Letter::Atom(a), Letter::Prog(*p), Letter::Atom(b)]);
                    }
                }
            }
            out
        }
        KatTerm::Plus(a, b) => {
            let mut out = eval(a, sig, bound)?;
            out.extend(eval(b, sig, bound)?);
            out
        }
        KatTerm::Times(a, b) => {
            let left = eval(a, sig, bound)?;
            let right = eval(b, sig, bound)?;
            product(&left, &right, bound)
        }
        KatTerm::Star(a) => {
            let body = eval(a, sig, bound)?;
            let mut all: WordSet = sig.atoms().map(|a| vec![Letter::Atom(a)]).collect();
            let mut frontier = all.clone();
            while !frontier.is_empty() {
                let next: WordSet = product(&frontier, &body, bound)
                    .into_iter()
                    .filter(|w| !all.contains(w))
                    .collect();
                all.extend(next.iter().cloned());
                frontier = next;
            }
            all
        }
        // Boolean-sorted terms were handled above; the remaining cases are
        // not sort-correct.
        _ => {
            return Err(Error::Sort(
                "complement applied to a term that is not a test".into(),
            ))
        }
    })
}

/// Bounded `C · D = { x ⋄ y }`.
fn product(left: &WordSet, right: &WordSet, bound: usize) -> WordSet {
    let mut by_first: HashMap<Letter, Vec<&Vec<Letter>>> = HashMap::new();
    for w in right {
        by_first.entry(w[0]).or_default().push(w);
    }
    let mut out = WordSet::new();
    for x in left {
        let Some(ys) = by_first.get(&x[x.len() - 1]) else {
            continue;
        };
        for y in ys {
            if x.len() + y.len() - 1 <= bound {
                let mut w = x.clone();
                w.extend_from_slice(&y[1..]);
                out.insert(w);
            }
        }
    }
    out
}
