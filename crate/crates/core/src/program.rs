//! While programs and Hoare-style implications, both reduced to KAT terms.
//!
//! Program grammar:
//!
//! ```text
//! stmt  := simple (";" simple)*
//! simple:= "skip" | NAME | "if" bexp "then" block ["else" block] | "while" bexp "do" block
//! block := "{" stmt "}" | simple
//! bexp  := conj ("|" conj)*
//! conj  := neg ("&" neg)*
//! neg   := "~" neg | "true" | "false" | NAME | "(" bexp ")"
//! ```
//!
//! An unbraced block is a single simple statement, so `while b do p; q` runs
//! `q` after the loop.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::automaton::{distinguishing_word, GsAutomaton};
use crate::compile::build_automaton;
use crate::error::{Error, Result};
use crate::guarded::{denote, guarded_words, Atom, Letter};
use crate::term::{is_ident_char, Alphabet, KatTerm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WhileProgram {
    Skip,
    Prim(usize),
    Seq(Box<WhileProgram>, Box<WhileProgram>),
    IfThenElse(KatTerm, Box<WhileProgram>, Box<WhileProgram>),
    IfThen(KatTerm, Box<WhileProgram>),
    While(KatTerm, Box<WhileProgram>),
}

impl WhileProgram {
    pub fn seq(a: WhileProgram, b: WhileProgram) -> Self {
        WhileProgram::Seq(Box::new(a), Box::new(b))
    }

    pub fn if_then_else(b: KatTerm, p: WhileProgram, q: WhileProgram) -> Self {
        WhileProgram::IfThenElse(b, Box::new(p), Box::new(q))
    }

    pub fn if_then(b: KatTerm, p: WhileProgram) -> Self {
        WhileProgram::IfThen(b, Box::new(p))
    }

    pub fn while_do(b: KatTerm, p: WhileProgram) -> Self {
        WhileProgram::While(b, Box::new(p))
    }

    /// Statement nodes plus the sizes of all guards.
    pub fn size(&self) -> usize {
        match self {
            WhileProgram::Skip | WhileProgram::Prim(_) => 1,
            WhileProgram::Seq(a, b) => 1 + a.size() + b.size(),
            WhileProgram::IfThenElse(g, a, b) => 1 + g.size() + a.size() + b.size(),
            WhileProgram::IfThen(g, a) | WhileProgram::While(g, a) => 1 + g.size() + a.size(),
        }
    }
}

pub fn encode_while(w: &WhileProgram) -> KatTerm {
    match w {
        WhileProgram::Skip => KatTerm::One,
        WhileProgram::Prim(p) => KatTerm::Prog(*p),
        WhileProgram::Seq(a, b) => KatTerm::times(encode_while(a), encode_while(b)),
        WhileProgram::IfThenElse(g, a, b) => KatTerm::plus(
            KatTerm::times(g.clone(), encode_while(a)),
            KatTerm::times(KatTerm::not(g.clone()), encode_while(b)),
        ),
        WhileProgram::IfThen(g, a) => KatTerm::plus(
            KatTerm::times(g.clone(), encode_while(a)),
            KatTerm::not(g.clone()),
        ),
        WhileProgram::While(g, a) => KatTerm::times(
            KatTerm::star(KatTerm::times(g.clone(), encode_while(a))),
            KatTerm::not(g.clone()),
        ),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Sym(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    alpha: &'a Alphabet,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if "{}();~&|".contains(c) {
            out.push((Tok::Sym(c), column));
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Name(chars[start..i].iter().collect()), column));
        } else {
            return Err(Error::Syntax {
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Name(n) if n == kw)
    }

    fn error(&self, expected: &str) -> Error {
        let found = match self.peek() {
            Tok::Name(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        };
        Error::Syntax {
            column: self.column(),
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{kw}`")))
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    fn stmt(&mut self) -> Result<WhileProgram> {
        let mut acc = self.simple()?;
        while *self.peek() == Tok::Sym(';') {
            self.bump();
            acc = WhileProgram::seq(acc, self.simple()?);
        }
        Ok(acc)
    }

    fn block(&mut self) -> Result<WhileProgram> {
        if *self.peek() == Tok::Sym('{') {
            self.bump();
            let s = self.stmt()?;
            self.expect_sym('}')?;
            Ok(s)
        } else {
            self.simple()
        }
    }

    fn simple(&mut self) -> Result<WhileProgram> {
        if self.is_kw("skip") {
            self.bump();
            return Ok(WhileProgram::Skip);
        }
        if self.is_kw("if") {
            self.bump();
            let g = self.bexp()?;
            self.expect_kw("then")?;
            let then = self.block()?;
            if self.is_kw("else") {
                self.bump();
                let other = self.block()?;
                return Ok(WhileProgram::if_then_else(g, then, other));
            }
            return Ok(WhileProgram::if_then(g, then));
        }
        if self.is_kw("while") {
            self.bump();
            let g = self.bexp()?;
            self.expect_kw("do")?;
            return Ok(WhileProgram::while_do(g, self.block()?));
        }
        match self.peek().clone() {
            Tok::Name(name) => {
                let column = self.column();
                if let Some(p) = self.alpha.program_index(&name) {
                    self.bump();
                    Ok(WhileProgram::Prim(p))
                } else if self.alpha.test_index(&name).is_some() {
                    Err(Error::Sort(format!(
                        "test `{name}` used as a statement at column {column}"
                    )))
                } else {
                    Err(Error::UnknownIdentifier { name, column })
                }
            }
            _ => Err(self.error("a statement")),
        }
    }

    fn bexp(&mut self) -> Result<KatTerm> {
        let mut acc = self.conj()?;
        while *self.peek() == Tok::Sym('|') {
            self.bump();
            acc = KatTerm::plus(acc, self.conj()?);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<KatTerm> {
        let mut acc = self.neg()?;
        while *self.peek() == Tok::Sym('&') {
            self.bump();
            acc = KatTerm::times(acc, self.neg()?);
        }
        Ok(acc)
    }

    fn neg(&mut self) -> Result<KatTerm> {
        match self.peek().clone() {
            Tok::Sym('~') => {
                self.bump();
                Ok(KatTerm::not(self.neg()?))
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.bexp()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Tok::Name(name) => {
                let column = self.column();
                self.bump();
                match name.as_str() {
                    "true" => Ok(KatTerm::One),
                    "false" => Ok(KatTerm::Zero),
                    _ => {
                        if let Some(b) = self.alpha.test_index(&name) {
                            Ok(KatTerm::Test(b))
                        } else if self.alpha.program_index(&name).is_some() {
                            Err(Error::Sort(format!(
                                "program `{name}` used as a guard at column {column}"
                            )))
                        } else {
                            Err(Error::UnknownIdentifier { name, column })
                        }
                    }
                }
            }
            _ => Err(self.error("a guard")),
        }
    }
}

pub fn parse_while(src: &str, alpha: &Alphabet) -> Result<WhileProgram> {
    let mut parser = Parser {
        toks: lex(src)?,
        pos: 0,
        alpha,
    };
    let w = parser.stmt()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error("`;` or end of input"));
    }
    Ok(w)
}

/// Outcome of the determinism check on a compiled while program.
///
/// The construction keeps some states that can never reach an accept state
/// (the old accept state of a left operand, for instance), and those can sit
/// beside a live state in a determinized subset without affecting any run
/// that succeeds. The check therefore works on live states; `raw_max_subset`
/// reports the size including dead states for comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminismReport {
    pub states: usize,
    /// Atoms for which more than one live start state has an outgoing edge.
    pub ambiguous_starts: Vec<(Atom, Vec<usize>)>,
    /// Reachable live subsets with more than one state.
    pub violating_subsets: Vec<Vec<usize>>,
    pub reachable_subsets: usize,
    pub max_subset: usize,
    pub raw_max_subset: usize,
}

impl DeterminismReport {
    pub fn is_deterministic(&self) -> bool {
        self.ambiguous_starts.is_empty() && self.violating_subsets.is_empty()
    }
}

/// Runs the subset construction from the successors of each atom out of the
/// start states and collects every reachable subset.
pub fn check_determinism(aut: &GsAutomaton) -> DeterminismReport {
    let table = aut.successor_table();
    let live = aut.live_states();
    let sig = aut.signature();
    let letters = sig.letter_count();
    let explore = |only_live: bool| -> BTreeSet<Vec<usize>> {
        let keep = |q: &usize| !only_live || live[*q];
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        for a in sig.atoms() {
            let li = sig
                .letter_index(Letter::Atom(a))
                .expect("atoms are letters");
            let first: BTreeSet<usize> = aut
                .starts()
                .iter()
                .flat_map(|&q| table[q][li].iter().copied())
                .filter(keep)
                .collect();
            let first: Vec<usize> = first.into_iter().collect();
            if !first.is_empty() && seen.insert(first.clone()) {
                queue.push_back(first);
            }
        }
        while let Some(set) = queue.pop_front() {
            let successors = (0..letters).map(|li| {
                let next: BTreeSet<usize> = set
                    .iter()
                    .flat_map(|&q| table[q][li].iter().copied())
                    .filter(keep)
                    .collect();
                next.into_iter().collect::<Vec<usize>>()
            });
            for next in successors {
                if !next.is_empty() && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    };
    let live_sets = explore(true);
    let raw_sets = explore(false);
    let mut ambiguous_starts = Vec::new();
    for a in sig.atoms() {
        let firing: Vec<usize> = aut
            .starts()
            .iter()
            .copied()
            .filter(|&q| live[q])
            .filter(|&q| {
                aut.transitions()
                    .iter()
                    .any(|t| t.from == q && t.label == Letter::Atom(a) && live[t.to])
            })
            .collect();
        if firing.len() > 1 {
            ambiguous_starts.push((a, firing));
        }
    }
    DeterminismReport {
        states: aut.n(),
        ambiguous_starts,
        violating_subsets: live_sets.iter().filter(|s| s.len() > 1).cloned().collect(),
        reachable_subsets: live_sets.len(),
        max_subset: live_sets.iter().map(Vec::len).max().unwrap_or(0),
        raw_max_subset: raw_sets.iter().map(Vec::len).max().unwrap_or(0),
    }
}

pub fn check_while_determinism(w: &WhileProgram, alpha: &Alphabet) -> Result<DeterminismReport> {
    Ok(check_determinism(&build_automaton(
        &encode_while(w),
        alpha,
    )?))
}

/// The implication `r = 0 → p = q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoareImplication {
    pub r: KatTerm,
    pub p: KatTerm,
    pub q: KatTerm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UniversalMode {
    /// `u = a1 + … + an`
    PlainSum,
    /// `u = (a1 + … + an)*`
    StarredUniversal,
}

pub fn universal_term(alpha: &Alphabet, mode: UniversalMode) -> Result<KatTerm> {
    let n = alpha.programs().len();
    match mode {
        UniversalMode::PlainSum if n == 0 => Err(Error::EmptyProgramAlphabet),
        UniversalMode::PlainSum => Ok(KatTerm::sum_of((0..n).map(KatTerm::Prog))),
        UniversalMode::StarredUniversal => {
            Ok(KatTerm::star(KatTerm::sum_of((0..n).map(KatTerm::Prog))))
        }
    }
}

/// `(p + u r u, q + u r u)`.
pub fn hoare_reduce(
    h: &HoareImplication,
    alpha: &Alphabet,
    mode: UniversalMode,
) -> Result<(KatTerm, KatTerm)> {
    for t in [&h.r, &h.p, &h.q] {
        t.sort()?;
    }
    let u = universal_term(alpha, mode)?;
    let uru = KatTerm::times(KatTerm::times(u.clone(), h.r.clone()), u);
    Ok((
        KatTerm::plus(h.p.clone(), uru.clone()),
        KatTerm::plus(h.q.clone(), uru),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoareDecision {
    pub left: KatTerm,
    pub right: KatTerm,
    pub equivalent: bool,
    pub witness: Option<Vec<Letter>>,
}

/// Decides the reduced equation by automaton equivalence.
pub fn decide_hoare(
    h: &HoareImplication,
    alpha: &Alphabet,
    mode: UniversalMode,
) -> Result<HoareDecision> {
    let (left, right) = hoare_reduce(h, alpha, mode)?;
    let witness = distinguishing_word(
        &build_automaton(&left, alpha)?,
        &build_automaton(&right, alpha)?,
    )?;
    Ok(HoareDecision {
        left,
        right,
        equivalent: witness.is_none(),
        witness,
    })
}

/// A guarded string of at most `bound` letters that contains no infix in
/// `G(r)` and belongs to exactly one of `G(p)` and `G(q)`, if there is one.
///
/// Such a string refutes the implication in the guarded-string model
/// restricted to `r = 0`.
pub fn hoare_counterexample(
    h: &HoareImplication,
    alpha: &Alphabet,
    bound: usize,
) -> Result<Option<Vec<Letter>>> {
    let r: HashSet<Vec<Letter>> = denote(&h.r, alpha, bound)?
        .letter_words()
        .into_iter()
        .collect();
    let p = denote(&h.p, alpha, bound)?;
    let q = denote(&h.q, alpha, bound)?;
    let avoids_r = |w: &[Letter]| {
        (0..w.len())
            .step_by(2)
            .all(|i| (i..w.len()).step_by(2).all(|j| !r.contains(&w[i..=j])))
    };
    Ok(guarded_words(alpha.signature(), bound)
        .into_iter()
        .find(|w| p.contains(w) != q.contains(w) && avoids_r(w)))
}

/// Per-mode tally of the bounded comparison between the reduction and the
/// guarded-string oracle.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HoareComparison {
    pub instances: usize,
    pub agreements: usize,
    /// Reduction says "not equivalent" only through a witness longer than
    /// the oracle bound.
    pub explained: usize,
    pub unexplained: Vec<String>,
}

pub fn compare_hoare_modes(
    instances: &[HoareImplication],
    alpha: &Alphabet,
    bound: usize,
) -> Result<BTreeMap<&'static str, HoareComparison>> {
    let mut out = BTreeMap::new();
    for (name, mode) in [
        ("plain", UniversalMode::PlainSum),
        ("starred", UniversalMode::StarredUniversal),
    ] {
        let mut cmp = HoareComparison::default();
        for h in instances {
            cmp.instances += 1;
            let oracle_valid = hoare_counterexample(h, alpha, bound)?.is_none();
            let decision = decide_hoare(h, alpha, mode)?;
            if decision.equivalent == oracle_valid {
                cmp.agreements += 1;
            } else if oracle_valid && decision.witness.as_ref().is_some_and(|w| w.len() > bound) {
                cmp.explained += 1;
            } else {
                cmp.unexplained.push(format!(
                    "r = {}, p = {}, q = {}: reduction says {}, oracle says {}",
                    h.r.to_text(alpha),
                    h.p.to_text(alpha),
                    h.q.to_text(alpha),
                    decision.equivalent,
                    oracle_valid
                ));
            }
        }
        out.insert(name, cmp);
    }
    Ok(out)
}
