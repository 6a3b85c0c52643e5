//! Simple ε-free automata over `P ∪ {x_i}` in the two-block shape the
//! construction maintains.
//!
//! States `0..n_o` form the *o-block*: either empty, or exactly two states
//! with atom-labelled edges from state 0 (its only start) to state 1 (its
//! only accept), so it accepts a set of single atoms. States `n_o..n` form the
//! *s-block*, which accepts only words of two or more letters. No edge
//! crosses between the blocks, and program letters never leave a start state
//! or enter an accept state.

mod construct;
mod dfa;
mod file;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::guarded::{atom_satisfies, Atom, Letter, Signature};
use crate::term::{Alphabet, KatTerm};

pub use construct::{
    concat_automaton, concat_raw, simplify_entries, star_automaton, star_raw, sum_automaton,
    AtomCollapse, EntryRewrite, LabelWord, RawAutomaton, RawTransition, Simplified,
};
pub use dfa::{determinize, distinguishing_word, equivalent, Dfa};
pub use file::{AutomatonFile, TransitionRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub label: Letter,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantViolation {
    #[error("o-block shape: {0}")]
    OBlockShape(String),
    #[error("s-block accepts a word shorter than two letters: {0}")]
    ShortWord(String),
    #[error("transition {from} -> {to} crosses between the o-block and the s-block")]
    CrossBlock { from: usize, to: usize },
    #[error("program transition {from} -> {to} leaves a start state or enters an accept state")]
    GuardBoundary { from: usize, to: usize },
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("automata over different alphabets")]
    SignatureMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsAutomaton {
    sig: Signature,
    n_o: usize,
    n_s: usize,
    starts: Vec<usize>,
    accepts: Vec<usize>,
    transitions: Vec<Transition>,
}

impl GsAutomaton {
    /// Builds an automaton from parts, canonicalising the order of the state
    /// lists and transitions and checking every invariant.
    pub fn from_parts(
        sig: Signature,
        n_o: usize,
        n_s: usize,
        starts: impl IntoIterator<Item = usize>,
        accepts: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Self, InvariantViolation> {
        let aut = GsAutomaton::assemble(sig, n_o, n_s, starts, accepts, transitions);
        aut.check_invariants()?;
        Ok(aut)
    }

    pub(crate) fn assemble(
        sig: Signature,
        n_o: usize,
        n_s: usize,
        starts: impl IntoIterator<Item = usize>,
        accepts: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Self {
        let starts: BTreeSet<usize> = starts.into_iter().collect();
        let accepts: BTreeSet<usize> = accepts.into_iter().collect();
        let transitions: BTreeSet<Transition> = transitions.into_iter().collect();
        GsAutomaton {
            sig,
            n_o,
            n_s,
            starts: starts.into_iter().collect(),
            accepts: accepts.into_iter().collect(),
            transitions: transitions.into_iter().collect(),
        }
    }

    /// The automaton with no states, accepting nothing.
    pub fn empty(sig: Signature) -> Self {
        GsAutomaton::assemble(sig, 0, 0, [], [], [])
    }

    /// Two-state o-block accepting exactly the given atoms; empty when
    /// `atoms` is.
    pub fn atom_block(sig: Signature, atoms: &BTreeSet<Atom>) -> Self {
        if atoms.is_empty() {
            return GsAutomaton::empty(sig);
        }
        let edges = atoms.iter().map(|&a| Transition {
            from: 0,
            to: 1,
            label: Letter::Atom(a),
        });
        GsAutomaton::assemble(sig, 2, 0, [0], [1], edges)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn n(&self) -> usize {
        self.n_o + self.n_s
    }

    pub fn n_o(&self) -> usize {
        self.n_o
    }

    pub fn n_s(&self) -> usize {
        self.n_s
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn accepts(&self) -> &[usize] {
        &self.accepts
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn is_start(&self, q: usize) -> bool {
        self.starts.binary_search(&q).is_ok()
    }

    pub fn is_accept(&self, q: usize) -> bool {
        self.accepts.binary_search(&q).is_ok()
    }

    /// Atoms accepted by the o-block.
    pub fn o_labels(&self) -> BTreeSet<Atom> {
        self.transitions
            .iter()
            .filter(|t| t.from < self.n_o)
            .filter_map(|t| t.label.as_atom())
            .collect()
    }

    pub fn o_starts(&self) -> Vec<usize> {
        self.starts
            .iter()
            .copied()
            .filter(|&q| q < self.n_o)
            .collect()
    }

    pub fn o_accepts(&self) -> Vec<usize> {
        self.accepts
            .iter()
            .copied()
            .filter(|&q| q < self.n_o)
            .collect()
    }

    pub fn s_starts(&self) -> Vec<usize> {
        self.starts
            .iter()
            .copied()
            .filter(|&q| q >= self.n_o)
            .collect()
    }

    pub fn s_accepts(&self) -> Vec<usize> {
        self.accepts
            .iter()
            .copied()
            .filter(|&q| q >= self.n_o)
            .collect()
    }

    /// Checks the o-block shape on its own.
    pub fn check_o_block(&self) -> Result<(), InvariantViolation> {
        let shape = |m: String| Err(InvariantViolation::OBlockShape(m));
        match self.n_o {
            0 => Ok(()),
            2 => {
                if self.o_starts() != [0] {
                    return shape(format!(
                        "o-block starts are {:?}, expected [0]",
                        self.o_starts()
                    ));
                }
                if self.o_accepts() != [1] {
                    return shape(format!(
                        "o-block accepts are {:?}, expected [1]; a state may not be both a start and an accept state",
                        self.o_accepts()
                    ));
                }
                let mut any = false;
                for t in self.transitions.iter().filter(|t| t.from < 2) {
                    if t.from != 0 || t.to != 1 || !t.label.is_atom() {
                        return shape(format!(
                            "o-block edge {} -> {} must be an atom edge from 0 to 1",
                            t.from, t.to
                        ));
                    }
                    any = true;
                }
                if any {
                    Ok(())
                } else {
                    shape("a two-state o-block must accept at least one atom".into())
                }
            }
            n => shape(format!("o-block has {n} states, expected 0 or 2")),
        }
    }

    /// Checks every structural invariant of the construction.
    pub fn check_invariants(&self) -> Result<(), InvariantViolation> {
        let n = self.n();
        let malformed = |m: String| Err(InvariantViolation::Malformed(m));
        let canonical = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if !canonical(&self.starts) || !canonical(&self.accepts) {
            return malformed("state lists must be sorted without duplicates".into());
        }
        if !self.transitions.windows(2).all(|w| w[0] < w[1]) {
            return malformed("transitions must be sorted without duplicates".into());
        }
        if let Some(q) = self.starts.iter().chain(&self.accepts).find(|&&q| q >= n) {
            return malformed(format!("state {q} out of range 0..{n}"));
        }
        for t in &self.transitions {
            if t.from >= n || t.to >= n {
                return malformed(format!(
                    "transition {} -> {} out of range 0..{n}",
                    t.from, t.to
                ));
            }
            if !self.sig.contains(t.label) {
                return malformed(format!(
                    "transition {} -> {} has a label outside the alphabet",
                    t.from, t.to
                ));
            }
            if (t.from < self.n_o) != (t.to < self.n_o) {
                return Err(InvariantViolation::CrossBlock {
                    from: t.from,
                    to: t.to,
                });
            }
        }
        self.check_o_block()?;
        if let Some(q) = self.s_starts().into_iter().find(|&q| self.is_accept(q)) {
            return Err(InvariantViolation::ShortWord(format!(
                "state {q} is both a start and an accept state"
            )));
        }
        for t in &self.transitions {
            if t.from >= self.n_o && self.is_start(t.from) && self.is_accept(t.to) {
                return Err(InvariantViolation::ShortWord(format!(
                    "single transition {} -> {} from a start to an accept state",
                    t.from, t.to
                )));
            }
            if matches!(t.label, Letter::Prog(_)) && (self.is_start(t.from) || self.is_accept(t.to))
            {
                return Err(InvariantViolation::GuardBoundary {
                    from: t.from,
                    to: t.to,
                });
            }
        }
        Ok(())
    }

    /// Successor table: `table[q][letter_index]` lists the targets.
    pub(crate) fn successor_table(&self) -> Vec<Vec<Vec<usize>>> {
        let mut table = vec![vec![Vec::new(); self.sig.letter_count()]; self.n()];
        for t in &self.transitions {
            let li = self
                .sig
                .letter_index(t.label)
                .expect("labels are in the alphabet");
            table[t.from][li].push(t.to);
        }
        table
    }

    /// States from which some accept state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let mut live = vec![false; self.n()];
        let mut stack: Vec<usize> = self.accepts.clone();
        for &q in &stack {
            live[q] = true;
        }
        while let Some(q) = stack.pop() {
            for t in self.transitions.iter().filter(|t| t.to == q) {
                if !live[t.from] {
                    live[t.from] = true;
                    stack.push(t.from);
                }
            }
        }
        live
    }

    /// Nondeterministic run on `word`.
    pub fn accepts_word(&self, word: &[Letter]) -> Result<bool> {
        let mut current: BTreeSet<usize> = self.starts.iter().copied().collect();
        for &l in word {
            if !self.sig.contains(l) {
                return Err(Error::UnknownLetter(format!("{l:?}")));
            }
            current = self
                .transitions
                .iter()
                .filter(|t| t.label == l && current.contains(&t.from))
                .map(|t| t.to)
                .collect();
        }
        Ok(current.iter().any(|&q| self.is_accept(q)))
    }

    /// Every accepted word with at most `bound` letters.
    pub fn words_up_to(&self, bound: usize) -> BTreeSet<Vec<Letter>> {
        let table = self.successor_table();
        let live = self.live_states();
        let letters = self.sig.letters();
        let mut out = BTreeSet::new();
        let mut stack: Vec<(Vec<usize>, Vec<Letter>)> = vec![(
            self.starts.iter().copied().filter(|&q| live[q]).collect(),
            Vec::new(),
        )];
        while let Some((set, word)) = stack.pop() {
            if set.iter().any(|&q| self.is_accept(q)) {
                out.insert(word.clone());
            }
            if word.len() == bound {
                continue;
            }
            for (li, &l) in letters.iter().enumerate() {
                let next: BTreeSet<usize> = set
                    .iter()
                    .flat_map(|&q| table[q][li].iter().copied())
                    .filter(|&q| live[q])
                    .collect();
                if !next.is_empty() {
                    let mut w = word.clone();
                    w.push(l);
                    stack.push((next.into_iter().collect(), w));
                }
            }
        }
        out
    }
}

/// The automaton for an atomic term `0`, `1`, `b`, `~b` or `p`.
pub fn base_automaton(atomic: &KatTerm, alpha: &Alphabet) -> Result<GsAutomaton> {
    alpha.check_test_cap()?;
    let sig = alpha.signature();
    let satisfying = |t: &KatTerm| -> Result<BTreeSet<Atom>> {
        let mut out = BTreeSet::new();
        for a in sig.atoms() {
            if atom_satisfies(a, t, sig.tests)? {
                out.insert(a);
            }
        }
        Ok(out)
    };
    let undeclared = |what: &str, i: usize| Error::UnknownLetter(format!("{what} #{i}"));
    match atomic {
        KatTerm::Zero => Ok(GsAutomaton::empty(sig)),
        KatTerm::One => Ok(GsAutomaton::atom_block(sig, &sig.atoms().collect())),
        KatTerm::Test(j) => {
            if *j >= sig.tests {
                return Err(undeclared("test", *j));
            }
            Ok(GsAutomaton::atom_block(sig, &satisfying(atomic)?))
        }
        KatTerm::Not(inner) if matches!(**inner, KatTerm::Test(_)) => {
            let KatTerm::Test(j) = **inner else {
                unreachable!()
            };
            if j >= sig.tests {
                return Err(undeclared("test", j));
            }
            Ok(GsAutomaton::atom_block(sig, &satisfying(atomic)?))
        }
        KatTerm::Prog(p) if *p >= sig.programs => Err(undeclared("program", *p)),
        KatTerm::Prog(p) => {
            let mut edges = Vec::new();
            for a in sig.atoms() {
                edges.push(Transition {
                    from: 0,
                    to: 1,
                    label: Letter::Atom(a),
                });
                edges.push(Transition {
                    from: 2,
                    to: 3,
                    label: Letter::Atom(a),
                });
            }
            edges.push(Transition {
                from: 1,
                to: 2,
                label: Letter::Prog(*p),
            });
            Ok(GsAutomaton::assemble(sig, 0, 4, [0], [3], edges))
        }
        other => Err(Error::Sort(format!("{other:?} is not an atomic term"))),
    }
}
