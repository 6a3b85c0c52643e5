//! Residuals of `G(t)` by guarded prefixes `α p`.
//!
//! A residual is a finite set of products of subterms (partial derivatives).
//! The word `α0 p1 α1 … pn αn` belongs to `G(t)` iff stepping the initial
//! residual through `(α0,p1) … (αn-1,pn)` leaves a product that accepts the
//! single atom `αn`. This reads the term directly and never builds an
//! automaton, which makes it usable as an oracle at lengths where
//! enumerating [`denote`](super::denote) is out of reach.

use std::collections::BTreeSet;

use super::{atom_satisfies, Atom, Letter};
use crate::error::Result;
use crate::term::{Alphabet, KatTerm};

/// Set of subterm products; the empty product is `1`.
pub type Residual = BTreeSet<Vec<u32>>;

enum Node<'t> {
    Bool(&'t KatTerm),
    Prog(usize),
    Plus(u32, u32),
    Times(u32, u32),
    Star(u32),
}

pub struct ResidualOracle<'t> {
    nodes: Vec<Node<'t>>,
    root: u32,
    tests: usize,
}

impl<'t> ResidualOracle<'t> {
    pub fn new(t: &'t KatTerm, alpha: &Alphabet) -> Result<Self> {
        alpha.check_test_cap()?;
        t.sort()?;
        let mut nodes = Vec::new();
        let root = flatten(t, &mut nodes);
        Ok(ResidualOracle {
            nodes,
            root,
            tests: alpha.tests().len(),
        })
    }

    pub fn initial(&self) -> Residual {
        [vec![self.root]].into_iter().collect()
    }

    /// Whether some product in `r` accepts the one-letter word `a`.
    pub fn accepts_atom(&self, r: &Residual, a: Atom) -> bool {
        r.iter().any(|seq| seq.iter().all(|&n| self.eps(n, a)))
    }

    /// Residual after reading `a p`.
    pub fn step(&self, r: &Residual, a: Atom, p: usize) -> Residual {
        let mut out = Residual::new();
        for seq in r {
            self.derive_seq(seq, a, p, &mut out);
        }
        out
    }

    /// Membership of an arbitrary letter sequence in `G(t)`.
    pub fn member(&self, word: &[Letter]) -> bool {
        if !super::is_guarded(word) {
            return false;
        }
        let mut r = self.initial();
        for pair in word[..word.len() - 1].chunks(2) {
            let (Letter::Atom(a), Letter::Prog(p)) = (pair[0], pair[1]) else {
                unreachable!()
            };
            r = self.step(&r, a, p);
            if r.is_empty() {
                return false;
            }
        }
        let Letter::Atom(last) = word[word.len() - 1] else {
            unreachable!()
        };
        self.accepts_atom(&r, last)
    }

    fn eps(&self, n: u32, a: Atom) -> bool {
        match self.nodes[n as usize] {
            Node::Bool(t) => atom_satisfies(a, t, self.tests).unwrap_or(false),
            Node::Prog(_) => false,
            Node::Plus(x, y) => self.eps(x, a) || self.eps(y, a),
            Node::Times(x, y) => self.eps(x, a) && self.eps(y, a),
            Node::Star(_) => true,
        }
    }

    fn derive(&self, n: u32, a: Atom, p: usize, tail: &[u32], out: &mut Residual) {
        match self.nodes[n as usize] {
            Node::Bool(_) => {}
            Node::Prog(q) => {
                if q == p {
                    out.insert(tail.to_vec());
                }
            }
            Node::Plus(x, y) => {
                self.derive(x, a, p, tail, out);
                self.derive(y, a, p, tail, out);
            }
            Node::Times(x, y) => {
                let mut seq = vec![y];
                seq.extend_from_slice(tail);
                self.derive(x, a, p, &seq, out);
                if self.eps(x, a) {
                    self.derive(y, a, p, tail, out);
                }
            }
            Node::Star(x) => {
                let mut seq = vec![n];
                seq.extend_from_slice(tail);
                self.derive(x, a, p, &seq, out);
            }
        }
    }

    fn derive_seq(&self, seq: &[u32], a: Atom, p: usize, out: &mut Residual) {
        let Some((&head, rest)) = seq.split_first() else {
            return;
        };
        self.derive(head, a, p, rest, out);
        if self.eps(head, a) {
            self.derive_seq(rest, a, p, out);
        }
    }
}

fn flatten<'t>(t: &'t KatTerm, nodes: &mut Vec<Node<'t>>) -> u32 {
    let node = if t.is_boolean() {
        Node::Bool(t)
    } else {
        match t {
            KatTerm::Prog(p) => Node::Prog(*p),
            KatTerm::Plus(a, b) => Node::Plus(flatten(a, nodes), flatten(b, nodes)),
            KatTerm::Times(a, b) => Node::Times(flatten(a, nodes), flatten(b, nodes)),
            KatTerm::Star(a) => Node::Star(flatten(a, nodes)),
            _ => unreachable!("sort-checked: only tests are complemented"),
        }
    };
    nodes.push(node);
    (nodes.len() - 1) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guarded::denote;
    use crate::term::parse_term;

    /// Every guarded word over the signature with at most `bound` letters.
    fn all_words(alpha: &Alphabet, bound: usize) -> Vec<Vec<Letter>> {
        let sig = alpha.signature();
        let mut out: Vec<Vec<Letter>> = sig.atoms().map(|a| vec![Letter::Atom(a)]).collect();
        let mut frontier = out.clone();
        while frontier.first().is_some_and(|w| w.len() + 2 <= bound) {
            let mut next = Vec::new();
            for w in &frontier {
                for p in 0..sig.programs {
                    for a in sig.atoms() {
                        let mut v = w.clone();
                        v.push(Letter::Prog(p));
                        v.push(Letter::Atom(a));
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn membership_matches_enumeration() {
        let alpha = Alphabet::new(["p", "q"], ["b"]).unwrap();
        for src in [
            "0",
            "1",
            "b",
            "~b",
            "p",
            "b p",
            "p b",
            "(b p)* ~b",
            "p (q p)*",
            "(p q)* p",
            "(p + q)*",
            "p* (q p*)*",
            "(b + ~b p)* q",
            "(p*)*",
            "b* p",
            "(p + 1)(q + b)",
            "(p ~b + q b)* b",
            "((p q)* + b)* ~b",
        ] {
            let t = parse_term(src, &alpha).unwrap();
            let oracle = ResidualOracle::new(&t, &alpha).unwrap();
            let lang = denote(&t, &alpha, 7).unwrap();
            for w in all_words(&alpha, 7) {
                assert_eq!(
                    oracle.member(&w),
                    lang.contains(&w),
                    "{src} on {}",
                    alpha.word_text(&w)
                );
            }
        }
    }

    #[test]
    fn non_guarded_words_are_rejected() {
        let alpha = Alphabet::new(["p"], ["b"]).unwrap();
        let t = parse_term("p*", &alpha).unwrap();
        let oracle = ResidualOracle::new(&t, &alpha).unwrap();
        assert!(!oracle.member(&[]));
        assert!(!oracle.member(&[Letter::Prog(0)]));
        assert!(!oracle.member(&[Letter::Atom(Atom(0)), Letter::Atom(Atom(0))]));
        assert!(oracle.member(&[Letter::Atom(Atom(0))]));
    }
}
