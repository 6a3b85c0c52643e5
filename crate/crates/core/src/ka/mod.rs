//! Plain Kleene-algebra terms over `P ∪ {x_i}`, matrices of them, and the
//! encoding of an automaton `(u, A, v)` as the term `uᵀ A* v`.
//!
//! Terms share subterms through `Rc`, since the block formula for the star of
//! a matrix reuses `D*` and `F*` in several entries.

mod matrix;
mod parse;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::rc::Rc;

use crate::guarded::Letter;
use crate::term::Alphabet;

pub use matrix::{encode_automaton, transition_matrix, KaMatrix};
pub use parse::parse_ka;

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum KaNode {
    Zero,
    One,
    Letter(Letter),
    Plus(KaTerm, KaTerm),
    Times(KaTerm, KaTerm),
    Star(KaTerm),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KaTerm(Rc<KaNode>);

impl KaTerm {
    pub fn zero() -> Self {
        KaTerm(Rc::new(KaNode::Zero))
    }

    pub fn one() -> Self {
        KaTerm(Rc::new(KaNode::One))
    }

    pub fn letter(l: Letter) -> Self {
        KaTerm(Rc::new(KaNode::Letter(l)))
    }

    pub fn node(&self) -> &KaNode {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        matches!(*self.0, KaNode::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(*self.0, KaNode::One)
    }

    /// `a + b`, dropping `0` summands.
    pub fn plus(a: &KaTerm, b: &KaTerm) -> KaTerm {
        if a.is_zero() {
            b.clone()
        } else if b.is_zero() {
            a.clone()
        } else {
            KaTerm(Rc::new(KaNode::Plus(a.clone(), b.clone())))
        }
    }

    /// `a · b` with `0` annihilating and `1` as unit.
    pub fn times(a: &KaTerm, b: &KaTerm) -> KaTerm {
        if a.is_zero() || b.is_zero() {
            KaTerm::zero()
        } else if a.is_one() {
            b.clone()
        } else if b.is_one() {
            a.clone()
        } else {
            KaTerm(Rc::new(KaNode::Times(a.clone(), b.clone())))
        }
    }

    /// `a*`, with `0* = 1`.
    pub fn star(a: &KaTerm) -> KaTerm {
        if a.is_zero() {
            KaTerm::one()
        } else {
            KaTerm(Rc::new(KaNode::Star(a.clone())))
        }
    }

    /// Unsimplified constructors, for terms that must keep their exact shape.
    pub fn raw_plus(a: &KaTerm, b: &KaTerm) -> KaTerm {
        KaTerm(Rc::new(KaNode::Plus(a.clone(), b.clone())))
    }

    pub fn raw_times(a: &KaTerm, b: &KaTerm) -> KaTerm {
        KaTerm(Rc::new(KaNode::Times(a.clone(), b.clone())))
    }

    pub fn raw_star(a: &KaTerm) -> KaTerm {
        KaTerm(Rc::new(KaNode::Star(a.clone())))
    }

    pub fn sum_of<'a>(terms: impl IntoIterator<Item = &'a KaTerm>) -> KaTerm {
        terms
            .into_iter()
            .fold(KaTerm::zero(), |acc, t| KaTerm::plus(&acc, t))
    }

    /// Number of distinct shared nodes.
    pub fn dag_size(&self) -> usize {
        fn walk(t: &KaTerm, seen: &mut HashSet<*const KaNode>) {
            if !seen.insert(Rc::as_ptr(&t.0)) {
                return;
            }
            match t.node() {
                KaNode::Plus(a, b) | KaNode::Times(a, b) => {
                    walk(a, seen);
                    walk(b, seen);
                }
                KaNode::Star(a) => walk(a, seen),
                _ => {}
            }
        }
        let mut seen = HashSet::new();
        walk(self, &mut seen);
        seen.len()
    }

    /// Node count of the fully unshared tree, saturating at `u128::MAX`.
    pub fn tree_size(&self) -> u128 {
        fn walk(t: &KaTerm, memo: &mut HashMap<*const KaNode, u128>) -> u128 {
            let key = Rc::as_ptr(&t.0);
            if let Some(&n) = memo.get(&key) {
                return n;
            }
            let n = match t.node() {
                KaNode::Plus(a, b) | KaNode::Times(a, b) => 1u128
                    .saturating_add(walk(a, memo))
                    .saturating_add(walk(b, memo)),
                KaNode::Star(a) => 1u128.saturating_add(walk(a, memo)),
                _ => 1,
            };
            memo.insert(key, n);
            n
        }
        walk(self, &mut HashMap::new())
    }

    pub fn display<'a>(&'a self, alpha: &'a Alphabet) -> KaDisplay<'a> {
        KaDisplay { term: self, alpha }
    }

    pub fn to_text(&self, alpha: &Alphabet) -> String {
        self.display(alpha).to_string()
    }
}

pub struct KaDisplay<'a> {
    term: &'a KaTerm,
    alpha: &'a Alphabet,
}

impl KaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, t: &KaTerm, level: u8) -> fmt::Result {
        let own = match t.node() {
            KaNode::Plus(..) => 0,
            KaNode::Times(..) => 1,
            KaNode::Star(_) => 2,
            _ => 3,
        };
        if own < level {
            f.write_str("(")?;
            self.write(f, t, own)?;
            return f.write_str(")");
        }
        match t.node() {
            KaNode::Zero => f.write_str("0"),
            KaNode::One => f.write_str("1"),
            KaNode::Letter(l) => f.write_str(&self.alpha.letter_text(*l)),
            KaNode::Plus(a, b) => {
                self.write(f, a, 0)?;
                f.write_str(" + ")?;
                self.write(f, b, 1)
            }
            KaNode::Times(a, b) => {
                self.write(f, a, 1)?;
                f.write_str(" ")?;
                self.write(f, b, 2)
            }
            KaNode::Star(a) => {
                self.write(f, a, 2)?;
                f.write_str("*")
            }
        }
    }
}

impl fmt::Display for KaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.term, 0)
    }
}

type Words = BTreeSet<Vec<Letter>>;

/// All words of `R(t)` with at most `bound` letters.
pub fn ka_bounded_language(t: &KaTerm, bound: usize) -> BTreeSet<Vec<Letter>> {
    let mut memo = HashMap::new();
    lang(t, bound, &mut memo)
}

fn lang(t: &KaTerm, bound: usize, memo: &mut HashMap<*const KaNode, Rc<Words>>) -> Words {
    let key = Rc::as_ptr(&t.0);
    if let Some(w) = memo.get(&key) {
        return (**w).clone();
    }
    let out = match t.node() {
        KaNode::Zero => Words::new(),
        KaNode::One => [vec![]].into_iter().collect(),
        KaNode::Letter(l) => {
            if bound >= 1 {
                [vec![*l]].into_iter().collect()
            } else {
                Words::new()
            }
        }
        KaNode::Plus(a, b) => {
            let mut out = lang(a, bound, memo);
            out.extend(lang(b, bound, memo));
            out
        }
        KaNode::Times(a, b) => {
            let left = lang(a, bound, memo);
            let right = lang(b, bound, memo);
            concat(&left, &right, bound)
        }
        KaNode::Star(a) => {
            let body = lang(a, bound, memo);
            let mut all: Words = [vec![]].into_iter().collect();
            let mut frontier = all.clone();
            while !frontier.is_empty() {
                let next: Words = concat(&frontier, &body, bound)
                    .into_iter()
                    .filter(|w| !all.contains(w))
                    .collect();
                all.extend(next.iter().cloned());
                frontier = next;
            }
            all
        }
    };
    memo.insert(key, Rc::new(out.clone()));
    out
}

fn concat(left: &Words, right: &Words, bound: usize) -> Words {
    let mut out = Words::new();
    for x in left {
        for y in right {
            if x.len() + y.len() <= bound {
                let mut w = x.clone();
                w.extend_from_slice(y);
                out.insert(w);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> Alphabet {
        Alphabet::new(["p", "q"], ["b"]).unwrap()
    }

    fn lang_of(src: &str, bound: usize) -> Words {
        ka_bounded_language(&parse_ka(src, &alpha()).unwrap(), bound)
    }

    #[test]
    fn simplification_laws() {
        let p = KaTerm::letter(Letter::Prog(0));
        assert_eq!(KaTerm::plus(&p, &KaTerm::zero()), p);
        assert_eq!(KaTerm::times(&p, &KaTerm::one()), p);
        assert!(KaTerm::times(&p, &KaTerm::zero()).is_zero());
        assert!(KaTerm::star(&KaTerm::zero()).is_one());
    }

    #[test]
    fn bounded_languages() {
        let a = alpha();
        let w = |s: &str| -> Vec<Letter> {
            s.chars()
                .map(|c| a.parse_letter_text(&c.to_string()).unwrap())
                .collect()
        };
        let expected: Words = [w("p"), w("pqp")].into_iter().collect();
        assert_eq!(lang_of("(p q)* p", 3), expected);
        // sliding and denesting instances
        assert_eq!(lang_of("p (q p)*", 7), lang_of("(p q)* p", 7));
        assert_eq!(lang_of("(p + q)*", 5), lang_of("p* (q p*)*", 5));
        assert_eq!(lang_of("1", 0), [vec![]].into_iter().collect());
    }

    #[test]
    fn sizes_count_sharing() {
        let p = KaTerm::letter(Letter::Prog(0));
        let pp = KaTerm::times(&p, &p);
        let t = KaTerm::plus(&pp, &pp);
        assert_eq!(t.tree_size(), 7);
        assert_eq!(t.dag_size(), 3);
    }

    #[test]
    fn print_parse_round_trip() {
        let a = alpha();
        for src in [
            "(p q)* p",
            "x[1] p x[0] + 0",
            "(x[0] + x[1])* q**",
            "1 + p (q + x[1])",
        ] {
            let t = parse_ka(src, &a).unwrap();
            let again = parse_ka(&t.to_text(&a), &a).unwrap();
            assert_eq!(t, again, "{src}");
        }
    }
}
