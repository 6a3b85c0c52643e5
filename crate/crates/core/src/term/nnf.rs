//! Negation normal form: complements pushed down onto primitive tests.
//!
//! The rewrite sequence is recorded so a certificate checker can replay it
//! one axiom instance at a time against the current term.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::KatTerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum NnfAxiom {
    /// `~~b = b`
    DoubleNeg,
    /// `~(b + c) = ~b ~c`
    DeMorganPlus,
    /// `~(b c) = ~b + ~c`
    DeMorganTimes,
    /// `~0 = 1`
    NotZero,
    /// `~1 = 0`
    NotOne,
}

impl fmt::Display for NnfAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NnfAxiom::DoubleNeg => "doubleNeg",
            NnfAxiom::DeMorganPlus => "deMorganPlus",
            NnfAxiom::DeMorganTimes => "deMorganTimes",
            NnfAxiom::NotZero => "notZero",
            NnfAxiom::NotOne => "notOne",
        })
    }
}

/// One axiom instance applied at `path` (child indices from the root).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NnfRewrite {
    pub axiom: NnfAxiom,
    pub path: Vec<usize>,
}

pub fn to_nnf(t: &KatTerm) -> KatTerm {
    nnf_trace(t).0
}

/// NNF together with the rewrites that produce it, in application order.
pub fn nnf_trace(t: &KatTerm) -> (KatTerm, Vec<NnfRewrite>) {
    let mut log = Vec::new();
    let mut path = Vec::new();
    let out = push(t.clone(), &mut path, &mut log);
    (out, log)
}

fn push(t: KatTerm, path: &mut Vec<usize>, log: &mut Vec<NnfRewrite>) -> KatTerm {
    let mut record = |axiom, path: &Vec<usize>| {
        log.push(NnfRewrite {
            axiom,
            path: path.clone(),
        })
    };
    match t {
        KatTerm::Not(inner) => match *inner {
            KatTerm::Not(x) => {
                record(NnfAxiom::DoubleNeg, path);
                push(*x, path, log)
            }
            KatTerm::Plus(a, b) => {
                record(NnfAxiom::DeMorganPlus, path);
                let (a, b) = both(KatTerm::Not(a), KatTerm::Not(b), path, log);
                KatTerm::times(a, b)
            }
            KatTerm::Times(a, b) => {
                record(NnfAxiom::DeMorganTimes, path);
                let (a, b) = both(KatTerm::Not(a), KatTerm::Not(b), path, log);
                KatTerm::plus(a, b)
            }
            KatTerm::Zero => {
                record(NnfAxiom::NotZero, path);
                KatTerm::One
            }
            KatTerm::One => {
                record(NnfAxiom::NotOne, path);
                KatTerm::Zero
            }
            // Tests are already normal; anything else is ill-sorted and left alone.
            other => KatTerm::not(other),
        },
        KatTerm::Plus(a, b) => {
            let (a, b) = both(*a, *b, path, log);
            KatTerm::plus(a, b)
        }
        KatTerm::Times(a, b) => {
            let (a, b) = both(*a, *b, path, log);
            KatTerm::times(a, b)
        }
        KatTerm::Star(a) => {
            path.push(0);
            let a = push(*a, path, log);
            path.pop();
            KatTerm::star(a)
        }
        leaf => leaf,
    }
}

fn both(
    a: KatTerm,
    b: KatTerm,
    path: &mut Vec<usize>,
    log: &mut Vec<NnfRewrite>,
) -> (KatTerm, KatTerm) {
    path.push(0);
    let a = push(a, path, log);
    path.pop();
    path.push(1);
    let b = push(b, path, log);
    path.pop();
    (a, b)
}

/// Applies a single recorded rewrite. Returns `None` if the axiom's left-hand
/// side does not match the subterm at the rewrite's path.
pub fn apply_nnf_rewrite(t: &KatTerm, rw: &NnfRewrite) -> Option<KatTerm> {
    rewrite_at(t, &rw.path, rw.axiom)
}

fn rewrite_at(t: &KatTerm, path: &[usize], axiom: NnfAxiom) -> Option<KatTerm> {
    let Some((&i, rest)) = path.split_first() else {
        return apply_here(t, axiom);
    };
    Some(match (t, i) {
        (KatTerm::Not(a), 0) => KatTerm::not(rewrite_at(a, rest, axiom)?),
        (KatTerm::Star(a), 0) => KatTerm::star(rewrite_at(a, rest, axiom)?),
        (KatTerm::Plus(a, b), 0) => KatTerm::plus(rewrite_at(a, rest, axiom)?, (**b).clone()),
        (KatTerm::Plus(a, b), 1) => KatTerm::plus((**a).clone(), rewrite_at(b, rest, axiom)?),
        (KatTerm::Times(a, b), 0) => KatTerm::times(rewrite_at(a, rest, axiom)?, (**b).clone()),
        (KatTerm::Times(a, b), 1) => KatTerm::times((**a).clone(), rewrite_at(b, rest, axiom)?),
        _ => return None,
    })
}

fn apply_here(t: &KatTerm, axiom: NnfAxiom) -> Option<KatTerm> {
    let KatTerm::Not(inner) = t else { return None };
    match (axiom, &**inner) {
        (NnfAxiom::DoubleNeg, KatTerm::Not(x)) => Some((**x).clone()),
        (NnfAxiom::DeMorganPlus, KatTerm::Plus(a, b)) => Some(KatTerm::times(
            KatTerm::not((**a).clone()),
            KatTerm::not((**b).clone()),
        )),
        (NnfAxiom::DeMorganTimes, KatTerm::Times(a, b)) => Some(KatTerm::plus(
            KatTerm::not((**a).clone()),
            KatTerm::not((**b).clone()),
        )),
        (NnfAxiom::NotZero, KatTerm::Zero) => Some(KatTerm::One),
        (NnfAxiom::NotOne, KatTerm::One) => Some(KatTerm::Zero),
        _ => None,
    }
}
