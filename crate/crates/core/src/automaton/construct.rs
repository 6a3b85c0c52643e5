//! Sum, concatenation and star of automata.
//!
//! Concatenation and star join an edge into an accept state of the left
//! operand with an edge out of a start state of the right operand. The joined
//! edge carries the two-letter label `x y`; [`simplify_entries`] then applies
//! `x_i x_i = x_i` and `x_i x_j = 0` (for `i != j`) to turn the result back
//! into an automaton with single-letter labels.

use std::collections::{BTreeMap, BTreeSet};

use super::{GsAutomaton, InvariantViolation, Transition};
use crate::error::{Error, Result};
use crate::guarded::{Atom, Letter, Signature};

/// A transition label before entry simplification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelWord {
    One(Letter),
    Two(Letter, Letter),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RawTransition {
    pub from: usize,
    pub to: usize,
    pub label: LabelWord,
}

/// An automaton whose labels may still be two-letter words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawAutomaton {
    pub sig: Signature,
    pub n_o: usize,
    pub n_s: usize,
    pub starts: Vec<usize>,
    pub accepts: Vec<usize>,
    pub transitions: Vec<RawTransition>,
}

impl RawAutomaton {
    pub fn n(&self) -> usize {
        self.n_o + self.n_s
    }

    fn assemble(
        sig: Signature,
        n_o: usize,
        n_s: usize,
        starts: BTreeSet<usize>,
        accepts: BTreeSet<usize>,
        transitions: BTreeSet<RawTransition>,
    ) -> Self {
        RawAutomaton {
            sig,
            n_o,
            n_s,
            starts: starts.into_iter().collect(),
            accepts: accepts.into_iter().collect(),
            transitions: transitions.into_iter().collect(),
        }
    }
}

/// Rewrite of one edge by entry simplification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryRewrite {
    pub from: usize,
    pub to: usize,
    pub before: Vec<LabelWord>,
    pub after: Vec<Letter>,
}

/// One use of `x_i x_i = x_i` (outcome `Some(x_i)`) or `x_i x_j = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct AtomCollapse {
    pub left: Atom,
    pub right: Atom,
    pub outcome: Option<Atom>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplified {
    pub automaton: GsAutomaton,
    pub rewrites: Vec<EntryRewrite>,
    pub collapses: Vec<AtomCollapse>,
}

fn same_signature(a: &GsAutomaton, b: &GsAutomaton) -> Result<Signature> {
    if a.signature() == b.signature() {
        Ok(a.signature())
    } else {
        Err(InvariantViolation::SignatureMismatch.into())
    }
}

/// Automaton for `t1 + t2`: the o-blocks merge, the s-blocks sit side by side.
pub fn sum_automaton(a1: &GsAutomaton, a2: &GsAutomaton) -> Result<GsAutomaton> {
    let sig = same_signature(a1, a2)?;
    a1.check_invariants()?;
    a2.check_invariants()?;
    let o: BTreeSet<Atom> = a1.o_labels().union(&a2.o_labels()).copied().collect();
    let o_block = GsAutomaton::atom_block(sig, &o);
    let n_o = o_block.n_o();
    let off1 = n_o as isize - a1.n_o() as isize;
    let off2 = (n_o + a1.n_s()) as isize - a2.n_o() as isize;
    let shift = |q: usize, off: isize| (q as isize + off) as usize;

    let mut starts = o_block.starts().to_vec();
    let mut accepts = o_block.accepts().to_vec();
    let mut transitions = o_block.transitions().to_vec();
    for (a, off) in [(a1, off1), (a2, off2)] {
        starts.extend(a.s_starts().into_iter().map(|q| shift(q, off)));
        accepts.extend(a.s_accepts().into_iter().map(|q| shift(q, off)));
        transitions.extend(
            a.transitions()
                .iter()
                .filter(|t| t.from >= a.n_o())
                .map(|t| Transition {
                    from: shift(t.from, off),
                    to: shift(t.to, off),
                    label: t.label,
                }),
        );
    }
    let out = GsAutomaton::assemble(sig, n_o, a1.n_s() + a2.n_s(), starts, accepts, transitions);
    out.check_invariants()?;
    Ok(out)
}

/// Raw automaton for `t1 · t2`, before entry simplification.
///
/// The s-block holds up to four parts: the o-block of `a1` (when `a2` has an
/// s-block), the s-block of `a1`, the o-block of `a2` (when `a1` has an
/// s-block) and the s-block of `a2`. A part is left out when no accepted word
/// can pass through it.
pub fn concat_raw(a1: &GsAutomaton, a2: &GsAutomaton) -> Result<RawAutomaton> {
    let sig = same_signature(a1, a2)?;
    a1.check_invariants()?;
    a2.check_invariants()?;
    let o: BTreeSet<Atom> = a1
        .o_labels()
        .intersection(&a2.o_labels())
        .copied()
        .collect();
    let o_block = GsAutomaton::atom_block(sig, &o);
    let n_o = o_block.n_o();

    let (has_o1, has_s1) = (a1.n_o() == 2, a1.n_s() > 0);
    let (has_o2, has_s2) = (a2.n_o() == 2, a2.n_s() > 0);
    let keep_c1 = has_o1 && has_s2;
    let keep_b1 = has_s1 && (has_o2 || has_s2);
    let keep_c2 = has_o2 && has_s1;
    let keep_b2 = has_s2 && (has_o1 || has_s1);

    let mut next = n_o;
    let mut place = |a: &GsAutomaton, keep_o: bool, keep_s: bool| -> Vec<Option<usize>> {
        (0..a.n())
            .map(|q| {
                let keep = if q < a.n_o() { keep_o } else { keep_s };
                keep.then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    // layout order: C1, B1, C2, B2
    let map1_c: Vec<Option<usize>> = place(a1, keep_c1, false);
    let map1_b: Vec<Option<usize>> = place(a1, false, keep_b1);
    let map2_c: Vec<Option<usize>> = place(a2, keep_c2, false);
    let map2_b: Vec<Option<usize>> = place(a2, false, keep_b2);
    let map1: Vec<Option<usize>> = map1_c.iter().zip(&map1_b).map(|(c, b)| c.or(*b)).collect();
    let map2: Vec<Option<usize>> = map2_c.iter().zip(&map2_b).map(|(c, b)| c.or(*b)).collect();
    let n = next;

    let mut starts: BTreeSet<usize> = o_block.starts().iter().copied().collect();
    let mut accepts: BTreeSet<usize> = o_block.accepts().iter().copied().collect();
    let mut transitions: BTreeSet<RawTransition> = o_block
        .transitions()
        .iter()
        .map(|t| RawTransition {
            from: t.from,
            to: t.to,
            label: LabelWord::One(t.label),
        })
        .collect();
    starts.extend(a1.starts().iter().filter_map(|&q| map1[q]));
    accepts.extend(a2.accepts().iter().filter_map(|&q| map2[q]));
    for (a, map) in [(a1, &map1), (a2, &map2)] {
        for t in a.transitions() {
            if let (Some(from), Some(to)) = (map[t.from], map[t.to]) {
                transitions.insert(RawTransition {
                    from,
                    to,
                    label: LabelWord::One(t.label),
                });
            }
        }
    }
    for t1 in a1.transitions().iter().filter(|t| a1.is_accept(t.to)) {
        let Some(from) = map1[t1.from] else { continue };
        for t2 in a2.transitions().iter().filter(|t| a2.is_start(t.from)) {
            let Some(to) = map2[t2.to] else { continue };
            // the o-block of the result already covers o-block to o-block
            if t1.from < a1.n_o() && t2.to < a2.n_o() {
                continue;
            }
            transitions.insert(RawTransition {
                from,
                to,
                label: LabelWord::Two(t1.label, t2.label),
            });
        }
    }
    Ok(RawAutomaton::assemble(
        sig,
        n_o,
        n - n_o,
        starts,
        accepts,
        transitions,
    ))
}

/// Raw automaton for `t*`: o-block `1`, s-block `(s, B + B t sᵀ B, t)`.
pub fn star_raw(a: &GsAutomaton) -> Result<RawAutomaton> {
    a.check_invariants()?;
    let sig = a.signature();
    let o_block = GsAutomaton::atom_block(sig, &sig.atoms().collect());
    let shift = |q: usize| q - a.n_o() + 2;
    let mut transitions: BTreeSet<RawTransition> = o_block
        .transitions()
        .iter()
        .map(|t| RawTransition {
            from: t.from,
            to: t.to,
            label: LabelWord::One(t.label),
        })
        .collect();
    let s_edges: Vec<&Transition> = a
        .transitions()
        .iter()
        .filter(|t| t.from >= a.n_o())
        .collect();
    for t in &s_edges {
        transitions.insert(RawTransition {
            from: shift(t.from),
            to: shift(t.to),
            label: LabelWord::One(t.label),
        });
    }
    for t1 in s_edges.iter().filter(|t| a.is_accept(t.to)) {
        for t2 in s_edges.iter().filter(|t| a.is_start(t.from)) {
            transitions.insert(RawTransition {
                from: shift(t1.from),
                to: shift(t2.to),
                label: LabelWord::Two(t1.label, t2.label),
            });
        }
    }
    let starts = [0]
        .into_iter()
        .chain(a.s_starts().into_iter().map(shift))
        .collect();
    let accepts = [1]
        .into_iter()
        .chain(a.s_accepts().into_iter().map(shift))
        .collect();
    Ok(RawAutomaton::assemble(
        sig,
        2,
        a.n_s(),
        starts,
        accepts,
        transitions,
    ))
}

/// Collapses every two-letter label `x y`: to `x` when `x = y`, to nothing
/// otherwise. Both letters must be atoms.
pub fn simplify_entries(raw: &RawAutomaton) -> Result<Simplified> {
    let mut by_edge: BTreeMap<(usize, usize), Vec<LabelWord>> = BTreeMap::new();
    for t in &raw.transitions {
        by_edge.entry((t.from, t.to)).or_default().push(t.label);
    }
    let mut transitions = Vec::new();
    let mut rewrites = Vec::new();
    let mut collapses = BTreeSet::new();
    for ((from, to), labels) in by_edge {
        let mut after = BTreeSet::new();
        let mut had_pair = false;
        for &label in &labels {
            match label {
                LabelWord::One(l) => {
                    after.insert(l);
                }
                LabelWord::Two(Letter::Atom(x), Letter::Atom(y)) => {
                    had_pair = true;
                    let outcome = (x == y).then_some(x);
                    collapses.insert(AtomCollapse {
                        left: x,
                        right: y,
                        outcome,
                    });
                    if let Some(x) = outcome {
                        after.insert(Letter::Atom(x));
                    }
                }
                LabelWord::Two(x, y) => {
                    return Err(Error::NonAtomicPair(format!(
                        "{x:?} {y:?} on {from} -> {to}"
                    )));
                }
            }
        }
        transitions.extend(after.iter().map(|&label| Transition { from, to, label }));
        if had_pair {
            rewrites.push(EntryRewrite {
                from,
                to,
                before: labels,
                after: after.into_iter().collect(),
            });
        }
    }
    let automaton = GsAutomaton::assemble(
        raw.sig,
        raw.n_o,
        raw.n_s,
        raw.starts.iter().copied(),
        raw.accepts.iter().copied(),
        transitions,
    );
    automaton.check_invariants()?;
    Ok(Simplified {
        automaton,
        rewrites,
        collapses: collapses.into_iter().collect(),
    })
}

/// Automaton for `t1 · t2`.
pub fn concat_automaton(a1: &GsAutomaton, a2: &GsAutomaton) -> Result<GsAutomaton> {
    Ok(simplify_entries(&concat_raw(a1, a2)?)?.automaton)
}

/// Automaton for `t*`.
pub fn star_automaton(a: &GsAutomaton) -> Result<GsAutomaton> {
    Ok(simplify_entries(&star_raw(a)?)?.automaton)
}
