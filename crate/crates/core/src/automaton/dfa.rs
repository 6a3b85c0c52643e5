use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{GsAutomaton, InvariantViolation};
use crate::error::Result;
use crate::guarded::{Letter, Signature};

/// Subset-construction DFA. State 0 is the start; the empty subset, when
/// reachable, is an ordinary non-accepting sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub sig: Signature,
    pub subsets: Vec<BTreeSet<usize>>,
    /// `delta[state][letter_index]`, letters in canonical order.
    pub delta: Vec<Vec<usize>>,
    pub accepting: Vec<bool>,
}

impl Dfa {
    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn accepts_word(&self, word: &[Letter]) -> Option<bool> {
        let mut q = 0;
        for &l in word {
            q = self.delta[q][self.sig.letter_index(l)?];
        }
        Some(self.accepting[q])
    }
}

pub(crate) fn step_set(
    table: &[Vec<Vec<usize>>],
    set: &BTreeSet<usize>,
    li: usize,
) -> BTreeSet<usize> {
    set.iter()
        .flat_map(|&q| table[q][li].iter().copied())
        .collect()
}

pub fn determinize(aut: &GsAutomaton) -> Dfa {
    let table = aut.successor_table();
    let letters = aut.signature().letter_count();
    let start: BTreeSet<usize> = aut.starts().iter().copied().collect();
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let mut row = Vec::with_capacity(letters);
        for li in 0..letters {
            let next = step_set(&table, &subsets[i], li);
            let id = *index.entry(next.clone()).or_insert_with(|| {
                subsets.push(next);
                subsets.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let accepting = subsets
        .iter()
        .map(|s| s.iter().any(|&q| aut.is_accept(q)))
        .collect();
    Dfa {
        sig: aut.signature(),
        subsets,
        delta,
        accepting,
    }
}

/// Shortest word accepted by exactly one of the automata; among the shortest,
/// the least in the canonical letter order. `None` when the languages agree.
pub fn distinguishing_word(a1: &GsAutomaton, a2: &GsAutomaton) -> Result<Option<Vec<Letter>>> {
    if a1.signature() != a2.signature() {
        return Err(InvariantViolation::SignatureMismatch.into());
    }
    let (d1, d2) = (determinize(a1), determinize(a2));
    let letters = a1.signature().letters();
    type Pair = (usize, usize);
    let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::from([((0, 0), None)]);
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some(pair @ (q1, q2)) = queue.pop_front() {
        if d1.accepting[q1] != d2.accepting[q2] {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some((prev, li)) = parent[&cur] {
                word.push(letters[li]);
                cur = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for li in 0..letters.len() {
            let next = (d1.delta[q1][li], d2.delta[q2][li]);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some((pair, li)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

pub fn equivalent(a1: &GsAutomaton, a2: &GsAutomaton) -> Result<bool> {
    Ok(distinguishing_word(a1, a2)?.is_none())
}
