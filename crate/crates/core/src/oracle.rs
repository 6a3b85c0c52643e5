//! Agreement between an automaton and the guarded-string denotation of a
//! term on every word up to a length bound.
//!
//! Words are explored breadth-first as pairs (automaton state set, residual
//! of the term), so the search visits each distinct pair once instead of
//! every word. This reaches bounds such as `2·states + 1` where listing
//! [`denote`](crate::guarded::denote) is out of reach.

use std::collections::{HashMap, VecDeque};

use crate::automaton::GsAutomaton;
use crate::error::{Error, Result};
use crate::guarded::{Atom, Letter, Residual, ResidualOracle};
use crate::term::{Alphabet, KatTerm};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Position {
    /// Expecting an atom; holds the residual so far.
    Boundary(Residual),
    /// Just read atom `a` after residual `r`.
    AfterAtom(Residual, Atom),
    /// No extension is in `G(t)`.
    Dead,
}

/// The pumping bound used throughout: `2·states + 1`.
pub fn pumping_bound(aut: &GsAutomaton) -> usize {
    2 * aut.n() + 1
}

/// Shortest (then least) word of at most `bound` letters on which `aut` and
/// `G(t)` disagree, or `None` if they agree on all of them.
pub fn disagreement(
    aut: &GsAutomaton,
    t: &KatTerm,
    alpha: &Alphabet,
    bound: usize,
) -> Result<Option<Vec<Letter>>> {
    if aut.signature() != alpha.signature() {
        return Err(Error::Alphabet(
            "automaton and term use different alphabets".into(),
        ));
    }
    let oracle = ResidualOracle::new(t, alpha)?;
    let table = aut.successor_table();
    let letters = alpha.signature().letters();

    let accepts = |pos: &Position| match pos {
        Position::AfterAtom(r, a) => oracle.accepts_atom(r, *a),
        _ => false,
    };
    let advance = |pos: &Position, l: Letter| -> Position {
        match (pos, l) {
            (Position::Boundary(r), Letter::Atom(a)) => Position::AfterAtom(r.clone(), a),
            (Position::AfterAtom(r, a), Letter::Prog(p)) => {
                let next = oracle.step(r, *a, p);
                if next.is_empty() {
                    Position::Dead
                } else {
                    Position::Boundary(next)
                }
            }
            _ => Position::Dead,
        }
    };

    type Key = (Vec<usize>, Position);
    let start: Key = (aut.starts().to_vec(), Position::Boundary(oracle.initial()));
    let mut parent: HashMap<Key, Option<(Key, Letter)>> = HashMap::new();
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    parent.insert(start, None);
    while let Some((key, depth)) = queue.pop_front() {
        let (states, pos) = &key;
        if states.iter().any(|&q| aut.is_accept(q)) != accepts(pos) {
            let mut word = Vec::new();
            let mut cur = &key;
            while let Some(Some((prev, l))) = parent.get(cur) {
                word.push(*l);
                cur = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        if depth == bound {
            continue;
        }
        for (li, &l) in letters.iter().enumerate() {
            let mut next: Vec<usize> = states
                .iter()
                .flat_map(|&q| table[q][li].iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            let next_pos = advance(pos, l);
            if next.is_empty() && next_pos == Position::Dead {
                continue;
            }
            let next_key = (next, next_pos);
            if !parent.contains_key(&next_key) {
                parent.insert(next_key.clone(), Some((key.clone(), l)));
                queue.push_back((next_key, depth + 1));
            }
        }
    }
    Ok(None)
}

/// Whether `aut` accepts exactly the words of `G(t)` with at most `bound`
/// letters.
pub fn agrees_up_to(
    aut: &GsAutomaton,
    t: &KatTerm,
    alpha: &Alphabet,
    bound: usize,
) -> Result<bool> {
    Ok(disagreement(aut, t, alpha, bound)?.is_none())
}
