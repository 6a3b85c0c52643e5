//! Term corpora and brute-force helpers shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use katra::automaton::{LabelWord, RawAutomaton};
use katra::{Alphabet, KatTerm, Letter};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn alpha(programs: &str, tests: &str) -> Alphabet {
    Alphabet::from_lists(programs, tests).unwrap()
}

pub fn term(src: &str, alpha: &Alphabet) -> KatTerm {
    katra::parse_term(src, alpha).unwrap_or_else(|e| panic!("{src}: {e}"))
}

/// Every sort-correct term with exactly `size` nodes, split by sort.
fn terms_of_size(size: usize, alpha: &Alphabet, memo: &mut Vec<(Vec<KatTerm>, Vec<KatTerm>)>) {
    let (mut boolean, mut program) = (Vec::new(), Vec::new());
    if size == 1 {
        boolean.extend([KatTerm::Zero, KatTerm::One]);
        boolean.extend((0..alpha.tests().len()).map(KatTerm::Test));
        program.extend((0..alpha.programs().len()).map(KatTerm::Prog));
    } else {
        let (b1, p1) = &memo[size - 1];
        boolean.extend(b1.iter().cloned().map(KatTerm::not));
        program.extend(b1.iter().chain(p1).cloned().map(KatTerm::star));
        for k in 1..size - 1 {
            let (bl, pl) = &memo[k];
            let (br, pr) = &memo[size - 1 - k];
            for (l, lb) in bl
                .iter()
                .map(|t| (t, true))
                .chain(pl.iter().map(|t| (t, false)))
            {
                for (r, rb) in br
                    .iter()
                    .map(|t| (t, true))
                    .chain(pr.iter().map(|t| (t, false)))
                {
                    let out = if lb && rb { &mut boolean } else { &mut program };
                    out.push(KatTerm::plus(l.clone(), r.clone()));
                    out.push(KatTerm::times(l.clone(), r.clone()));
                }
            }
        }
    }
    memo.push((boolean, program));
}

/// All sort-correct terms of size at most `max`.
pub fn all_terms(max: usize, alpha: &Alphabet) -> Vec<KatTerm> {
    let mut memo = vec![(Vec::new(), Vec::new())];
    for size in 1..=max {
        terms_of_size(size, alpha, &mut memo);
    }
    memo.into_iter()
        .flat_map(|(b, p)| b.into_iter().chain(p))
        .collect()
}

/// A random sort-correct term with exactly `size` nodes.
pub fn random_term(rng: &mut impl Rng, size: usize, alpha: &Alphabet, boolean: bool) -> KatTerm {
    let (np, nt) = (alpha.programs().len(), alpha.tests().len());
    if size == 1 {
        let leaves = 2 + nt + if boolean { 0 } else { np };
        return match rng.gen_range(0..leaves) {
            0 => KatTerm::Zero,
            1 => KatTerm::One,
            i if i < 2 + nt => KatTerm::Test(i - 2),
            i => KatTerm::Prog(i - 2 - nt),
        };
    }
    if size == 2 || rng.gen_bool(0.3) {
        if boolean || rng.gen_bool(0.4) {
            return KatTerm::not(random_term(rng, size - 1, alpha, true));
        }
        return KatTerm::star(random_term(rng, size - 1, alpha, false));
    }
    let k = rng.gen_range(1..size - 1);
    let l = random_term(rng, k, alpha, boolean);
    let r = random_term(rng, size - 1 - k, alpha, boolean);
    if rng.gen_bool(0.5) {
        KatTerm::plus(l, r)
    } else {
        KatTerm::times(l, r)
    }
}

/// `count` random terms with sizes drawn uniformly from `1..=max_size`.
pub fn random_corpus(seed: u64, count: usize, max_size: usize, alpha: &Alphabet) -> Vec<KatTerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            random_term(&mut rng, size, alpha, false)
        })
        .collect()
}

pub fn text(w: &[Letter], alpha: &Alphabet) -> String {
    alpha.word_text(w)
}

/// Words spelled by the raw automaton when a two-letter label contributes
/// both of its letters, up to `bound` letters.
pub fn raw_words(raw: &RawAutomaton, bound: usize) -> BTreeSet<Vec<Letter>> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, Vec<Letter>)> =
        raw.starts.iter().map(|&q| (q, Vec::new())).collect();
    while let Some((q, w)) = stack.pop() {
        if raw.accepts.contains(&q) {
            out.insert(w.clone());
        }
        for t in raw.transitions.iter().filter(|t| t.from == q) {
            let mut next = w.clone();
            match t.label {
                LabelWord::One(x) => next.push(x),
                LabelWord::Two(x, y) => next.extend([x, y]),
            }
            if next.len() <= bound {
                stack.push((t.to, next));
            }
        }
    }
    out
}

/// Applies `x x = x` and `x y = 0` to adjacent atoms; `None` when the word
/// is annihilated.
pub fn collapse_atoms(w: &[Letter]) -> Option<Vec<Letter>> {
    let mut out: Vec<Letter> = Vec::new();
    for &l in w {
        match (out.last(), l) {
            (Some(Letter::Atom(a)), Letter::Atom(b)) if *a == b => {}
            (Some(Letter::Atom(_)), Letter::Atom(_)) => return None,
            _ => out.push(l),
        }
    }
    Some(out)
}

/// Paths to every leaf of a JSON value.
fn leaves(v: &serde_json::Value, path: &mut Vec<PathStep>, out: &mut Vec<Vec<PathStep>>) {
    use serde_json::Value;
    match v {
        Value::Array(items) if !items.is_empty() => {
            for (i, x) in items.iter().enumerate() {
                path.push(PathStep::Index(i));
                leaves(x, path, out);
                path.pop();
            }
        }
        Value::Object(map) if !map.is_empty() => {
            for (k, x) in map {
                path.push(PathStep::Key(k.clone()));
                leaves(x, path, out);
                path.pop();
            }
        }
        _ => out.push(path.clone()),
    }
}

#[derive(Debug, Clone)]
pub enum PathStep {
    Key(String),
    Index(usize),
}

fn at<'v>(v: &'v mut serde_json::Value, path: &[PathStep]) -> &'v mut serde_json::Value {
    path.iter().fold(v, |v, step| match step {
        PathStep::Key(k) => &mut v[k.as_str()],
        PathStep::Index(i) => &mut v[*i],
    })
}

/// Replaces one leaf of `v` by a different value of a plausible kind.
pub fn mutate_leaf(v: &serde_json::Value, rng: &mut impl Rng) -> (serde_json::Value, String) {
    use serde_json::{json, Value};
    let mut paths = Vec::new();
    leaves(v, &mut Vec::new(), &mut paths);
    let path = &paths[rng.gen_range(0..paths.len())];
    let mut out = v.clone();
    let leaf = at(&mut out, path);
    let before = leaf.clone();
    *leaf = match &before {
        Value::Bool(b) => Value::Bool(!b),
        Value::Number(n) => {
            let n = n.as_u64().unwrap_or(0);
            match rng.gen_range(0..3) {
                0 => json!(n + 1),
                1 => json!(n.saturating_sub(1).max(if n == 0 { 2 } else { 0 })),
                _ => json!(rng.gen_range(0..64)),
            }
        }
        Value::String(s) => {
            let options = [
                "atom:0", "atom:1", "atom:00", "atom:01", "atom:10", "atom:11", "prog:p", "prog:q",
                "p", "q", "b", "c", "~b", "1", "0", "",
            ];
            let mut pick = options[rng.gen_range(0..options.len())].to_string();
            if pick == *s {
                pick.push('x');
            }
            Value::String(pick)
        }
        Value::Null => json!("atom:0"),
        Value::Array(_) => json!([0]),
        Value::Object(_) => json!({"x": 0}),
    };
    let desc = format!("{path:?}: {before} -> {}", at(&mut out, path));
    (out, desc)
}

/// Twenty while programs over `p,q` / `b,c`.
pub const WHILE_CORPUS: [&str; 20] = [
    "skip",
    "p",
    "p; q",
    "while b do p",
    "while b do p; q",
    "if b then p else q",
    "if b then p",
    "if b then p else q; while c do p",
    "while b do { p; q }",
    "while b do { if c then p else q }",
    "while b & c do p",
    "while b | ~c do { q; p }",
    "if ~b then skip else { while c do q }",
    "while b do { while c do p; q }",
    "p; while b do p; q",
    "if b & ~c then { p; p } else { if c then q }",
    "while true do p",
    "while false do q",
    "if b then { while c do { p } } else { q; while b do q }",
    "while ~(b & c) do { if b then p else q; skip }",
];

pub fn while_program(src: &str, alpha: &Alphabet) -> katra::program::WhileProgram {
    katra::program::parse_while(src, alpha).unwrap_or_else(|e| panic!("{src}: {e}"))
}

/// Implications `r = 0 → p = q` built from every triple of the given sources.
pub fn hoare_instances(srcs: &[&str], alpha: &Alphabet) -> Vec<katra::program::HoareImplication> {
    let ts: Vec<KatTerm> = srcs.iter().map(|s| term(s, alpha)).collect();
    let mut out = Vec::new();
    for r in &ts {
        for p in &ts {
            for q in &ts {
                out.push(katra::program::HoareImplication {
                    r: r.clone(),
                    p: p.clone(),
                    q: q.clone(),
                });
            }
        }
    }
    out
}
