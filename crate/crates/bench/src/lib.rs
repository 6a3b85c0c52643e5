//! Fixed inputs shared by the benchmarks.

use katra::ka::{KaMatrix, KaTerm};
use katra::{parse_term, Alphabet, KatTerm, Letter};

pub fn alphabet() -> Alphabet {
    Alphabet::from_lists("p,q,r", "b,c").unwrap()
}

/// Terms of increasing size: nested loops, branching and long sequences.
pub fn terms(alpha: &Alphabet) -> Vec<(&'static str, KatTerm)> {
    [
        ("loop", "(b p)* ~b"),
        ("branch", "(b p + ~b q) (c r + ~c p)"),
        ("nested", "(b (c p)* ~c q)* ~b"),
        ("sequence", "p q r p q r p q r p q r"),
        ("sliding", "(p (q r)* + b r)* (~c p + c q*)*"),
    ]
    .into_iter()
    .map(|(name, src)| (name, parse_term(src, alpha).unwrap()))
    .collect()
}

/// `n × n` matrix with letter `p` on the superdiagonal and `q` back to 0.
pub fn cycle_matrix(n: usize) -> KaMatrix {
    let mut m = KaMatrix::zero(n, n);
    for i in 0..n {
        let (j, l) = if i + 1 < n {
            (i + 1, Letter::Prog(0))
        } else {
            (0, Letter::Prog(1))
        };
        m.set(i, j, KaTerm::letter(l));
        m.set(i, i, KaTerm::letter(Letter::Prog(2)));
    }
    m
}
