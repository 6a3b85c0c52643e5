mod common;

use std::collections::BTreeSet;

use common::{alpha, random_corpus, term};
use katra::ka::{
    encode_automaton, ka_bounded_language, parse_ka, transition_matrix, KaMatrix, KaTerm,
};
use katra::oracle::pumping_bound;
use katra::{build_automaton, reduce_to_ka, Letter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Words labelling a path from state 0 to any state of the letter graph `m`.
fn path_words(m: &[Vec<Option<Letter>>], bound: usize) -> BTreeSet<Vec<Letter>> {
    let mut out = BTreeSet::new();
    let mut stack = vec![(0usize, Vec::new())];
    while let Some((q, w)) = stack.pop() {
        out.insert(w.clone());
        if w.len() == bound {
            continue;
        }
        for (j, entry) in m[q].iter().enumerate() {
            if let Some(l) = entry {
                let mut next = w.clone();
                next.push(*l);
                stack.push((j, next));
            }
        }
    }
    out
}

fn to_matrix(m: &[Vec<Option<Letter>>]) -> KaMatrix {
    KaMatrix::from_rows(
        m.iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.map_or_else(KaTerm::zero, KaTerm::letter))
                    .collect()
            })
            .collect(),
    )
    .unwrap()
}

fn first_row_sum(m: &KaMatrix) -> KaTerm {
    KaTerm::sum_of((0..m.cols()).map(|j| m.get(0, j)).collect::<Vec<_>>())
}

#[test]
fn matrix_star_matches_path_enumeration_for_every_partition() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let letters = [Letter::Prog(0), Letter::Prog(1)];
    for _ in 0..20 {
        let n = rng.gen_range(1..=4);
        let m: Vec<Vec<Option<Letter>>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| rng.gen_bool(0.5).then(|| letters[rng.gen_range(0..2)]))
                    .collect()
            })
            .collect();
        let bound = 6;
        let expected = path_words(&m, bound);
        let km = to_matrix(&m);
        assert_eq!(
            ka_bounded_language(&first_row_sum(&km.star().unwrap()), bound),
            expected
        );
        for k in 1..n {
            let star = km.star_partitioned(k).unwrap();
            assert_eq!(
                ka_bounded_language(&first_row_sum(&star), bound),
                expected,
                "n = {n}, k = {k}"
            );
        }
    }
}

#[test]
fn encoding_of_one_is_the_sum_of_atoms() {
    let a = alpha("p", "b,c");
    let one = build_automaton(&term("1", &a), &a).unwrap();
    let lang = ka_bounded_language(&encode_automaton(&one), 5);
    let atoms: BTreeSet<Vec<Letter>> = a
        .signature()
        .atoms()
        .map(|x| vec![Letter::Atom(x)])
        .collect();
    assert_eq!(lang, atoms);
}

#[test]
fn encoding_agrees_with_the_automaton_up_to_the_pumping_bound() {
    let a = alpha("p", "b");
    for src in [
        "p",
        "b p",
        "(b p)* ~b",
        "p* + b",
        "(p + b) (p ~b)",
        "0",
        "1",
        "p p p",
    ] {
        let aut = build_automaton(&term(src, &a), &a).unwrap();
        let bound = pumping_bound(&aut).min(13);
        assert_eq!(
            ka_bounded_language(&encode_automaton(&aut), bound),
            aut.words_up_to(bound),
            "{src}"
        );
    }
    let b = alpha("p,q", "b");
    for t in random_corpus(3, 40, 6, &b) {
        let aut = build_automaton(&t, &b).unwrap();
        let bound = pumping_bound(&aut).min(9);
        assert_eq!(
            ka_bounded_language(&encode_automaton(&aut), bound),
            aut.words_up_to(bound)
        );
    }
}

#[test]
fn transition_matrix_lists_each_edge_once() {
    let a = alpha("p", "b");
    let aut = build_automaton(&term("p", &a), &a).unwrap();
    let m = transition_matrix(&aut);
    assert_eq!(m.get(1, 2).to_text(&a), "p");
    assert_eq!(m.get(0, 1).to_text(&a), "x[0] + x[1]");
    assert!(m.get(0, 3).is_zero());
}

/// Random regular expression over `p`, `q` with `size` letters.
fn random_ka(rng: &mut ChaCha8Rng, size: usize) -> KaTerm {
    if size <= 1 {
        return KaTerm::letter(Letter::Prog(rng.gen_range(0..2)));
    }
    match rng.gen_range(0..3) {
        0 => KaTerm::star(&random_ka(rng, size - 1)),
        1 => {
            let k = rng.gen_range(1..size);
            KaTerm::plus(&random_ka(rng, k), &random_ka(rng, size - k))
        }
        _ => {
            let k = rng.gen_range(1..size);
            KaTerm::times(&random_ka(rng, k), &random_ka(rng, size - k))
        }
    }
}

#[test]
fn denesting_sliding_and_bisimulation_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (t, s, p) = (KaTerm::times, KaTerm::star, KaTerm::plus);
    let bound = 6;
    let lang = |x: &KaTerm| ka_bounded_language(x, bound);
    for _ in 0..40 {
        let (ka, kb) = (rng.gen_range(1..4), rng.gen_range(1..4));
        let a = random_ka(&mut rng, ka);
        let b = random_ka(&mut rng, kb);
        assert_eq!(lang(&s(&p(&a, &b))), lang(&t(&s(&a), &s(&t(&b, &s(&a))))));
        assert_eq!(lang(&t(&s(&t(&a, &b)), &a)), lang(&t(&a, &s(&t(&b, &a)))));
    }
    // a y = y b with a = p q, y = p, b = q p
    let al = alpha("p,q", "");
    let ka = |src: &str| parse_ka(src, &al).unwrap();
    let (a, y, b) = (ka("p q"), ka("p"), ka("q p"));
    assert_eq!(lang(&t(&a, &y)), lang(&t(&y, &b)));
    assert_eq!(lang(&t(&s(&a), &y)), lang(&t(&y, &s(&b))));
}

#[test]
fn reduction_examples() {
    let a = alpha("p", "b");
    let same = reduce_to_ka(&term("b", &a), &term("b", &a), &a).unwrap();
    assert_eq!(same.left, same.right);
    assert_ne!(same.left.to_text(&a), "b");
    let idem = reduce_to_ka(&term("b b", &a), &term("b", &a), &a).unwrap();
    assert_eq!(
        ka_bounded_language(&idem.left, 7),
        ka_bounded_language(&idem.right, 7)
    );
    assert_eq!(idem.atom_definitions.len(), 2);
    assert_eq!(idem.atom_definitions[1].1.to_text(&a), "b");
    assert_eq!(idem.atom_definitions[0].1.to_text(&a), "~b");
}

#[test]
fn reduction_output_grows_polynomially() {
    let a = alpha("p,q", "b");
    for t in random_corpus(21, 60, 10, &a) {
        let r = reduce_to_ka(&t, &t, &a).unwrap();
        let dag = r.left.dag_size() as f64;
        let n = r.left_automaton.n().max(1) as f64;
        // the encoding is built from n letter matrices, so its shared size is
        // polynomial in the state count
        assert!(dag <= 64.0 * n.powi(3) + 16.0, "{} -> {dag}", t.to_text(&a));
    }
}
