mod common;

use std::collections::BTreeSet;

use common::{all_terms, alpha, random_corpus, term};
use katra::automaton::equivalent;
use katra::certificate::check_certificate;
use katra::oracle::{agrees_up_to, disagreement, pumping_bound};
use katra::{build_automaton, compile, denote, Error, KatTerm, Letter};

#[test]
fn compile_examples() {
    let a = alpha("p", "b");
    let p = compile(&term("p", &a), &a).unwrap().automaton;
    assert_eq!(p.n(), 4);
    assert_eq!(p.words_up_to(3).len(), 4);

    let one = compile(&KatTerm::One, &a).unwrap().automaton;
    assert_eq!(one.n(), 2);
    let atoms: BTreeSet<Vec<Letter>> = a
        .signature()
        .atoms()
        .map(|x| vec![Letter::Atom(x)])
        .collect();
    assert_eq!(one.words_up_to(pumping_bound(&one)), atoms);

    let w = term("(b p)* ~b", &a);
    let aut = compile(&w, &a).unwrap().automaton;
    assert_eq!(
        aut.words_up_to(5),
        denote(&w, &a, 5).unwrap().letter_words()
    );
}

#[test]
fn compile_reports_sort_and_alphabet_errors() {
    let a = alpha("p", "b");
    let bad = KatTerm::not(KatTerm::Prog(0));
    assert!(matches!(compile(&bad, &a), Err(Error::Sort(_))));
    assert!(matches!(
        compile(&KatTerm::Prog(2), &a),
        Err(Error::UnknownLetter(_))
    ));
    let tests: Vec<String> = (0..17).map(|i| format!("t{i}")).collect();
    let wide = katra::Alphabet::new(["p"], tests).unwrap();
    assert!(matches!(
        compile(&KatTerm::One, &wide),
        Err(Error::TooManyTests(17))
    ));
}

#[test]
fn compile_is_deterministic() {
    let a = alpha("p,q", "b,c");
    for t in random_corpus(2, 30, 12, &a) {
        let x = compile(&t, &a).unwrap();
        let y = compile(&t, &a).unwrap();
        assert_eq!(x.automaton.to_json(&a), y.automaton.to_json(&a));
        assert_eq!(x.certificate.to_json(), y.certificate.to_json());
        assert_eq!(x.automaton, build_automaton(&t, &a).unwrap());
    }
}

#[test]
fn compiled_languages_match_the_denotation_at_the_pumping_bound() {
    let a = alpha("p", "b");
    for t in all_terms(5, &a) {
        let aut = build_automaton(&t, &a).unwrap();
        assert!(
            agrees_up_to(&aut, &t, &a, pumping_bound(&aut)).unwrap(),
            "{}",
            t.to_text(&a)
        );
        // explicit listing where it is affordable
        let bound = pumping_bound(&aut).min(9);
        assert_eq!(
            aut.words_up_to(bound),
            denote(&t, &a, bound).unwrap().letter_words()
        );
    }
}

#[test]
fn the_oracle_notices_a_wrong_automaton() {
    let a = alpha("p", "b");
    let aut = build_automaton(&term("p*", &a), &a).unwrap();
    let w = disagreement(&aut, &term("(p p)*", &a), &a, pumping_bound(&aut))
        .unwrap()
        .unwrap();
    assert_eq!(a.word_text(&w), "x[0] p x[0]");
}

#[test]
fn certificates_replay_on_a_random_corpus() {
    let a = alpha("p,q", "b,c");
    for t in random_corpus(4, 80, 12, &a) {
        let c = compile(&t, &a).unwrap();
        let v = check_certificate(&c.certificate, &c.automaton, &t).unwrap();
        assert!(v.is_accept(), "{}: {v}", t.to_text(&a));
    }
}

#[test]
fn state_count_stays_within_four_per_node() {
    let a = alpha("p,q", "b,c");
    let mut terms = all_terms(6, &alpha("p", "b"));
    terms.truncate(4000);
    for t in terms.iter().chain(&random_corpus(6, 200, 12, &a)) {
        let n = build_automaton(t, &a).unwrap().n();
        assert!(n <= 4 * t.size() + 2, "{} has {n} states", t.to_text(&a));
    }
}

#[test]
fn equivalence_agrees_with_bounded_denotation_on_all_small_pairs() {
    let a = alpha("p", "b");
    let terms = all_terms(4, &a);
    let autos: Vec<_> = terms
        .iter()
        .map(|t| build_automaton(t, &a).unwrap())
        .collect();
    let bound = 2 * autos.iter().map(|x| x.n()).max().unwrap() + 1;
    let langs: Vec<_> = terms
        .iter()
        .map(|t| denote(t, &a, bound).unwrap())
        .collect();
    for i in 0..terms.len() {
        assert!(equivalent(&autos[i], &autos[i]).unwrap());
        for j in 0..i {
            let eq = equivalent(&autos[i], &autos[j]).unwrap();
            assert_eq!(eq, equivalent(&autos[j], &autos[i]).unwrap());
            assert_eq!(
                eq,
                langs[i] == langs[j],
                "{} vs {}",
                terms[i].to_text(&a),
                terms[j].to_text(&a)
            );
        }
    }
}
