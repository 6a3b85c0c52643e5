mod common;

use common::{alpha, hoare_instances, term, while_program, WHILE_CORPUS};
use katra::automaton::equivalent;
use katra::oracle::{agrees_up_to, pumping_bound};
use katra::program::{
    check_determinism, check_while_determinism, compare_hoare_modes, decide_hoare, encode_while,
    hoare_counterexample, hoare_reduce, parse_while, universal_term, HoareImplication,
    UniversalMode, WhileProgram,
};
use katra::{build_automaton, Error, KatTerm};

#[test]
fn encodings_of_the_basic_forms() {
    let a = alpha("p,q", "b");
    let b = term("b", &a);
    let (p, q) = (WhileProgram::Prim(0), WhileProgram::Prim(1));
    let cases = [
        (WhileProgram::while_do(b.clone(), p.clone()), "(b p)* ~b"),
        (
            WhileProgram::if_then_else(b.clone(), p.clone(), q.clone()),
            "b p + ~b q",
        ),
        (WhileProgram::if_then(b.clone(), p.clone()), "b p + ~b"),
        (WhileProgram::seq(p.clone(), WhileProgram::Skip), "p 1"),
    ];
    for (w, expected) in cases {
        assert_eq!(encode_while(&w), term(expected, &a));
    }
}

#[test]
fn parser_examples_and_errors() {
    let a = alpha("p,q", "b,c");
    let w = while_program("while b do p; q", &a);
    let (p, q) = (WhileProgram::Prim(0), WhileProgram::Prim(1));
    assert_eq!(
        w,
        WhileProgram::seq(WhileProgram::while_do(term("b", &a), p.clone()), q.clone())
    );
    let braced = while_program("while b do { p; q }", &a);
    assert_eq!(
        braced,
        WhileProgram::while_do(term("b", &a), WhileProgram::seq(p, q))
    );
    let guard = while_program("if ~(b & c) | false then skip", &a);
    assert_eq!(
        guard,
        WhileProgram::if_then(term("~(b c) + 0", &a), WhileProgram::Skip)
    );

    assert!(matches!(
        parse_while("while b do", &a),
        Err(Error::Syntax { .. })
    ));
    assert!(matches!(
        parse_while("if p then q", &a),
        Err(Error::Sort(_))
    ));
    assert!(matches!(
        parse_while("while b do r", &a),
        Err(Error::UnknownIdentifier { .. })
    ));
    assert!(matches!(parse_while("p q", &a), Err(Error::Syntax { .. })));
}

#[test]
fn corpus_encodings_stay_linear_and_match_the_oracle() {
    let a = alpha("p,q", "b,c");
    for src in WHILE_CORPUS {
        let w = while_program(src, &a);
        let t = encode_while(&w);
        assert!(
            t.size() <= 4 * w.size(),
            "{src}: {} > 4 * {}",
            t.size(),
            w.size()
        );
        let aut = build_automaton(&t, &a).unwrap();
        assert!(
            agrees_up_to(&aut, &t, &a, pumping_bound(&aut)).unwrap(),
            "{src}"
        );
    }
}

#[test]
fn while_programs_compile_deterministically() {
    let a = alpha("p,q", "b,c");
    let w = WhileProgram::while_do(term("b", &a), WhileProgram::Prim(0));
    assert!(check_while_determinism(&w, &a).unwrap().is_deterministic());
    let w = WhileProgram::seq(
        WhileProgram::if_then_else(term("b", &a), WhileProgram::Prim(0), WhileProgram::Prim(1)),
        WhileProgram::while_do(term("c", &a), WhileProgram::Prim(0)),
    );
    let report = check_while_determinism(&w, &a).unwrap();
    assert!(report.is_deterministic(), "{report:?}");
    assert_eq!(report.max_subset, 1);
    assert!(report.raw_max_subset >= report.max_subset);

    for src in WHILE_CORPUS {
        let report = check_while_determinism(&while_program(src, &a), &a).unwrap();
        assert!(report.is_deterministic(), "{src}: {report:?}");
    }
}

#[test]
fn nondeterministic_sum_is_detected() {
    let a = alpha("p", "b");
    let report = check_determinism(&build_automaton(&term("p + p", &a), &a).unwrap());
    assert!(!report.is_deterministic());
    assert_eq!(report.max_subset, 2);
}

#[test]
fn hoare_reduction_shapes() {
    let a = alpha("p,q", "b");
    assert_eq!(
        universal_term(&a, UniversalMode::PlainSum).unwrap(),
        term("p + q", &a)
    );
    let h = HoareImplication {
        r: term("b p", &a),
        p: term("p", &a),
        q: term("p", &a),
    };
    for mode in [UniversalMode::PlainSum, UniversalMode::StarredUniversal] {
        let (l, r) = hoare_reduce(&h, &a, mode).unwrap();
        assert_eq!(l, r);
        assert!(decide_hoare(&h, &a, mode).unwrap().equivalent);
    }

    let h = HoareImplication {
        r: term("b", &a),
        p: term("p q", &a),
        q: term("p + q*", &a),
    };
    let u = universal_term(&a, UniversalMode::PlainSum).unwrap();
    let (l, _) = hoare_reduce(&h, &a, UniversalMode::PlainSum).unwrap();
    assert_eq!(l.size() - h.p.size(), 2 * u.size() + h.r.size() + 3);

    let none = alpha("", "b");
    let h = HoareImplication {
        r: KatTerm::Zero,
        p: KatTerm::One,
        q: KatTerm::One,
    };
    assert!(matches!(
        hoare_reduce(&h, &none, UniversalMode::PlainSum),
        Err(Error::EmptyProgramAlphabet)
    ));
    assert_eq!(
        universal_term(&none, UniversalMode::StarredUniversal).unwrap(),
        KatTerm::star(KatTerm::Zero)
    );
    assert!(
        decide_hoare(&h, &none, UniversalMode::StarredUniversal)
            .unwrap()
            .equivalent
    );
}

#[test]
fn hoare_decisions_and_counterexamples() {
    let a = alpha("p", "b");
    // b = 0 makes b p and 0 equal
    let h = HoareImplication {
        r: term("b", &a),
        p: term("b p", &a),
        q: KatTerm::Zero,
    };
    assert_eq!(hoare_counterexample(&h, &a, 5).unwrap(), None);
    assert!(
        decide_hoare(&h, &a, UniversalMode::StarredUniversal)
            .unwrap()
            .equivalent
    );

    let h = HoareImplication {
        r: KatTerm::Zero,
        p: term("p", &a),
        q: term("p p", &a),
    };
    let w = hoare_counterexample(&h, &a, 5).unwrap().unwrap();
    assert_eq!(a.word_text(&w), "x[0] p x[0]");
    let d = decide_hoare(&h, &a, UniversalMode::StarredUniversal).unwrap();
    assert!(!d.equivalent);
    let left = build_automaton(&d.left, &a).unwrap();
    assert!(!equivalent(&left, &build_automaton(&d.right, &a).unwrap()).unwrap());
}

#[test]
fn starred_universal_agrees_with_the_bounded_oracle() {
    let a = alpha("p", "b");
    let instances = hoare_instances(&["0", "b", "~b", "p", "b p", "p ~b"], &a);
    let report = compare_hoare_modes(&instances, &a, 5).unwrap();
    let starred = &report["starred"];
    assert!(starred.unexplained.is_empty(), "{:?}", starred.unexplained);
    assert_eq!(starred.instances, instances.len());
    let plain = &report["plain"];
    assert!(
        plain
            .unexplained
            .iter()
            .any(|s| s.starts_with("r = b, p = b, q = 0")),
        "{:?}",
        plain.unexplained
    );
}
