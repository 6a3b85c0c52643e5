//! The full pipeline: NNF, then the inductive construction, with a
//! certificate recording every step.

use crate::automaton::{
    base_automaton, concat_automaton, star_automaton, sum_automaton, GsAutomaton,
};
use crate::certificate::{
    derive_step, CertStep, Certificate, Rule, StepValue, CERTIFICATE_VERSION,
};
use crate::error::{Error, Result};
use crate::guarded::Atom;
use crate::ka::{encode_automaton, KaTerm};
use crate::term::{nnf_trace, to_nnf, Alphabet, KatTerm};

#[derive(Debug, Clone)]
pub struct Compilation {
    pub nnf: KatTerm,
    pub automaton: GsAutomaton,
    pub certificate: Certificate,
}

fn check_term(t: &KatTerm, alpha: &Alphabet) -> Result<()> {
    alpha.check_test_cap()?;
    t.sort()?;
    let sig = alpha.signature();
    fn walk(t: &KatTerm, programs: usize, tests: usize) -> Result<()> {
        match t {
            KatTerm::Prog(p) if *p >= programs => {
                Err(Error::UnknownLetter(format!("program #{p}")))
            }
            KatTerm::Test(b) if *b >= tests => Err(Error::UnknownLetter(format!("test #{b}"))),
            _ => t
                .children()
                .into_iter()
                .try_for_each(|c| walk(c, programs, tests)),
        }
    }
    walk(t, sig.programs, sig.tests)
}

fn is_atomic(t: &KatTerm) -> bool {
    match t {
        KatTerm::Zero | KatTerm::One | KatTerm::Prog(_) | KatTerm::Test(_) => true,
        KatTerm::Not(inner) => matches!(**inner, KatTerm::Test(_)),
        _ => false,
    }
}

/// Automaton for `t` without a certificate.
pub fn build_automaton(t: &KatTerm, alpha: &Alphabet) -> Result<GsAutomaton> {
    check_term(t, alpha)?;
    construct(&to_nnf(t), alpha)
}

fn construct(t: &KatTerm, alpha: &Alphabet) -> Result<GsAutomaton> {
    if is_atomic(t) {
        return base_automaton(t, alpha);
    }
    match t {
        KatTerm::Plus(a, b) => sum_automaton(&construct(a, alpha)?, &construct(b, alpha)?),
        KatTerm::Times(a, b) => concat_automaton(&construct(a, alpha)?, &construct(b, alpha)?),
        KatTerm::Star(a) => star_automaton(&construct(a, alpha)?),
        _ => unreachable!("NNF terms complement only primitive tests"),
    }
}

struct Emitter<'a> {
    alpha: &'a Alphabet,
    source: &'a KatTerm,
    steps: Vec<CertStep>,
    values: Vec<StepValue>,
}

impl Emitter<'_> {
    fn push(&mut self, rule: Rule, inputs: Vec<usize>) -> usize {
        let id = self.steps.len();
        let derived = derive_step(self.alpha, self.source, id, &rule, &inputs, &self.values)
            .unwrap_or_else(|reason| panic!("emitted step {id} does not replay: {reason}"));
        self.steps.push(derived.step);
        self.values.push(derived.value);
        id
    }

    fn construct(&mut self, t: &KatTerm) -> usize {
        if is_atomic(t) {
            return self.push(
                Rule::BaseCase {
                    atomic: t.to_text(self.alpha),
                },
                vec![],
            );
        }
        match t {
            KatTerm::Plus(a, b) => {
                let (i, j) = (self.construct(a), self.construct(b));
                self.push(Rule::Sum, vec![i, j])
            }
            KatTerm::Times(a, b) => {
                let (i, j) = (self.construct(a), self.construct(b));
                let raw = self.push(Rule::Concat, vec![i, j]);
                self.push(Rule::EntrySimplify { rewrites: vec![] }, vec![raw])
            }
            KatTerm::Star(a) => {
                let i = self.construct(a);
                let raw = self.push(Rule::Star, vec![i]);
                self.push(Rule::EntrySimplify { rewrites: vec![] }, vec![raw])
            }
            _ => unreachable!("NNF terms complement only primitive tests"),
        }
    }
}

/// Compiles `t` and records a certificate for the construction.
pub fn compile(t: &KatTerm, alpha: &Alphabet) -> Result<Compilation> {
    check_term(t, alpha)?;
    let (nnf, rewrites) = nnf_trace(t);
    let mut em = Emitter {
        alpha,
        source: t,
        steps: Vec::new(),
        values: Vec::new(),
    };
    let mut prev: Option<usize> = None;
    for rw in rewrites {
        let inputs = prev.into_iter().collect();
        prev = Some(em.push(
            Rule::NnfRewrite {
                axiom: rw.axiom,
                path: rw.path,
            },
            inputs,
        ));
    }
    let tests = alpha.tests().len();
    for a in alpha.signature().atoms() {
        em.push(
            Rule::AtomDefinition {
                index: a.0,
                bits: a.bits(tests),
            },
            vec![],
        );
    }
    let root = em.construct(&nnf);
    let StepValue::Automaton { aut, .. } = &em.values[root] else {
        unreachable!()
    };
    let automaton = aut.clone();
    let certificate = Certificate {
        version: CERTIFICATE_VERSION,
        alphabet: alpha.clone(),
        steps: em.steps,
    };
    Ok(Compilation {
        nnf,
        automaton,
        certificate,
    })
}

/// A KAT equation turned into a KA equation over `P ∪ {x_i}`.
#[derive(Debug, Clone)]
pub struct KaReduction {
    pub left: KaTerm,
    pub right: KaTerm,
    pub left_automaton: GsAutomaton,
    pub right_automaton: GsAutomaton,
    /// `x_i = α_i` for every atom.
    pub atom_definitions: Vec<(Atom, KatTerm)>,
}

pub fn reduce_to_ka(t1: &KatTerm, t2: &KatTerm, alpha: &Alphabet) -> Result<KaReduction> {
    let left_automaton = build_automaton(t1, alpha)?;
    let right_automaton = build_automaton(t2, alpha)?;
    let tests = alpha.tests().len();
    Ok(KaReduction {
        left: encode_automaton(&left_automaton),
        right: encode_automaton(&right_automaton),
        left_automaton,
        right_automaton,
        atom_definitions: alpha
            .signature()
            .atoms()
            .map(|a| (a, a.as_term(tests)))
            .collect(),
    })
}
