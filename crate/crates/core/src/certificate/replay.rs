//! Recomputes a single step from its rule and the values of its inputs.
//! Emission and checking both go through [`derive_step`], so an emitted step
//! is exactly what the checker expects to see.

use super::{CertStep, KaLaw, RewriteRecord, Rule, SideCondition, StepResult};
use crate::automaton::{
    base_automaton, concat_raw, simplify_entries, star_raw, sum_automaton, GsAutomaton, LabelWord,
    RawAutomaton,
};
use crate::guarded::{Atom, Letter};
use crate::ka::{ka_bounded_language, parse_ka, KaNode, KaTerm};
use crate::term::{apply_nnf_rewrite, parse_term, Alphabet, KatTerm, NnfRewrite};

/// Largest word length a law instance may be checked at.
pub const MAX_LAW_BOUND: usize = 10;

#[derive(Debug, Clone)]
pub(crate) enum StepValue {
    Nnf(KatTerm),
    AtomDef,
    Automaton { aut: GsAutomaton, repr: KatTerm },
    Raw { raw: RawAutomaton, repr: KatTerm },
    Law,
}

pub(crate) struct Derived {
    pub step: CertStep,
    pub value: StepValue,
}

type Reason = String;

fn arity(inputs: &[usize], n: usize, rule: &str) -> Result<(), Reason> {
    if inputs.len() == n {
        Ok(())
    } else {
        Err(format!("{rule} takes {n} input(s), got {}", inputs.len()))
    }
}

fn automaton_input(prior: &[StepValue], i: usize) -> Result<(&GsAutomaton, &KatTerm), Reason> {
    match &prior[i] {
        StepValue::Automaton { aut, repr } => Ok((aut, repr)),
        _ => Err(format!("input step {i} does not produce an automaton")),
    }
}

fn o_block_shape(alpha: &Alphabet, input: usize, a: &GsAutomaton) -> SideCondition {
    SideCondition::OBlockShape {
        input,
        n_o: a.n_o(),
        start: a.o_starts(),
        accept: a.o_accepts(),
        labels: a
            .o_labels()
            .into_iter()
            .map(|x| alpha.letter_label(Letter::Atom(x)))
            .collect(),
        holds: a.check_o_block().is_ok(),
    }
}

fn vec_zero(name: String, left: Vec<usize>, right: Vec<usize>) -> SideCondition {
    let holds = !left.iter().any(|q| right.contains(q));
    SideCondition::VecZero {
        name,
        left,
        right,
        holds,
    }
}

pub(crate) fn derive_step(
    alpha: &Alphabet,
    source: &KatTerm,
    id: usize,
    rule: &Rule,
    inputs: &[usize],
    prior: &[StepValue],
) -> Result<Derived, Reason> {
    let tests = alpha.tests().len();
    let mut side_conditions = Vec::new();
    let mut rule = rule.clone();
    let (result, value) = match &mut rule {
        Rule::NnfRewrite { axiom, path } => {
            let before = match inputs {
                [] => source,
                [k] => match &prior[*k] {
                    StepValue::Nnf(t) => t,
                    _ => return Err(format!("input step {k} is not an NNF rewrite")),
                },
                _ => return Err("an NNF rewrite takes at most one input".into()),
            };
            let rw = NnfRewrite {
                axiom: *axiom,
                path: path.clone(),
            };
            let after = apply_nnf_rewrite(before, &rw)
                .ok_or_else(|| format!("axiom {axiom} does not apply at path {path:?}"))?;
            (
                StepResult::Term(after.to_text(alpha)),
                StepValue::Nnf(after),
            )
        }
        Rule::AtomDefinition { index, bits } => {
            arity(inputs, 0, "an atom definition")?;
            if *index >= alpha.signature().atom_count() {
                return Err(format!("atom index {index} out of range"));
            }
            let atom = Atom(*index);
            if *bits != atom.bits(tests) {
                return Err(format!(
                    "atom {index} has bits {}, not {bits}",
                    atom.bits(tests)
                ));
            }
            (
                StepResult::Term(atom.as_term(tests).to_text(alpha)),
                StepValue::AtomDef,
            )
        }
        Rule::BaseCase { atomic } => {
            arity(inputs, 0, "a base case")?;
            let t = parse_term(atomic, alpha).map_err(|e| format!("base case term: {e}"))?;
            let aut = base_automaton(&t, alpha).map_err(|e| e.to_string())?;
            (
                StepResult::Automaton(aut.to_file(alpha)),
                StepValue::Automaton { aut, repr: t },
            )
        }
        Rule::Sum => {
            arity(inputs, 2, "a sum")?;
            let (a1, r1) = automaton_input(prior, inputs[0])?;
            let (a2, r2) = automaton_input(prior, inputs[1])?;
            side_conditions.push(o_block_shape(alpha, inputs[0], a1));
            side_conditions.push(o_block_shape(alpha, inputs[1], a2));
            let aut = sum_automaton(a1, a2).map_err(|e| e.to_string())?;
            let repr = KatTerm::plus(r1.clone(), r2.clone());
            (
                StepResult::Automaton(aut.to_file(alpha)),
                StepValue::Automaton { aut, repr },
            )
        }
        Rule::Concat => {
            arity(inputs, 2, "a concatenation")?;
            let (a1, r1) = automaton_input(prior, inputs[0])?;
            let (a2, r2) = automaton_input(prior, inputs[1])?;
            for (i, a) in [(inputs[0], a1), (inputs[1], a2)] {
                side_conditions.push(vec_zero(
                    format!("o[{i}]ᵀ r[{i}]"),
                    a.o_starts(),
                    a.o_accepts(),
                ));
                side_conditions.push(vec_zero(
                    format!("s[{i}]ᵀ t[{i}]"),
                    a.s_starts(),
                    a.s_accepts(),
                ));
            }
            let raw = concat_raw(a1, a2).map_err(|e| e.to_string())?;
            let repr = KatTerm::times(r1.clone(), r2.clone());
            (
                StepResult::Raw(raw.to_file(alpha)),
                StepValue::Raw { raw, repr },
            )
        }
        Rule::Star => {
            arity(inputs, 1, "a star")?;
            let i = inputs[0];
            let (a, r) = automaton_input(prior, i)?;
            side_conditions.push(o_block_shape(alpha, i, a));
            side_conditions.push(vec_zero(
                format!("s[{i}]ᵀ t[{i}]"),
                a.s_starts(),
                a.s_accepts(),
            ));
            for l in a.signature().letters() {
                let holds = !a.transitions().iter().any(|t| {
                    t.label == l && t.from >= a.n_o() && a.is_start(t.from) && a.is_accept(t.to)
                });
                side_conditions.push(SideCondition::VecMatVecZero {
                    name: format!("s[{i}]ᵀ A[{}] t[{i}]", alpha.letter_label(l)),
                    left: a.s_starts(),
                    letter: alpha.letter_label(l),
                    right: a.s_accepts(),
                    holds,
                });
            }
            let raw = star_raw(a).map_err(|e| e.to_string())?;
            let repr = KatTerm::star(r.clone());
            (
                StepResult::Raw(raw.to_file(alpha)),
                StepValue::Raw { raw, repr },
            )
        }
        Rule::EntrySimplify { rewrites } => {
            arity(inputs, 1, "an entry simplification")?;
            let StepValue::Raw { raw, repr } = &prior[inputs[0]] else {
                return Err(format!(
                    "input step {} does not produce a raw automaton",
                    inputs[0]
                ));
            };
            let simplified = simplify_entries(raw).map_err(|e| e.to_string())?;
            let word = |l: LabelWord| match l {
                LabelWord::One(x) => alpha.letter_label(x),
                LabelWord::Two(x, y) => {
                    format!("{} {}", alpha.letter_label(x), alpha.letter_label(y))
                }
            };
            *rewrites = simplified
                .rewrites
                .iter()
                .map(|r| RewriteRecord {
                    from: r.from,
                    to: r.to,
                    before: r.before.iter().map(|&l| word(l)).collect(),
                    after: r.after.iter().map(|&l| alpha.letter_label(l)).collect(),
                })
                .collect();
            let atom = |a: Atom| alpha.letter_label(Letter::Atom(a));
            side_conditions.extend(simplified.collapses.iter().map(|c| {
                SideCondition::AtomCollapse {
                    left: atom(c.left),
                    right: atom(c.right),
                    outcome: c.outcome.map(atom),
                }
            }));
            let aut = simplified.automaton;
            (
                StepResult::Automaton(aut.to_file(alpha)),
                StepValue::Automaton {
                    aut,
                    repr: repr.clone(),
                },
            )
        }
        Rule::KaRule {
            law,
            lhs,
            rhs,
            premise,
            bound,
        } => {
            arity(inputs, 0, "a law instance")?;
            let holds = check_law(alpha, *law, lhs, rhs, premise.as_ref(), *bound)?;
            (StepResult::Law { holds }, StepValue::Law)
        }
    };
    Ok(Derived {
        step: CertStep {
            id,
            rule,
            inputs: inputs.to_vec(),
            side_conditions,
            result,
        },
        value,
    })
}

fn parts2(t: &KaTerm, want_times: bool) -> Option<(&KaTerm, &KaTerm)> {
    match (t.node(), want_times) {
        (KaNode::Times(a, b), true) | (KaNode::Plus(a, b), false) => Some((a, b)),
        _ => None,
    }
}

fn star_body(t: &KaTerm) -> Option<&KaTerm> {
    match t.node() {
        KaNode::Star(a) => Some(a),
        _ => None,
    }
}

/// Checks that `lhs = rhs` (and the premise, if any) is an instance of `law`
/// and that both sides agree on every word up to `bound` letters.
fn check_law(
    alpha: &Alphabet,
    law: KaLaw,
    lhs: &str,
    rhs: &str,
    premise: Option<&(String, String)>,
    bound: usize,
) -> Result<bool, Reason> {
    if bound > MAX_LAW_BOUND {
        return Err(format!("bound {bound} exceeds {MAX_LAW_BOUND}"));
    }
    let parse = |s: &str| parse_ka(s, alpha).map_err(|e| format!("law term `{s}`: {e}"));
    let (l, r) = (parse(lhs)?, parse(rhs)?);
    let not_instance = || format!("{lhs} = {rhs} is not an instance of {law:?}");
    let times = |t| parts2(t, true);
    match law {
        KaLaw::Denesting => {
            let (a, b) = star_body(&l)
                .and_then(|x| parts2(x, false))
                .ok_or_else(not_instance)?;
            let (ra, rest) = times(&r).ok_or_else(not_instance)?;
            let (rb, ra2) = star_body(rest).and_then(times).ok_or_else(not_instance)?;
            if premise.is_some() || star_body(ra) != Some(a) || rb != b || star_body(ra2) != Some(a)
            {
                return Err(not_instance());
            }
        }
        KaLaw::Sliding => {
            let (ab, a) = times(&l).ok_or_else(not_instance)?;
            let (a1, b) = star_body(ab).and_then(times).ok_or_else(not_instance)?;
            let (a2, ba) = times(&r).ok_or_else(not_instance)?;
            let (b2, a3) = star_body(ba).and_then(times).ok_or_else(not_instance)?;
            if premise.is_some() || a1 != a || a2 != a || a3 != a || b2 != b {
                return Err(not_instance());
            }
        }
        KaLaw::Bisimulation => {
            let (pl, pr) = premise.ok_or_else(|| "bisimulation needs a premise".to_string())?;
            let (pl, pr) = (parse(pl)?, parse(pr)?);
            let (a, x) = times(&pl).ok_or_else(not_instance)?;
            let (x2, b) = times(&pr).ok_or_else(not_instance)?;
            let (sa, x3) = times(&l).ok_or_else(not_instance)?;
            let (x4, sb) = times(&r).ok_or_else(not_instance)?;
            if x2 != x || x3 != x || x4 != x || star_body(sa) != Some(a) || star_body(sb) != Some(b)
            {
                return Err(not_instance());
            }
            if ka_bounded_language(&pl, bound) != ka_bounded_language(&pr, bound) {
                return Err("premise fails on bounded words".into());
            }
        }
    }
    Ok(ka_bounded_language(&l, bound) == ka_bounded_language(&r, bound))
}
