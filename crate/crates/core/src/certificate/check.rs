use std::fmt;

use super::{derive_step, Certificate, StepResult, StepValue, CERTIFICATE_VERSION};
use crate::automaton::{GsAutomaton, RawAutomaton};
use crate::error::{Error, Result};
use crate::term::{Alphabet, KatTerm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject { step: Option<usize>, reason: String },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    fn at(step: usize, reason: impl Into<String>) -> Verdict {
        Verdict::Reject {
            step: Some(step),
            reason: reason.into(),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("accepted"),
            Verdict::Reject {
                step: Some(s),
                reason,
            } => write!(f, "rejected at step {s}: {reason}"),
            Verdict::Reject { step: None, reason } => write!(f, "rejected: {reason}"),
        }
    }
}

fn malformed(m: impl Into<String>) -> Error {
    Error::MalformedCertificate(m.into())
}

/// Replays every step of `cert` and checks that it builds `claimed` from `t`.
///
/// Structural problems (wrong version, bad step ids, forward references,
/// unreadable labels or terms) are errors; a well-formed certificate whose
/// steps do not follow from their inputs is rejected with the first failing
/// step.
pub fn check_certificate(
    cert: &Certificate,
    claimed: &GsAutomaton,
    t: &KatTerm,
) -> Result<Verdict> {
    if cert.version != CERTIFICATE_VERSION {
        return Err(malformed(format!(
            "version {} is not supported",
            cert.version
        )));
    }
    let alpha = Alphabet::new(
        cert.alphabet.programs().to_vec(),
        cert.alphabet.tests().to_vec(),
    )
    .map_err(|e| malformed(e.to_string()))?;
    alpha
        .check_test_cap()
        .map_err(|e| malformed(e.to_string()))?;
    if claimed.signature() != alpha.signature() {
        return Err(malformed(
            "the claimed automaton is over a different alphabet",
        ));
    }
    if let Err(v) = claimed.check_invariants() {
        return Ok(Verdict::Reject {
            step: None,
            reason: format!("claimed automaton: {v}"),
        });
    }
    let source = t.clone();

    let mut values: Vec<StepValue> = Vec::with_capacity(cert.steps.len());
    let mut nnf: KatTerm = source.clone();
    let mut last_automaton: Option<usize> = None;
    for (i, step) in cert.steps.iter().enumerate() {
        if step.id != i {
            return Err(malformed(format!(
                "step at position {i} has id {}",
                step.id
            )));
        }
        if let Some(&k) = step.inputs.iter().find(|&&k| k >= i) {
            return Err(malformed(format!(
                "step {i} refers to step {k}, which does not precede it"
            )));
        }
        match &step.result {
            StepResult::Automaton(file) => match GsAutomaton::from_file(file, &alpha) {
                Ok(_) => {}
                Err(Error::Invariant(v)) => {
                    return Ok(Verdict::at(i, format!("result violates an invariant: {v}")))
                }
                Err(e) => return Err(malformed(format!("step {i}: {e}"))),
            },
            StepResult::Raw(file) => {
                RawAutomaton::from_file(file, &alpha)
                    .map_err(|e| malformed(format!("step {i}: {e}")))?;
            }
            StepResult::Term(_) | StepResult::Law { .. } => {}
        }
        let derived = match derive_step(&alpha, &source, i, &step.rule, &step.inputs, &values) {
            Ok(d) => d,
            Err(reason) => return Ok(Verdict::at(i, reason)),
        };
        if let Some(failed) = derived.step.side_conditions.iter().find(|c| !c.holds()) {
            return Ok(Verdict::at(
                i,
                format!("side condition {} fails", failed.describe()),
            ));
        }
        if derived.step.side_conditions != step.side_conditions {
            let first = derived
                .step
                .side_conditions
                .iter()
                .zip(&step.side_conditions)
                .find(|(a, b)| a != b)
                .map_or_else(
                    || "the list of side conditions".to_string(),
                    |(a, _)| a.describe(),
                );
            return Ok(Verdict::at(
                i,
                format!("recorded side condition differs from recomputation: {first}"),
            ));
        }
        if derived.step.rule != step.rule {
            return Ok(Verdict::at(
                i,
                "recorded rewrites differ from recomputation",
            ));
        }
        if derived.step.result != step.result {
            return Ok(Verdict::at(i, "recorded result differs from recomputation"));
        }
        if let StepResult::Law { holds: false } = step.result {
            return Ok(Verdict::at(i, "law instance fails on bounded words"));
        }
        match &derived.value {
            StepValue::Nnf(t) => nnf = t.clone(),
            StepValue::Automaton { .. } => last_automaton = Some(i),
            _ => {}
        }
        values.push(derived.value);
    }

    if !nnf.is_nnf() {
        return Ok(Verdict::Reject {
            step: None,
            reason: "the rewrites do not reach negation normal form".into(),
        });
    }
    let Some(last) = last_automaton else {
        return Ok(Verdict::Reject {
            step: None,
            reason: "no construction steps".into(),
        });
    };
    if last != cert.steps.len() - 1 {
        return Ok(Verdict::Reject {
            step: None,
            reason: "the last step does not produce an automaton".into(),
        });
    }
    let StepValue::Automaton { aut, repr } = &values[last] else {
        unreachable!()
    };
    if *repr != nnf {
        return Ok(Verdict::at(
            last,
            "the construction does not follow the normalised term",
        ));
    }
    if aut != claimed {
        return Ok(Verdict::at(
            last,
            "the claimed automaton differs from the constructed one",
        ));
    }
    Ok(Verdict::Accept)
}
