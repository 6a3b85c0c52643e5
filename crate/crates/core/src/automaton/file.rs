//! JSON form of automata, with states numbered from 0 and letters written
//! `prog:NAME` or `atom:BITS`. A two-letter label of a raw automaton is the
//! two letters separated by a space.

use serde::{Deserialize, Serialize};

use super::{GsAutomaton, LabelWord, RawAutomaton, RawTransition, Transition};
use crate::error::{Error, Result};
use crate::term::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionRecord {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonFile {
    pub n: usize,
    pub n_o: usize,
    pub n_s: usize,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub transitions: Vec<TransitionRecord>,
}

impl AutomatonFile {
    fn check_counts(&self) -> Result<()> {
        if self.n != self.n_o + self.n_s {
            return Err(Error::Format(format!(
                "n = {} but n_o + n_s = {}",
                self.n,
                self.n_o + self.n_s
            )));
        }
        Ok(())
    }
}

impl GsAutomaton {
    pub fn to_file(&self, alpha: &Alphabet) -> AutomatonFile {
        AutomatonFile {
            n: self.n(),
            n_o: self.n_o,
            n_s: self.n_s,
            u: self.starts.clone(),
            v: self.accepts.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|t| TransitionRecord {
                    from: t.from,
                    to: t.to,
                    label: alpha.letter_label(t.label),
                })
                .collect(),
        }
    }

    /// Reads a file exactly as written: lists are not reordered, and every
    /// invariant is checked.
    pub fn from_file(file: &AutomatonFile, alpha: &Alphabet) -> Result<GsAutomaton> {
        file.check_counts()?;
        let mut transitions = Vec::with_capacity(file.transitions.len());
        for r in &file.transitions {
            transitions.push(Transition {
                from: r.from,
                to: r.to,
                label: alpha.parse_letter_label(&r.label)?,
            });
        }
        let aut = GsAutomaton {
            sig: alpha.signature(),
            n_o: file.n_o,
            n_s: file.n_s,
            starts: file.u.clone(),
            accepts: file.v.clone(),
            transitions,
        };
        aut.check_invariants()?;
        Ok(aut)
    }

    pub fn to_json(&self, alpha: &Alphabet) -> String {
        serde_json::to_string_pretty(&self.to_file(alpha))
            .expect("automaton files always serialize")
    }

    pub fn from_json(src: &str, alpha: &Alphabet) -> Result<GsAutomaton> {
        let file: AutomatonFile =
            serde_json::from_str(src).map_err(|e| Error::Format(e.to_string()))?;
        GsAutomaton::from_file(&file, alpha)
    }
}

impl RawAutomaton {
    pub fn to_file(&self, alpha: &Alphabet) -> AutomatonFile {
        let label = |l: LabelWord| match l {
            LabelWord::One(x) => alpha.letter_label(x),
            LabelWord::Two(x, y) => format!("{} {}", alpha.letter_label(x), alpha.letter_label(y)),
        };
        AutomatonFile {
            n: self.n(),
            n_o: self.n_o,
            n_s: self.n_s,
            u: self.starts.clone(),
            v: self.accepts.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|t| TransitionRecord {
                    from: t.from,
                    to: t.to,
                    label: label(t.label),
                })
                .collect(),
        }
    }

    /// Reads a raw automaton without reordering; only the shape is checked.
    pub fn from_file(file: &AutomatonFile, alpha: &Alphabet) -> Result<RawAutomaton> {
        file.check_counts()?;
        let n = file.n;
        if let Some(q) = file.u.iter().chain(&file.v).find(|&&q| q >= n) {
            return Err(Error::Format(format!("state {q} out of range 0..{n}")));
        }
        let mut transitions = Vec::with_capacity(file.transitions.len());
        for r in &file.transitions {
            if r.from >= n || r.to >= n {
                return Err(Error::Format(format!(
                    "transition {} -> {} out of range 0..{n}",
                    r.from, r.to
                )));
            }
            let parts: Vec<&str> = r.label.split(' ').collect();
            let label = match parts.as_slice() {
                [x] => LabelWord::One(alpha.parse_letter_label(x)?),
                [x, y] => {
                    LabelWord::Two(alpha.parse_letter_label(x)?, alpha.parse_letter_label(y)?)
                }
                _ => {
                    return Err(Error::Format(format!(
                        "label `{}` has more than two letters",
                        r.label
                    )))
                }
            };
            transitions.push(RawTransition {
                from: r.from,
                to: r.to,
                label,
            });
        }
        Ok(RawAutomaton {
            sig: alpha.signature(),
            n_o: file.n_o,
            n_s: file.n_s,
            starts: file.u.clone(),
            accepts: file.v.clone(),
            transitions,
        })
    }
}
