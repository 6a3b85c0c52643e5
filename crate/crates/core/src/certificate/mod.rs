//! Certificates: a replayable record of how a term was turned into its
//! automaton, and a checker that replays it.
//!
//! Steps come in three phases. First the NNF rewrites, each applied to the
//! term left by the previous one. Then one definition per atom. Then the
//! construction itself in post-order: a base case per leaf, a sum per `+`,
//! and a concatenation or star per `·` or `*`, each followed by the entry
//! simplification that turns its two-letter labels back into letters.

mod check;
mod replay;

use serde::{Deserialize, Serialize};

use crate::automaton::AutomatonFile;
use crate::term::{Alphabet, NnfAxiom};

pub use check::{check_certificate, Verdict};
pub(crate) use replay::{derive_step, StepValue};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub alphabet: Alphabet,
    pub steps: Vec<CertStep>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates always serialize")
    }

    pub fn from_json(src: &str) -> crate::Result<Certificate> {
        serde_json::from_str(src).map_err(|e| crate::Error::MalformedCertificate(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertStep {
    pub id: usize,
    pub rule: Rule,
    pub inputs: Vec<usize>,
    pub side_conditions: Vec<SideCondition>,
    pub result: StepResult,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum KaLaw {
    /// `(a + b)* = a* (b a*)*`
    Denesting,
    /// `(a b)* a = a (b a)*`
    Sliding,
    /// from `a x = x b` conclude `a* x = x b*`
    Bisimulation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteRecord {
    pub from: usize,
    pub to: usize,
    pub before: Vec<String>,
    pub after: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Rule {
    NnfRewrite {
        axiom: NnfAxiom,
        path: Vec<usize>,
    },
    AtomDefinition {
        index: u32,
        bits: String,
    },
    BaseCase {
        atomic: String,
    },
    Sum,
    Concat,
    Star,
    EntrySimplify {
        rewrites: Vec<RewriteRecord>,
    },
    /// An instance of a Kleene-algebra law, checked on words up to `bound`.
    KaRule {
        law: KaLaw,
        lhs: String,
        rhs: String,
        premise: Option<(String, String)>,
        bound: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum SideCondition {
    /// `leftᵀ right = 0` for 0/1 vectors given by their supports.
    VecZero {
        name: String,
        left: Vec<usize>,
        right: Vec<usize>,
        holds: bool,
    },
    /// `leftᵀ A_letter right = 0`.
    VecMatVecZero {
        name: String,
        left: Vec<usize>,
        letter: String,
        right: Vec<usize>,
        holds: bool,
    },
    /// The o-block of step `input` has the required two-block shape.
    OBlockShape {
        input: usize,
        n_o: usize,
        start: Vec<usize>,
        accept: Vec<usize>,
        labels: Vec<String>,
        holds: bool,
    },
    /// `x_i x_i = x_i` (outcome `x_i`) or `x_i x_j = 0` (no outcome).
    AtomCollapse {
        left: String,
        right: String,
        outcome: Option<String>,
    },
}

impl SideCondition {
    pub fn holds(&self) -> bool {
        match self {
            SideCondition::VecZero { holds, .. }
            | SideCondition::VecMatVecZero { holds, .. }
            | SideCondition::OBlockShape { holds, .. } => *holds,
            SideCondition::AtomCollapse { .. } => true,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SideCondition::VecZero { name, .. } | SideCondition::VecMatVecZero { name, .. } => {
                format!("{name} = 0")
            }
            SideCondition::OBlockShape { input, .. } => format!("o-block shape of step {input}"),
            SideCondition::AtomCollapse { left, right, .. } => {
                format!("collapse of {left} {right}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum StepResult {
    Term(String),
    Automaton(AutomatonFile),
    Raw(AutomatonFile),
    Law { holds: bool },
}
