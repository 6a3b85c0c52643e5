use thiserror::Error;

use crate::automaton::InvariantViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("unknown identifier `{name}` at column {column}")]
    UnknownIdentifier { name: String, column: usize },

    #[error("sort error: {0}")]
    Sort(String),

    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("test alphabet has {0} letters, at most {max} are supported", max = crate::term::MAX_TESTS)]
    TooManyTests(usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error(transparent)]
    Invariant(#[from] InvariantViolation),

    #[error("two-letter transition label `{0}` is not a product of two atoms")]
    NonAtomicPair(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("malformed automaton file: {0}")]
    Format(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("the program alphabet is empty, so the universal program term is undefined")]
    EmptyProgramAlphabet,
}
