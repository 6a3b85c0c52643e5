//! Kleene algebra with tests, decided through plain Kleene algebra.
//!
//! A KAT term is put in negation normal form, every atom of the test algebra
//! becomes a fresh letter, and the term is compiled into a simple ε-free
//! automaton over programs and atoms that accepts exactly its guarded
//! strings. Two terms are equal in KAT iff their automata accept the same
//! words, which [`automaton::equivalent`] decides; [`ka::encode_automaton`]
//! turns an automaton back into a KA term when the reduction itself is
//! wanted. Each compilation can emit a [`certificate::Certificate`] that
//! [`certificate::check_certificate`] replays step by step.
//!
//! ```
//! use katra::{automaton::equivalent, build_automaton, parse_term, Alphabet};
//!
//! let alpha = Alphabet::from_lists("p,q", "").unwrap();
//! let a = build_automaton(&parse_term("p (q p)*", &alpha).unwrap(), &alpha).unwrap();
//! let b = build_automaton(&parse_term("(p q)* p", &alpha).unwrap(), &alpha).unwrap();
//! assert!(equivalent(&a, &b).unwrap());
//! ```

pub mod automaton;
pub mod certificate;
pub mod compile;
pub mod error;
pub mod guarded;
pub mod ka;
pub mod oracle;
pub mod program;
pub mod term;

pub use automaton::GsAutomaton;
pub use compile::{build_automaton, compile, reduce_to_ka, Compilation, KaReduction};
pub use error::{Error, Result};
pub use guarded::{denote, Atom, BoundedLanguage, GuardedWord, Letter, Signature};
pub use term::{parse_term, to_nnf, Alphabet, KatTerm, Sort};
