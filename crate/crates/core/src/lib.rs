//! Observability analysis of regular languages.
//!
//! The crate classifies the states of complete deterministic automata as
//! observable, semi-observable or non-observable, computes the
//! semi-observability index of a language, implements the usual closure
//! operations, and searches small automata exhaustively for counterexamples
//! to closure properties.

pub mod alphabet;
pub mod dfa;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod minimize;
pub mod nfa;
pub mod observability;
pub mod ops;
pub mod oracle;
pub mod regex;
pub mod suite;

pub use alphabet::{Alphabet, Symbol, Word};
pub use dfa::{
    equivalent, is_isomorphic, product, trim_accessible, Combine, Dfa, DfaBuilder, StateId,
};
pub use error::{Error, Result};
pub use format::{parse_dfa, to_text};
pub use minimize::minimize;
pub use nfa::{determinize, remove_lambda, Nfa};
pub use observability::{
    classify_states, hierarchy_witness, init_language, is_observable_language, minimal_alphabet,
    so_count, so_index, tk_membership, ObservabilityReport, StateClass,
};
pub use ops::{Homomorphism, Operation};
pub use regex::{compile, compile_str, parse_regex, Regex};
