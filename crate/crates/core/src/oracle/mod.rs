//! Ground truth at desk scale: bounded enumeration of languages and of
//! small automata, counterexample search, and the minimal-automaton index
//! experiment.

mod enumerate;
pub mod minimal_index;
pub mod naive;
pub mod random;
pub mod witness;

pub use enumerate::{enumerate_dfas, DfaCode, DfaStream, TableIter, MAX_ENUM_STATES};
pub use minimal_index::{validate_minimal_index, LanguageRecord, MinimalIndexReport};
pub use witness::{find_witness, Bounds, Claim, Family, SearchError, Witness, WitnessTask};

use crate::alphabet::Word;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::observability::observable_states;

/// Longest word length accepted by [`enumerate_language`].
pub const MAX_ENUM_LENGTH: usize = 16;

/// Accepted words of length at most `max_len`, ordered by length and then
/// by alphabet order.
pub fn enumerate_language(dfa: &Dfa, max_len: usize) -> Result<Vec<Word>> {
    if max_len > MAX_ENUM_LENGTH {
        return Err(Error::Invalid(format!(
            "word length bound {max_len} exceeds {MAX_ENUM_LENGTH}"
        )));
    }
    let live = observable_states(dfa);
    let symbols = dfa.alphabet().symbols();
    let mut out = Vec::new();
    // live prefixes of the current length with their states
    let mut level: Vec<(Vec<usize>, usize)> = Vec::new();
    if live[dfa.initial()] {
        level.push((Vec::new(), dfa.initial()));
    }
    for len in 0..=max_len {
        for (w, q) in &level {
            if dfa.is_final(*q) {
                out.push(Word(w.iter().map(|&a| symbols[a]).collect()));
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (w, q) in &level {
            for a in 0..symbols.len() {
                let p = dfa.next(*q, a);
                if live[p] {
                    let mut v = w.clone();
                    v.push(a);
                    next.push((v, p));
                }
            }
        }
        level = next;
    }
    Ok(out)
}

/// Every word over the alphabet of `dfa` up to `max_len`, in the same order
/// as [`enumerate_language`].
pub fn all_words(alphabet: &crate::Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for &s in alphabet.symbols() {
                let mut v = out[i].0.clone();
                v.push(s);
                out.push(Word(v));
            }
        }
        start = end;
    }
    out
}

/// Equality of the bounded languages. An independent check on
/// [`crate::equivalent`], never its definition.
pub fn bounded_equivalent(a: &Dfa, b: &Dfa, max_len: usize) -> Result<bool> {
    Ok(enumerate_language(a, max_len)? == enumerate_language(b, max_len)?)
}
