//! Does the minimal automaton really attain the smallest semi-observable
//! count among all automata for its language? This module measures it over
//! an exhaustive population instead of assuming it.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::minimize::minimize;
use crate::observability::so_count;

use super::enumerate::{enumerate_dfas, DfaCode};

#[derive(Debug, Clone, Serialize)]
pub struct LanguageRecord {
    /// Canonical code of the minimal automaton.
    pub language: String,
    pub machines: usize,
    pub minimal_states: usize,
    pub minimal_so_count: usize,
    pub group_min_so_count: usize,
}

impl LanguageRecord {
    pub fn is_discrepancy(&self) -> bool {
        self.group_min_so_count < self.minimal_so_count
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalIndexReport {
    pub max_states: usize,
    pub alphabet: String,
    pub machines: usize,
    pub languages: usize,
    pub discrepancies: usize,
    pub records: Vec<LanguageRecord>,
}

impl MinimalIndexReport {
    pub fn flagged(&self) -> impl Iterator<Item = &LanguageRecord> {
        self.records.iter().filter(|r| r.is_discrepancy())
    }
}

/// Groups every automaton with at most `max_states` states by language and
/// compares the smallest semi-observable count in each group with that of
/// the group's minimal automaton. Records are in order of first appearance.
pub fn validate_minimal_index(max_states: usize, alphabet: &Alphabet) -> MinimalIndexReport {
    let mut index: HashMap<DfaCode, usize> = HashMap::new();
    let mut records: Vec<LanguageRecord> = Vec::new();
    let mut machines = 0;
    for dfa in enumerate_dfas(max_states, alphabet) {
        machines += 1;
        let min = minimize(&dfa);
        let key = DfaCode::of(&min);
        let count = so_count(&dfa);
        let slot = *index.entry(key.clone()).or_insert_with(|| {
            records.push(LanguageRecord {
                language: key.to_string(),
                machines: 0,
                minimal_states: min.num_states(),
                minimal_so_count: so_count(&min),
                group_min_so_count: usize::MAX,
            });
            records.len() - 1
        });
        let rec = &mut records[slot];
        rec.machines += 1;
        rec.group_min_so_count = rec.group_min_so_count.min(count);
    }
    MinimalIndexReport {
        max_states,
        alphabet: alphabet.to_string(),
        machines,
        languages: records.len(),
        discrepancies: records.iter().filter(|r| r.is_discrepancy()).count(),
        records,
    }
}

impl fmt::Display for MinimalIndexReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "max_states: {}", self.max_states)?;
        writeln!(f, "alphabet: {}", self.alphabet)?;
        writeln!(f, "machines: {}", self.machines)?;
        writeln!(f, "languages: {}", self.languages)?;
        writeln!(f, "discrepancies: {}", self.discrepancies)?;
        for r in self.flagged() {
            writeln!(
                f,
                "discrepancy {}: minimal so_count {} > group minimum {}",
                r.language, r.minimal_so_count, r.group_min_so_count
            )?;
        }
        Ok(())
    }
}
