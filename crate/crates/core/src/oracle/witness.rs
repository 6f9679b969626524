//! Exhaustive counterexample search for non-closure claims.
//!
//! A claim names an operation, the family its inputs are drawn from, and
//! the family its result must fall outside of. The search walks inputs in
//! canonical enumeration order (automaton code ascending, then operation
//! parameters), restricted to automata that are already minimal so each
//! language is tried once per size. Work may be spread over threads, but
//! the returned witness is always the canonically first one.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::alphabet::{Alphabet, Word};
use crate::dfa::Dfa;
use crate::minimize::{is_minimal, minimize};
use crate::observability::{
    classify_states, has_full_minimal_alphabet, is_observable_language, minimal_alphabet, so_index,
    StateClass,
};
use crate::ops::{kleene_plus_subsets, Homomorphism, Operation};

use super::all_words;
use super::enumerate::{enumerate_dfas, DfaCode, MAX_ENUM_STATES};
use super::naive::{naive_is_observable, naive_minimal_alphabet, naive_so_index};

/// Language families used by claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Semi-observability index at most `k`.
    T(usize),
    /// Index at most `k` and minimal alphabet equal to the declared one.
    TSigma(usize),
    /// Observable languages.
    O,
    /// Observable languages whose minimal alphabet is the declared one.
    OSigma,
    /// Index at most `k` over the minimal alphabet of the language, so at
    /// most `k` over every alphabet containing it.
    TAny(usize),
    /// Every regular language.
    Regular,
}

impl Family {
    pub fn contains(self, dfa: &Dfa) -> bool {
        match self {
            Family::T(k) => so_index(dfa) <= k,
            Family::TSigma(k) => has_full_minimal_alphabet(dfa) && so_index(dfa) <= k,
            Family::O => is_observable_language(dfa),
            Family::OSigma => has_full_minimal_alphabet(dfa) && is_observable_language(dfa),
            Family::TAny(k) => own_alphabet(dfa).is_none_or(|d| so_index(&d) <= k),
            Family::Regular => true,
        }
    }

    /// Same predicate through the independent classifier.
    pub fn contains_naive(self, dfa: &Dfa) -> bool {
        let full = || naive_minimal_alphabet(dfa).len() == dfa.alphabet().len();
        match self {
            Family::T(k) => naive_so_index(dfa) <= k,
            Family::TSigma(k) => full() && naive_so_index(dfa) <= k,
            Family::O => naive_is_observable(dfa),
            Family::OSigma => full() && naive_is_observable(dfa),
            Family::TAny(k) => dfa
                .restrict(&naive_minimal_alphabet(dfa))
                .is_none_or(|d| naive_so_index(&d) <= k),
            Family::Regular => true,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::T(k) => write!(f, "T{k}"),
            Family::TSigma(k) => write!(f, "T{k}(Σ)"),
            Family::TAny(k) => write!(f, "T{k}(any Σ)"),
            Family::O => f.write_str("O"),
            Family::OSigma => f.write_str("O(Σ)"),
            Family::Regular => f.write_str("REG"),
        }
    }
}

/// A registered non-closure claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub operation: Operation,
    /// Family of the first (or only) operand.
    pub inputs: Family,
    /// Family of the second operand of binary operations.
    pub second: Family,
    /// The result must lie outside this family.
    pub excluded: Family,
}

const O_OPS: [&str; 10] = [
    "union",
    "intersect",
    "complement",
    "concat",
    "intreg",
    "hom",
    "invhom",
    "mirror",
    "lquot",
    "rquot",
];
const OSIGMA_OPS: [&str; 6] = [
    "intersect",
    "complement",
    "hom",
    "invhom",
    "mirror",
    "rquot",
];

impl Claim {
    fn t(id: &str, operation: Operation, k: usize) -> Claim {
        Claim {
            id: id.to_string(),
            operation,
            inputs: Family::TSigma(k),
            second: Family::TSigma(k),
            excluded: Family::TAny(k),
        }
    }

    fn observable(prefix: &str, op: &str, family: Family) -> Claim {
        let (operation, second) = match op {
            "intreg" => (Operation::Intersect, Family::Regular),
            _ => (op.parse().expect("registered operation"), family),
        };
        Claim {
            id: format!("{prefix}-nonclosure-{op}"),
            operation,
            inputs: family,
            second,
            excluded: Family::O,
        }
    }

    /// Every registered claim, in a fixed order.
    pub fn registry() -> Vec<Claim> {
        let mut claims = vec![
            Claim::t("T1-union", Operation::Union, 1),
            Claim::t("T1-concat", Operation::Concat, 1),
            Claim::t("T1-hom", Operation::Hom, 1),
            Claim::t("T1-invhom", Operation::InvHom, 1),
            Claim::t("T2-plus", Operation::Plus, 2),
            Claim::t("T3-plus", Operation::Plus, 3),
        ];
        claims.extend(O_OPS.iter().map(|op| Claim::observable("O", op, Family::O)));
        claims.extend(
            OSIGMA_OPS
                .iter()
                .map(|op| Claim::observable("OSigma", op, Family::OSigma)),
        );
        claims
    }

    pub fn parse(id: &str) -> Result<Claim, SearchError> {
        Claim::registry()
            .into_iter()
            .find(|c| c.id == id)
            .ok_or_else(|| SearchError::UnknownClaim(id.to_string()))
    }

    /// Starting bounds over {a, b}.
    pub fn default_bounds(&self) -> Bounds {
        let max_states = match self.id.as_str() {
            "T1-union" => 3,
            "T2-plus" | "T3-plus" => 6,
            _ => 4,
        };
        Bounds {
            max_states,
            sigma: Alphabet::from_chars("ab").expect("valid"),
            max_image: 3,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} on {}", self.id, self.operation, self.inputs)?;
        if self.operation.arity() == 2 {
            write!(f, " x {}", self.second)?;
        }
        write!(f, " leaves {}", self.excluded)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub max_states: usize,
    pub sigma: Alphabet,
    /// Longest homomorphic image tried.
    pub max_image: usize,
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max_states={} sigma={} max_image={}",
            self.max_states, self.sigma, self.max_image
        )
    }
}

#[derive(Debug, Clone)]
pub struct WitnessTask {
    pub claim: Claim,
    pub bounds: Bounds,
    /// Give up (with [`SearchError::BudgetExceeded`]) after this instant.
    pub deadline: Option<Instant>,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl WitnessTask {
    pub fn new(claim: Claim, bounds: Bounds) -> Self {
        WitnessTask {
            claim,
            bounds,
            deadline: None,
            workers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("no witness within bounds ({examined} candidate automata examined)")]
    BoundsExhausted { examined: usize },
    #[error("time budget exceeded")]
    BudgetExceeded,
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("witness failed independent verification: {0}")]
    Verification(String),
}

/// A counterexample found by the search.
#[derive(Debug, Clone)]
pub struct Witness {
    pub claim: Claim,
    pub bounds: Bounds,
    pub inputs: Vec<Dfa>,
    pub input_codes: Vec<DfaCode>,
    pub homomorphism: Option<Homomorphism>,
    pub result: Dfa,
    pub before_indices: Vec<usize>,
    pub after_index: usize,
    /// For Kleene plus: subset states of the unminimized construction that
    /// are semi-observable.
    pub subset_diagnostics: Option<Vec<String>>,
}

impl Witness {
    /// Re-checks the witness with the independent classifier.
    pub fn verify(&self) -> Result<(), String> {
        let claim = &self.claim;
        let families = [claim.inputs, claim.second];
        for (i, (dfa, fam)) in self.inputs.iter().zip(families).enumerate() {
            if !fam.contains_naive(dfa) {
                return Err(format!("input {i} is not in {fam}"));
            }
            if naive_so_index(dfa) != self.before_indices[i] {
                return Err(format!("input {i} index mismatch"));
            }
        }
        if claim.excluded.contains_naive(&self.result) {
            return Err(format!("result lies in {}", claim.excluded));
        }
        if naive_so_index(&self.result) != self.after_index {
            return Err("result index mismatch".into());
        }
        if let Family::TAny(k) = claim.excluded {
            if self.after_index <= k || self.before_indices.iter().any(|&b| b > k) {
                return Err("index bounds violated".into());
            }
        }
        Ok(())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "claim: {}", self.claim.id)?;
        writeln!(f, "statement: {}", self.claim)?;
        writeln!(f, "bounds: {}", self.bounds)?;
        writeln!(f, "operation: {}", self.claim.operation)?;
        for (i, (code, idx)) in self
            .input_codes
            .iter()
            .zip(&self.before_indices)
            .enumerate()
        {
            writeln!(f, "input {i}: {code} so_index {idx}")?;
        }
        if let Some(h) = &self.homomorphism {
            let parts: Vec<String> = h
                .source()
                .symbols()
                .iter()
                .zip(h.images())
                .map(|(s, w)| format!("{s} -> {w}"))
                .collect();
            writeln!(f, "homomorphism: {}", parts.join("; "))?;
        }
        writeln!(f, "result_states: {}", self.result.num_states())?;
        writeln!(f, "result_so_index: {}", self.after_index)?;
        let own: Vec<String> = minimal_alphabet(&self.result)
            .iter()
            .map(|s| s.to_string())
            .collect();
        writeln!(f, "result_minimal_alphabet: {}", own.join(","))?;
        writeln!(
            f,
            "result_observable: {}",
            is_observable_language(&self.result)
        )?;
        if let Some(diag) = &self.subset_diagnostics {
            writeln!(f, "semi_observable_subsets: {}", diag.join(" "))?;
        }
        writeln!(f, "verified: independent classifier")
    }
}

/// The automaton restricted to its minimal alphabet, if that is nonempty.
fn own_alphabet(dfa: &Dfa) -> Option<Dfa> {
    dfa.restrict(&minimal_alphabet(dfa))
}

/// All λ-free homomorphisms `sigma -> sigma^{1..=max_image}`, images in
/// length-then-alphabet order, first symbol most significant.
pub fn homomorphisms(sigma: &Alphabet, max_image: usize) -> Vec<Homomorphism> {
    let words: Vec<Word> = all_words(sigma, max_image)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    let k = sigma.len();
    let mut out = Vec::new();
    let mut digits = vec![0usize; k];
    loop {
        let images = digits.iter().map(|&d| words[d].clone()).collect();
        out.push(
            Homomorphism::new(sigma.clone(), sigma.clone(), images).expect("images over sigma"),
        );
        // odometer, last symbol fastest
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < words.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn semi_observable_subsets(a: &Dfa) -> Vec<String> {
    let raw = kleene_plus_subsets(a);
    let classes = classify_states(&raw);
    raw.states()
        .filter(|&q| classes[q] == StateClass::SemiObservable)
        .map(|q| raw.name(q).to_string())
        .collect()
}

struct Hit {
    inputs: Vec<(DfaCode, Dfa)>,
    homomorphism: Option<Homomorphism>,
    result: Dfa,
}

const CHUNK: usize = 2048;

/// Runs the search with default options.
pub fn find_witness(task: &WitnessTask) -> Result<Witness, SearchError> {
    match task.workers {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| SearchError::InvalidBounds(e.to_string()))?;
            pool.install(|| search(task))
        }
        None => search(task),
    }
}

fn search(task: &WitnessTask) -> Result<Witness, SearchError> {
    let bounds = &task.bounds;
    let claim = &task.claim;
    if bounds.max_states == 0 || bounds.max_states > MAX_ENUM_STATES {
        return Err(SearchError::InvalidBounds(format!(
            "max_states must be in 1..={MAX_ENUM_STATES}"
        )));
    }
    if claim.operation.needs_homomorphism() && bounds.max_image == 0 {
        return Err(SearchError::InvalidBounds(
            "max_image must be positive".into(),
        ));
    }
    let op = claim.operation;
    let homs: Vec<Option<Homomorphism>> = if op.needs_homomorphism() {
        homomorphisms(&bounds.sigma, bounds.max_image)
            .into_iter()
            .map(Some)
            .collect()
    } else {
        vec![None]
    };
    let out_of_time = || task.deadline.is_some_and(|d| Instant::now() >= d);
    let excluded = claim.excluded;

    let try_apply = |inputs: &[Dfa], h: &Option<Homomorphism>| -> Option<Dfa> {
        let result = op.apply(inputs, h.as_ref(), true).ok()?;
        (!excluded.contains(&result)).then_some(result)
    };

    let mut examined = 0usize;
    let hit: Option<Hit> = if op.arity() == 1 {
        let mut stream = enumerate_dfas(bounds.max_states, &bounds.sigma).coded();
        loop {
            let chunk: Vec<(DfaCode, Dfa)> = stream.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break None;
            }
            examined += chunk.len();
            let found = chunk.par_iter().find_map_first(|(code, dfa)| {
                if out_of_time() {
                    return Some(Err(SearchError::BudgetExceeded));
                }
                if !is_minimal(dfa) || !claim.inputs.contains(dfa) {
                    return None;
                }
                homs.iter().find_map(|h| {
                    try_apply(std::slice::from_ref(dfa), h).map(|result| {
                        Ok(Hit {
                            inputs: vec![(code.clone(), dfa.clone())],
                            homomorphism: h.clone(),
                            result,
                        })
                    })
                })
            });
            match found {
                Some(Ok(hit)) => break Some(hit),
                Some(Err(e)) => return Err(e),
                None => {}
            }
        }
    } else {
        let minimal: Vec<(DfaCode, Dfa)> = enumerate_dfas(bounds.max_states, &bounds.sigma)
            .coded()
            .collect::<Vec<_>>()
            .into_par_iter()
            .filter(|(_, d)| is_minimal(d))
            .collect();
        examined = minimal.len();
        let firsts: Vec<&(DfaCode, Dfa)> = minimal
            .par_iter()
            .filter(|(_, d)| claim.inputs.contains(d))
            .collect();
        let seconds: Vec<&(DfaCode, Dfa)> = minimal
            .par_iter()
            .filter(|(_, d)| claim.second.contains(d))
            .collect();
        let found = firsts.par_iter().find_map_first(|a| {
            seconds.iter().find_map(|b| {
                if out_of_time() {
                    return Some(Err(SearchError::BudgetExceeded));
                }
                try_apply(&[a.1.clone(), b.1.clone()], &None).map(|result| {
                    Ok(Hit {
                        inputs: vec![(*a).clone(), (*b).clone()],
                        homomorphism: None,
                        result,
                    })
                })
            })
        });
        match found {
            Some(Ok(hit)) => Some(hit),
            Some(Err(e)) => return Err(e),
            None => None,
        }
    };

    let hit = hit.ok_or(SearchError::BoundsExhausted { examined })?;
    let subset_diagnostics =
        (op == Operation::Plus).then(|| semi_observable_subsets(&hit.inputs[0].1));
    let witness = Witness {
        claim: claim.clone(),
        bounds: bounds.clone(),
        before_indices: hit.inputs.iter().map(|(_, d)| so_index(d)).collect(),
        input_codes: hit.inputs.iter().map(|(c, _)| c.clone()).collect(),
        inputs: hit.inputs.into_iter().map(|(_, d)| d).collect(),
        homomorphism: hit.homomorphism,
        after_index: so_index(&hit.result),
        result: minimize(&hit.result),
        subset_diagnostics,
    };
    witness.verify().map_err(SearchError::Verification)?;
    Ok(witness)
}
