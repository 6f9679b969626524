//! State observability and the semi-observability index.
//!
//! A state is *observable* when some word leads from it to a final state,
//! and *non-observable* otherwise. An observable state with a one-symbol
//! transition into a non-observable state is *semi-observable*. The number
//! of semi-observable states of the minimal automaton is the least `k` such
//! that the language is accepted by some complete accessible automaton with
//! at most `k` semi-observable states; that family is written `T_k`.

use std::fmt;

use serde::Serialize;

use crate::alphabet::{Alphabet, Symbol};
use crate::dfa::{Dfa, StateId};
use crate::minimize::minimize;
use crate::regex::compile_str;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateClass {
    NonObservable,
    /// Observable but not semi-observable.
    Observable,
    SemiObservable,
}

impl StateClass {
    pub fn is_observable(self) -> bool {
        self != StateClass::NonObservable
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StateClass::NonObservable => "non-observable",
            StateClass::Observable => "observable",
            StateClass::SemiObservable => "semi-observable",
        }
    }
}

impl fmt::Display for StateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Observable states: backward reachability from the finals.
pub fn observable_states(dfa: &Dfa) -> Vec<bool> {
    let n = dfa.num_states();
    let k = dfa.alphabet().len();
    let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for q in 0..n {
        for a in 0..k {
            preds[dfa.next(q, a)].push(q);
        }
    }
    let mut observable = dfa.final_flags().to_vec();
    let mut stack: Vec<StateId> = dfa.finals().collect();
    while let Some(p) = stack.pop() {
        for &q in &preds[p] {
            if !observable[q] {
                observable[q] = true;
                stack.push(q);
            }
        }
    }
    observable
}

/// Three-way classification of every state, indexed by state.
pub fn classify_states(dfa: &Dfa) -> Vec<StateClass> {
    let observable = observable_states(dfa);
    let k = dfa.alphabet().len();
    dfa.states()
        .map(|q| {
            if !observable[q] {
                StateClass::NonObservable
            } else if (0..k).any(|a| !observable[dfa.next(q, a)]) {
                StateClass::SemiObservable
            } else {
                StateClass::Observable
            }
        })
        .collect()
}

/// Number of semi-observable states of this automaton as given.
pub fn so_count(dfa: &Dfa) -> usize {
    classify_states(dfa)
        .into_iter()
        .filter(|&c| c == StateClass::SemiObservable)
        .count()
}

/// Least `k` with `L(dfa) ∈ T_k`: the semi-observable count of the minimal
/// automaton.
pub fn so_index(dfa: &Dfa) -> usize {
    so_count(&minimize(dfa))
}

pub fn tk_membership(dfa: &Dfa, k: usize) -> bool {
    so_index(dfa) <= k
}

/// Minimal automaton for the prefix language `Init(L)`: the final states
/// become the observable ones.
pub fn init_language(dfa: &Dfa) -> Dfa {
    minimize(&dfa.with_finals(observable_states(dfa)))
}

/// Symbols occurring in some word of the language, in alphabet order. A
/// symbol counts when it labels an edge into an observable state (every
/// state is accessible, so such an edge lies on an accepting path). Empty
/// for ∅ and for {λ}.
pub fn minimal_alphabet(dfa: &Dfa) -> Vec<Symbol> {
    let observable = observable_states(dfa);
    let accessible = reachable(dfa);
    dfa.alphabet()
        .symbols()
        .iter()
        .enumerate()
        .filter(|&(a, _)| {
            dfa.states()
                .any(|q| accessible[q] && observable[dfa.next(q, a)])
        })
        .map(|(_, &s)| s)
        .collect()
}

fn reachable(dfa: &Dfa) -> Vec<bool> {
    let mut seen = vec![false; dfa.num_states()];
    for q in dfa.bfs_order() {
        seen[q] = true;
    }
    seen
}

/// Whether the language is observable: its minimal automaton over its
/// minimal alphabet has no non-observable state. ∅ and {λ} are not
/// observable (their minimal alphabet is empty).
pub fn is_observable_language(dfa: &Dfa) -> bool {
    let min = minimize(dfa);
    let sigma = minimal_alphabet(&min);
    match min.restrict(&sigma) {
        Some(restricted) => observable_states(&minimize(&restricted))
            .into_iter()
            .all(|o| o),
        None => false,
    }
}

/// Whether the minimal alphabet of the language is the whole declared
/// alphabet.
pub fn has_full_minimal_alphabet(dfa: &Dfa) -> bool {
    minimal_alphabet(dfa).len() == dfa.alphabet().len()
}

/// Number of non-observable states of the minimal automaton (0 or 1).
pub fn non_observable_count(dfa: &Dfa) -> usize {
    observable_states(&minimize(dfa))
        .into_iter()
        .filter(|o| !o)
        .count()
}

/// Whether the language is infinite: some cycle passes through an
/// accessible, observable state.
pub fn is_infinite(dfa: &Dfa) -> bool {
    let useful: Vec<bool> = {
        let obs = observable_states(dfa);
        let acc = reachable(dfa);
        obs.iter().zip(&acc).map(|(o, a)| *o && *a).collect()
    };
    // A cycle among useful states exists iff repeatedly stripping useful
    // states without useful successors inside the useful set leaves some.
    let n = dfa.num_states();
    let k = dfa.alphabet().len();
    let mut out_degree = vec![0usize; n];
    let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for q in (0..n).filter(|&q| useful[q]) {
        for a in 0..k {
            let p = dfa.next(q, a);
            if useful[p] {
                out_degree[q] += 1;
                preds[p].push(q);
            }
        }
    }
    let mut stack: Vec<StateId> = (0..n)
        .filter(|&q| useful[q] && out_degree[q] == 0)
        .collect();
    let mut removed = 0;
    while let Some(p) = stack.pop() {
        removed += 1;
        for &q in &preds[p] {
            out_degree[q] -= 1;
            if out_degree[q] == 0 {
                stack.push(q);
            }
        }
    }
    removed < useful.iter().filter(|&&u| u).count()
}

/// Everything the analyses know about one automaton.
#[derive(Debug, Clone, Serialize)]
pub struct ObservabilityReport {
    pub alphabet: String,
    pub states: usize,
    pub so_count: usize,
    pub so_index: usize,
    pub observable_language: bool,
    pub minimal_alphabet: String,
    pub minimal_states: usize,
    pub non_observable_count: usize,
    pub per_state: Vec<StateReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StateReport {
    pub state: String,
    pub class: StateClass,
}

impl ObservabilityReport {
    pub fn new(dfa: &Dfa) -> Self {
        let min = minimize(dfa);
        let classes = classify_states(dfa);
        let sigma = minimal_alphabet(&min);
        ObservabilityReport {
            alphabet: dfa.alphabet().to_string(),
            states: dfa.num_states(),
            so_count: so_count(dfa),
            so_index: so_count(&min),
            observable_language: is_observable_language(&min),
            minimal_alphabet: join_symbols(&sigma),
            minimal_states: min.num_states(),
            non_observable_count: observable_states(&min).iter().filter(|o| !**o).count(),
            per_state: dfa
                .states()
                .map(|q| StateReport {
                    state: dfa.name(q).to_string(),
                    class: classes[q],
                })
                .collect(),
        }
    }
}

fn join_symbols(symbols: &[Symbol]) -> String {
    symbols
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for ObservabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet: {}", self.alphabet)?;
        writeln!(f, "states: {}", self.states)?;
        writeln!(f, "so_count: {}", self.so_count)?;
        writeln!(f, "so_index: {}", self.so_index)?;
        writeln!(f, "observable_language: {}", self.observable_language)?;
        writeln!(f, "minimal_alphabet: {}", self.minimal_alphabet)?;
        writeln!(f, "minimal_states: {}", self.minimal_states)?;
        writeln!(f, "non_observable_count: {}", self.non_observable_count)?;
        for s in &self.per_state {
            writeln!(f, "state {}: {}", s.state, s.class)?;
        }
        Ok(())
    }
}

/// Symbol used for the `i`-th letter of a hierarchy witness alphabet.
fn hierarchy_symbol(i: usize) -> Option<char> {
    const LETTERS: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    LETTERS.chars().nth(i)
}

/// Largest `k` accepted by [`hierarchy_witness`].
pub const MAX_HIERARCHY_K: usize = 62;

/// An automaton whose language lies in `T_k` but not in `T_{k-1}`.
///
/// * `k = 0`: Σ⁺ over {a, b};
/// * `k = 1`: (a|b)a*;
/// * `k ≥ 2`: Σ·(c₁* | … | c_k*) over a `k`-letter alphabet (letters
///   `a, b, c, ...`), whose minimal automaton has one semi-observable state
///   per letter run.
///
/// Returns `None` for `k` above [`MAX_HIERARCHY_K`].
pub fn hierarchy_witness(k: usize) -> Option<Dfa> {
    let (text, sigma) = match k {
        0 => ("(a|b)+".to_string(), "ab".to_string()),
        1 => ("(a|b)a*".to_string(), "ab".to_string()),
        _ => {
            let letters: String = (0..k).map(hierarchy_symbol).collect::<Option<_>>()?;
            let any = letters
                .chars()
                .map(String::from)
                .collect::<Vec<_>>()
                .join("|");
            let runs = letters
                .chars()
                .map(|c| format!("{c}*"))
                .collect::<Vec<_>>()
                .join("|");
            (format!("({any})({runs})"), letters)
        }
    };
    let alphabet = Alphabet::from_chars(&sigma).ok()?;
    let dfa = compile_str(&text, &alphabet).ok()?;
    assert_eq!(so_index(&dfa), k, "hierarchy witness for k = {k}");
    Some(dfa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::is_isomorphic;
    use crate::fixtures;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn classes_by_name(dfa: &Dfa) -> Vec<(String, StateClass)> {
        let c = classify_states(dfa);
        dfa.states()
            .map(|q| (dfa.name(q).to_string(), c[q]))
            .collect()
    }

    #[test]
    fn classify_m1() {
        use StateClass::*;
        assert_eq!(
            classes_by_name(&fixtures::m1()),
            [
                ("s".to_string(), Observable),
                ("f".to_string(), SemiObservable),
                ("r".to_string(), NonObservable)
            ]
        );
    }

    #[test]
    fn classify_union_table() {
        use StateClass::*;
        let got: Vec<StateClass> = classify_states(&fixtures::union_table());
        assert_eq!(
            got,
            [
                Observable,
                Observable,
                SemiObservable,
                SemiObservable,
                NonObservable
            ]
        );
        assert_eq!(fixtures::union_table().name(2), "3");
        assert_eq!(fixtures::union_table().name(3), "4");
    }

    #[test]
    fn so_counts() {
        assert_eq!(so_count(&fixtures::m1()), 1);
        assert_eq!(so_count(&fixtures::union_table()), 2);
        assert_eq!(so_count(&Dfa::empty_language(&ab())), 0);
        assert_eq!(
            classify_states(&Dfa::all_words(&ab())),
            [StateClass::Observable]
        );
    }

    #[test]
    fn so_index_examples() {
        assert_eq!(so_index(&compile_str("(a|b)a*", &ab()).unwrap()), 1);
        assert_eq!(so_index(&compile_str("a+b+", &ab()).unwrap()), 2);
        assert_eq!(so_index(&compile_str("(a|b)(a*|b*)", &ab()).unwrap()), 2);
    }

    #[test]
    fn tk_membership_examples() {
        assert!(tk_membership(&fixtures::m1(), 1));
        assert!(!tk_membership(&fixtures::union_table(), 1));
        let u = fixtures::union_table();
        assert!(tk_membership(&u, minimize(&u).num_states()));
    }

    #[test]
    fn init_language_examples() {
        let init = init_language(&fixtures::m1());
        let expected = compile_str("_|(a|b)a*", &ab()).unwrap();
        assert!(init.same_structure(&expected));
        let sp = init_language(&fixtures::sigma_plus());
        assert!(sp.same_structure(&Dfa::all_words(&ab())));
        let e = init_language(&Dfa::empty_language(&ab()));
        assert!(e.same_structure(&Dfa::empty_language(&ab())));
    }

    #[test]
    fn observable_language_examples() {
        assert!(is_observable_language(&fixtures::sigma_plus()));
        assert!(!is_observable_language(&compile_str("_", &ab()).unwrap()));
        assert!(!is_observable_language(&Dfa::empty_language(&ab())));
        assert_eq!(so_index(&Dfa::empty_language(&ab())), 0);
        // a+ over {a,b} is observable once restricted to {a}
        assert!(is_observable_language(&compile_str("a+", &ab()).unwrap()));
        assert!(!is_observable_language(&fixtures::m1()));
    }

    #[test]
    fn minimal_alphabet_examples() {
        let syms = |d: &Dfa| join_symbols(&minimal_alphabet(d));
        assert_eq!(syms(&fixtures::m1()), "a,b");
        assert_eq!(syms(&compile_str("a+", &ab()).unwrap()), "a");
        assert_eq!(syms(&Dfa::empty_language(&ab())), "");
        assert_eq!(syms(&Dfa::lambda_only(&ab())), "");
    }

    #[test]
    fn infinitude() {
        assert!(is_infinite(&fixtures::m1()));
        assert!(!is_infinite(&compile_str("a|ab|_", &ab()).unwrap()));
        assert!(!is_infinite(&Dfa::empty_language(&ab())));
    }

    #[test]
    fn hierarchy_witnesses() {
        assert!(is_isomorphic(
            &hierarchy_witness(1).unwrap(),
            &fixtures::m1()
        ));
        let two = hierarchy_witness(2).unwrap();
        assert!(is_isomorphic(&two, &fixtures::union_table()));
        let three = hierarchy_witness(3).unwrap();
        assert_eq!(three.num_states(), 6);
        assert_eq!(so_count(&three), 3);
        assert_eq!(so_index(&hierarchy_witness(0).unwrap()), 0);
        assert!(hierarchy_witness(MAX_HIERARCHY_K).is_some());
        assert!(hierarchy_witness(MAX_HIERARCHY_K + 1).is_none());
    }

    #[test]
    fn report_text() {
        let report = ObservabilityReport::new(&fixtures::m1());
        assert_eq!(
            report.to_string(),
            "alphabet: a,b\nstates: 3\nso_count: 1\nso_index: 1\n\
             observable_language: false\nminimal_alphabet: a,b\nminimal_states: 3\n\
             non_observable_count: 1\nstate s: observable\nstate f: semi-observable\n\
             state r: non-observable\n"
        );
    }
}
