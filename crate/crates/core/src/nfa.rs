//! Nondeterministic automata with optional λ-transitions, used as the
//! intermediate form of every construction that is not a product.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::{Alphabet, Word};
use crate::dfa::{Dfa, StateId};

#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: Alphabet,
    names: Vec<String>,
    /// `moves[q][a]`: successors of `q` on symbol index `a`.
    moves: Vec<Vec<BTreeSet<StateId>>>,
    lambda: Vec<BTreeSet<StateId>>,
    initials: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            names: Vec::new(),
            moves: Vec::new(),
            lambda: Vec::new(),
            initials: BTreeSet::new(),
            finals: BTreeSet::new(),
        }
    }

    /// Copy of `dfa` with the same state numbering and names.
    pub fn from_dfa(dfa: &Dfa) -> Self {
        let mut nfa = Nfa::new(dfa.alphabet().clone());
        for q in dfa.states() {
            nfa.add_state(dfa.name(q));
        }
        for q in dfa.states() {
            for a in 0..dfa.alphabet().len() {
                nfa.add_transition(q, a, dfa.next(q, a));
            }
            if dfa.is_final(q) {
                nfa.finals.insert(q);
            }
        }
        nfa.initials.insert(dfa.initial());
        nfa
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> StateId {
        self.names.push(name.into());
        self.moves.push(vec![BTreeSet::new(); self.alphabet.len()]);
        self.lambda.push(BTreeSet::new());
        self.names.len() - 1
    }

    pub fn add_transition(&mut self, src: StateId, symbol: usize, dst: StateId) {
        self.moves[src][symbol].insert(dst);
    }

    pub fn add_lambda(&mut self, src: StateId, dst: StateId) {
        self.lambda[src].insert(dst);
    }

    pub fn set_initial(&mut self, q: StateId, initial: bool) {
        if initial {
            self.initials.insert(q);
        } else {
            self.initials.remove(&q);
        }
    }

    pub fn set_final(&mut self, q: StateId, accepting: bool) {
        if accepting {
            self.finals.insert(q);
        } else {
            self.finals.remove(&q);
        }
    }

    pub fn initials(&self) -> &BTreeSet<StateId> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn successors(&self, q: StateId, symbol: usize) -> &BTreeSet<StateId> {
        &self.moves[q][symbol]
    }

    pub fn lambda_successors(&self, q: StateId) -> &BTreeSet<StateId> {
        &self.lambda[q]
    }

    pub fn has_lambda(&self) -> bool {
        self.lambda.iter().any(|s| !s.is_empty())
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    /// The λ-closure of a set of states.
    pub fn lambda_closure(&self, states: &BTreeSet<StateId>) -> BTreeSet<StateId> {
        let mut closure = states.clone();
        let mut stack: Vec<StateId> = states.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &p in &self.lambda[q] {
                if closure.insert(p) {
                    stack.push(p);
                }
            }
        }
        closure
    }

    /// Direct simulation; used by tests as a membership oracle.
    pub fn accepts(&self, word: &Word) -> bool {
        let mut current = self.lambda_closure(&self.initials);
        for &s in word.symbols() {
            let Some(a) = self.alphabet.index_of(s) else {
                return false;
            };
            let step = current
                .iter()
                .flat_map(|&q| self.moves[q][a].iter().copied())
                .collect();
            current = self.lambda_closure(&step);
        }
        current.iter().any(|q| self.finals.contains(q))
    }
}

/// Folds λ-closures into the symbol moves and the final marking. States and
/// initial states are kept as they are.
pub fn remove_lambda(nfa: &Nfa) -> Nfa {
    if !nfa.has_lambda() {
        return nfa.clone();
    }
    let k = nfa.alphabet.len();
    let mut out = Nfa::new(nfa.alphabet.clone());
    for q in 0..nfa.num_states() {
        out.add_state(nfa.names[q].clone());
    }
    for q in 0..nfa.num_states() {
        let closure = nfa.lambda_closure(&BTreeSet::from([q]));
        if closure.iter().any(|p| nfa.finals.contains(p)) {
            out.finals.insert(q);
        }
        for a in 0..k {
            for &p in &closure {
                out.moves[q][a].extend(nfa.moves[p][a].iter().copied());
            }
        }
    }
    out.initials = nfa.initials.clone();
    out
}

/// Subset construction from the set of initial states. The result is
/// complete (the empty subset is materialized when reached) and accessible.
/// Each state is named after its subset, e.g. `{s,f}`.
///
/// λ-transitions are ignored; run [`remove_lambda`] first.
pub fn determinize(nfa: &Nfa) -> Dfa {
    debug_assert!(!nfa.has_lambda(), "determinize expects a λ-free automaton");
    let k = nfa.alphabet.len();
    let start: Vec<StateId> = nfa.initials.iter().copied().collect();
    let mut index: HashMap<Vec<StateId>, StateId> = HashMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        for a in 0..k {
            let target: BTreeSet<StateId> = subsets[i]
                .iter()
                .flat_map(|&q| nfa.moves[q][a].iter().copied())
                .collect();
            let target: Vec<StateId> = target.into_iter().collect();
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    index.insert(target.clone(), id);
                    subsets.push(target);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let names = subsets
        .iter()
        .map(|set| {
            let inner: Vec<&str> = set.iter().map(|&q| nfa.names[q].as_str()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    let finals = subsets
        .iter()
        .map(|set| set.iter().any(|q| nfa.finals.contains(q)))
        .collect();
    Dfa::from_parts(nfa.alphabet.clone(), names, delta, 0, finals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::{equivalent, is_isomorphic};
    use crate::fixtures;
    use crate::minimize::minimize;

    fn words_up_to(sigma: &Alphabet, n: usize) -> Vec<Word> {
        let mut all = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &frontier {
                for &s in sigma.symbols() {
                    let mut v = w.0.clone();
                    v.push(s);
                    next.push(Word(v));
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }

    fn plus_step1(dfa: &Dfa) -> Nfa {
        let mut nfa = Nfa::from_dfa(dfa);
        for f in dfa.finals() {
            nfa.add_lambda(f, dfa.initial());
        }
        nfa
    }

    #[test]
    fn lambda_free_input_is_unchanged() {
        let nfa = Nfa::from_dfa(&fixtures::m1());
        let out = remove_lambda(&nfa);
        assert_eq!(out.moves, nfa.moves);
        assert_eq!(out.finals, nfa.finals);
        assert_eq!(out.initials, nfa.initials);
    }

    #[test]
    fn deterministic_nfa_round_trips() {
        let m1 = fixtures::m1();
        assert!(is_isomorphic(&determinize(&Nfa::from_dfa(&m1)), &m1));
    }

    #[test]
    fn lambda_self_loop_accepts_only_lambda() {
        let sigma = Alphabet::from_chars("a").unwrap();
        let mut nfa = Nfa::new(sigma.clone());
        let q = nfa.add_state("q");
        nfa.add_lambda(q, q);
        nfa.set_initial(q, true);
        nfa.set_final(q, true);
        let out = remove_lambda(&nfa);
        assert_eq!(out.num_states(), 1);
        assert!(!out.has_lambda());
        let dfa = determinize(&out);
        assert!(equivalent(&dfa, &Dfa::lambda_only(&sigma)).unwrap());
    }

    #[test]
    fn plus_steps_on_m1_give_sigma_plus() {
        let step1 = plus_step1(&fixtures::m1());
        let step2 = remove_lambda(&step1);
        let sigma = fixtures::m1().alphabet().clone();
        let sigma_plus = fixtures::sigma_plus();
        for w in words_up_to(&sigma, 8) {
            assert_eq!(step2.accepts(&w), !w.is_empty(), "{w}");
            assert_eq!(step1.accepts(&w), !w.is_empty(), "{w}");
        }
        let dfa = determinize(&step2);
        for w in words_up_to(&sigma, 8) {
            assert_eq!(dfa.accepts(&w), sigma_plus.accepts(&w), "{w}");
        }
        assert!(dfa.is_accessible());
    }

    #[test]
    fn merged_initials_of_m1_m2_give_union_table() {
        let (m1, m2) = (fixtures::m1(), fixtures::m2());
        let mut nfa = Nfa::from_dfa(&m1);
        let offset = nfa.num_states();
        for q in m2.states() {
            nfa.add_state(format!("{}'", m2.name(q)));
        }
        for q in m2.states() {
            for a in 0..2 {
                nfa.add_transition(offset + q, a, offset + m2.next(q, a));
            }
            nfa.set_final(offset + q, m2.is_final(q));
        }
        nfa.set_initial(offset + m2.initial(), true);
        let dfa = determinize(&nfa);
        assert!(is_isomorphic(&minimize(&dfa), &fixtures::union_table()));
        // subset labels survive as state names
        assert_eq!(dfa.name(0), "{s,s'}");
    }

    #[test]
    fn empty_subset_is_materialized() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        let mut nfa = Nfa::new(sigma);
        let q = nfa.add_state("q");
        nfa.add_transition(q, 0, q);
        nfa.set_initial(q, true);
        nfa.set_final(q, true);
        let dfa = determinize(&nfa);
        assert_eq!(dfa.num_states(), 2);
        assert_eq!(dfa.name(1), "{}");
        assert!(dfa.accepts_str("aaa"));
        assert!(!dfa.accepts_str("ab"));
    }
}
