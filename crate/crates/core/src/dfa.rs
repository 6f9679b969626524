//! Complete deterministic automata.
//!
//! Every [`Dfa`] has a total transition function. Accessibility is not a type
//! invariant: loaders may hand out automata with unreachable states, and
//! [`trim_accessible`] removes them. Every construction in this crate returns
//! an accessible automaton whose states are numbered breadth-first from the
//! initial state, exploring symbols in alphabet order.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::minimize::minimize;

pub type StateId = usize;

#[derive(Debug, Clone)]
pub struct Dfa {
    alphabet: Alphabet,
    names: Vec<String>,
    /// Row-major: `delta[q * |Σ| + a]`.
    delta: Vec<StateId>,
    initial: StateId,
    finals: Vec<bool>,
}

impl Dfa {
    /// Builds an automaton from a row-major transition table. States are
    /// named `q0, q1, ...`.
    pub fn from_table(
        alphabet: Alphabet,
        delta: Vec<StateId>,
        initial: StateId,
        finals: Vec<bool>,
    ) -> Result<Self> {
        let n = finals.len();
        if n == 0 {
            return Err(Error::Invalid("automaton has no states".into()));
        }
        if delta.len() != n * alphabet.len() {
            return Err(Error::Invalid(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                n * alphabet.len()
            )));
        }
        if initial >= n || delta.iter().any(|&t| t >= n) {
            return Err(Error::Invalid("state index out of range".into()));
        }
        Ok(Dfa {
            alphabet,
            names: default_names(n),
            delta,
            initial,
            finals,
        })
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        names: Vec<String>,
        delta: Vec<StateId>,
        initial: StateId,
        finals: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(names.len(), finals.len());
        debug_assert_eq!(delta.len(), finals.len() * alphabet.len());
        Dfa {
            alphabet,
            names,
            delta,
            initial,
            finals,
        }
    }

    /// The one-state automaton over `alphabet` accepting either Σ* or ∅.
    pub fn universal(alphabet: &Alphabet, accepting: bool) -> Self {
        Dfa::from_parts(
            alphabet.clone(),
            default_names(1),
            vec![0; alphabet.len()],
            0,
            vec![accepting],
        )
    }

    /// Σ* over `alphabet`.
    pub fn all_words(alphabet: &Alphabet) -> Self {
        Self::universal(alphabet, true)
    }

    /// ∅ over `alphabet`.
    pub fn empty_language(alphabet: &Alphabet) -> Self {
        Self::universal(alphabet, false)
    }

    /// {λ} over `alphabet`.
    pub fn lambda_only(alphabet: &Alphabet) -> Self {
        let k = alphabet.len();
        Dfa::from_parts(
            alphabet.clone(),
            default_names(2),
            vec![1; 2 * k],
            0,
            vec![true, false],
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.num_states()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states().filter(|&q| self.finals[q])
    }

    pub fn final_flags(&self) -> &[bool] {
        &self.finals
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Successor of `q` on the symbol at `symbol` (an alphabet index).
    pub fn next(&self, q: StateId, symbol: usize) -> StateId {
        self.delta[q * self.alphabet.len() + symbol]
    }

    pub fn table(&self) -> &[StateId] {
        &self.delta
    }

    pub fn run_from(&self, mut q: StateId, word: &[Symbol]) -> Option<StateId> {
        for &s in word {
            q = self.next(q, self.alphabet.index_of(s)?);
        }
        Some(q)
    }

    /// Runs the automaton on symbol indices.
    pub fn run_indices(&self, mut q: StateId, word: &[usize]) -> StateId {
        for &a in word {
            q = self.next(q, a);
        }
        q
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.run_from(self.initial, word.symbols())
            .is_some_and(|q| self.finals[q])
    }

    /// Membership test for a string of symbol characters. Characters outside
    /// the alphabet make the word rejected.
    pub fn accepts_str(&self, word: &str) -> bool {
        let mut q = self.initial;
        for c in word.chars() {
            match self.alphabet.index_of_char(c) {
                Ok(a) => q = self.next(q, a),
                Err(_) => return false,
            }
        }
        self.finals[q]
    }

    /// States reachable from the initial state, in breadth-first order.
    pub fn bfs_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            i += 1;
            for a in 0..self.alphabet.len() {
                let p = self.next(q, a);
                if !seen[p] {
                    seen[p] = true;
                    order.push(p);
                }
            }
        }
        order
    }

    pub fn is_accessible(&self) -> bool {
        self.bfs_order().len() == self.num_states()
    }

    /// True when the states are numbered breadth-first from an initial state 0.
    pub fn is_canonically_numbered(&self) -> bool {
        self.bfs_order().iter().enumerate().all(|(i, &q)| i == q) && self.is_accessible()
    }

    /// Renumbers the states as listed in `order` (which must be duplicate-free
    /// and closed under transitions).
    fn renumber(&self, order: &[StateId]) -> Dfa {
        let k = self.alphabet.len();
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }
        let mut delta = Vec::with_capacity(order.len() * k);
        for &q in order {
            for a in 0..k {
                delta.push(index[self.next(q, a)]);
            }
        }
        Dfa::from_parts(
            self.alphabet.clone(),
            order.iter().map(|&q| self.names[q].clone()).collect(),
            delta,
            index[self.initial],
            order.iter().map(|&q| self.finals[q]).collect(),
        )
    }

    /// Same automaton with states renamed `q0, q1, ...` in current order.
    pub fn with_default_names(mut self) -> Dfa {
        self.names = default_names(self.num_states());
        self
    }

    /// Structural equality of two canonically numbered automata, ignoring
    /// state names.
    pub fn same_structure(&self, other: &Dfa) -> bool {
        self.alphabet == other.alphabet
            && self.initial == other.initial
            && self.delta == other.delta
            && self.finals == other.finals
    }

    /// Same automaton with every final flag inverted.
    pub fn flip_finals(&self) -> Dfa {
        let mut out = self.clone();
        out.finals.iter_mut().for_each(|f| *f = !*f);
        out
    }

    pub(crate) fn with_finals(&self, finals: Vec<bool>) -> Dfa {
        debug_assert_eq!(finals.len(), self.num_states());
        let mut out = self.clone();
        out.finals = finals;
        out
    }

    /// Extends the automaton to a larger alphabet. New symbols lead to a
    /// fresh non-final sink; the symbol order follows `alphabet`.
    pub fn embed(&self, alphabet: &Alphabet) -> Result<Dfa> {
        if !self.alphabet.is_subset_of(alphabet) {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: alphabet.to_string(),
            });
        }
        let n = self.num_states();
        let needs_sink = alphabet.len() > self.alphabet.len();
        let sink = n;
        let total = if needs_sink { n + 1 } else { n };
        let mut delta = Vec::with_capacity(total * alphabet.len());
        for q in 0..total {
            for &s in alphabet.symbols() {
                let target = match self.alphabet.index_of(s) {
                    Some(a) if q < n => self.next(q, a),
                    _ => sink,
                };
                delta.push(target);
            }
        }
        let mut names = self.names.clone();
        let mut finals = self.finals.clone();
        if needs_sink {
            names.push(fresh_name(&names, "sink"));
            finals.push(false);
        }
        Ok(Dfa::from_parts(alphabet.clone(), names, delta, self.initial, finals).trimmed())
    }

    /// Keeps only the columns for `symbols` (which must all be in the
    /// alphabet), then trims. Returns `None` when `symbols` is empty.
    pub fn restrict(&self, symbols: &[Symbol]) -> Option<Dfa> {
        let alphabet = Alphabet::new(symbols.to_vec()).ok()?;
        let columns: Vec<usize> = symbols
            .iter()
            .map(|&s| self.alphabet.index_of(s))
            .collect::<Option<_>>()?;
        let mut delta = Vec::with_capacity(self.num_states() * columns.len());
        for q in self.states() {
            delta.extend(columns.iter().map(|&a| self.next(q, a)));
        }
        Some(
            Dfa::from_parts(
                alphabet,
                self.names.clone(),
                delta,
                self.initial,
                self.finals.clone(),
            )
            .trimmed(),
        )
    }

    /// Drops unreachable states and renumbers breadth-first, keeping names.
    pub fn trimmed(&self) -> Dfa {
        self.renumber(&self.bfs_order())
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

fn fresh_name(names: &[String], base: &str) -> String {
    let mut candidate = base.to_string();
    let mut i = 0;
    while names.contains(&candidate) {
        i += 1;
        candidate = format!("{base}{i}");
    }
    candidate
}

/// Incremental construction of a possibly partial automaton from named
/// states.
#[derive(Debug, Clone)]
pub struct DfaBuilder {
    alphabet: Alphabet,
    names: Vec<String>,
    index: HashMap<String, StateId>,
    delta: Vec<Option<StateId>>,
    initial: Option<StateId>,
    finals: Vec<bool>,
}

impl DfaBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        DfaBuilder {
            alphabet,
            names: Vec::new(),
            index: HashMap::new(),
            delta: Vec::new(),
            initial: None,
            finals: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Returns the id of `name`, declaring it if needed.
    pub fn state(&mut self, name: &str) -> StateId {
        if let Some(&q) = self.index.get(name) {
            return q;
        }
        let q = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), q);
        self.delta
            .extend(std::iter::repeat_n(None, self.alphabet.len()));
        self.finals.push(false);
        q
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn lookup(&self, name: &str) -> Option<StateId> {
        self.index.get(name).copied()
    }

    pub fn set_initial(&mut self, q: StateId) {
        self.initial = Some(q);
    }

    pub fn set_final(&mut self, q: StateId, accepting: bool) {
        self.finals[q] = accepting;
    }

    /// Adds `src --c--> dst`; symbols outside the alphabet and second
    /// transitions on the same `(src, c)` are errors.
    pub fn add_transition(&mut self, src: StateId, c: char, dst: StateId) -> Result<()> {
        let a = self.alphabet.index_of_char(c)?;
        let slot = &mut self.delta[src * self.alphabet.len() + a];
        if slot.is_some() {
            return Err(Error::Invalid(format!(
                "duplicate transition from {} on {c}",
                self.names[src]
            )));
        }
        *slot = Some(dst);
        Ok(())
    }

    /// Convenience for tests and fixtures: `transitions` as `(src, c, dst)`
    /// by name.
    pub fn with_transitions(mut self, transitions: &[(&str, char, &str)]) -> Result<Self> {
        for &(src, c, dst) in transitions {
            let (s, d) = (self.state(src), self.state(dst));
            self.add_transition(s, c, d)?;
        }
        Ok(self)
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(Option::is_some)
    }

    /// First missing `(state, symbol)` pair, if any.
    pub fn missing_transition(&self) -> Option<(String, Symbol)> {
        let k = self.alphabet.len();
        self.delta
            .iter()
            .position(Option::is_none)
            .map(|i| (self.names[i / k].clone(), self.alphabet.symbol(i % k)))
    }

    /// Builds a complete automaton; a missing transition is an error.
    pub fn build(self) -> Result<Dfa> {
        if let Some((q, s)) = self.missing_transition() {
            return Err(Error::Invalid(format!(
                "missing transition from {q} on {s}"
            )));
        }
        self.complete()
    }

    /// Builds a complete automaton, sending every missing transition to a
    /// fresh non-final sink. The sink is added only if some transition is
    /// missing.
    pub fn complete(self) -> Result<Dfa> {
        let initial = self
            .initial
            .ok_or_else(|| Error::Invalid("no initial state".into()))?;
        let DfaBuilder {
            alphabet,
            mut names,
            delta,
            mut finals,
            ..
        } = self;
        let n = names.len();
        let k = alphabet.len();
        let missing = delta.iter().any(Option::is_none);
        let sink = n;
        let mut table: Vec<StateId> = delta.into_iter().map(|t| t.unwrap_or(sink)).collect();
        if missing {
            names.push(fresh_name(&names, "sink"));
            finals.push(false);
            table.extend(std::iter::repeat_n(sink, k));
        }
        Ok(Dfa::from_parts(alphabet, names, table, initial, finals))
    }
}

/// Removes states not reachable from the initial state and renumbers the
/// rest breadth-first. State names are kept.
pub fn trim_accessible(dfa: &Dfa) -> Dfa {
    dfa.trimmed()
}

/// True iff a bijection between the state sets preserves the initial state,
/// the final states and the transition function. Both inputs must be
/// accessible.
pub fn is_isomorphic(a: &Dfa, b: &Dfa) -> bool {
    if a.alphabet != b.alphabet || a.num_states() != b.num_states() {
        return false;
    }
    let n = a.num_states();
    let k = a.alphabet.len();
    let mut to_b = vec![usize::MAX; n];
    let mut to_a = vec![usize::MAX; n];
    let mut queue = VecDeque::from([(a.initial, b.initial)]);
    to_b[a.initial] = b.initial;
    to_a[b.initial] = a.initial;
    while let Some((p, q)) = queue.pop_front() {
        if a.finals[p] != b.finals[q] {
            return false;
        }
        for s in 0..k {
            let (p2, q2) = (a.next(p, s), b.next(q, s));
            match (to_b[p2], to_a[q2]) {
                (usize::MAX, usize::MAX) => {
                    to_b[p2] = q2;
                    to_a[q2] = p2;
                    queue.push_back((p2, q2));
                }
                (x, y) if x == q2 && y == p2 => {}
                _ => return false,
            }
        }
    }
    // both accessible: every state got paired
    to_b.iter().all(|&x| x != usize::MAX)
}

/// Language equality, decided by comparing minimal automata.
pub fn equivalent(a: &Dfa, b: &Dfa) -> Result<bool> {
    a.alphabet.check_same(&b.alphabet)?;
    Ok(minimize(a).same_structure(&minimize(b)))
}

/// Rule deciding finality of a product state from its two components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    Or,
    And,
    /// In the left language but not the right.
    Difference,
    Xor,
}

impl Combine {
    pub fn apply(self, left: bool, right: bool) -> bool {
        match self {
            Combine::Or => left || right,
            Combine::And => left && right,
            Combine::Difference => left && !right,
            Combine::Xor => left != right,
        }
    }
}

/// Reachable part of the synchronous product.
pub fn product(a: &Dfa, b: &Dfa, combine: Combine) -> Result<Dfa> {
    a.alphabet.check_same(&b.alphabet)?;
    let k = a.alphabet.len();
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs = vec![(a.initial, b.initial)];
    index.insert((a.initial, b.initial), 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        i += 1;
        for s in 0..k {
            let next = (a.next(p, s), b.next(q, s));
            let id = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                pairs.len() - 1
            });
            delta.push(id);
        }
    }
    let names = pairs
        .iter()
        .map(|&(p, q)| format!("({},{})", a.names[p], b.names[q]))
        .collect();
    let finals = pairs
        .iter()
        .map(|&(p, q)| combine.apply(a.finals[p], b.finals[q]))
        .collect();
    Ok(Dfa::from_parts(a.alphabet.clone(), names, delta, 0, finals))
}
